#include "eismeas/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace eismeas {

namespace {

using Poly = std::vector<std::int64_t>;

// Exact quotient of num by a monic divisor.
Poly divide_monic(const Poly& num, const Poly& den) {
  Poly rem = num;
  const std::size_t dn = den.size() - 1;
  Poly quot(num.size() - dn, 0);
  for (std::size_t i = quot.size(); i-- > 0;) {
    std::int64_t c = rem[i + dn];
    quot[i] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) rem[i + j] -= c * den[j];
  }
  for (std::int64_t r : rem)
    if (r != 0) throw ArithmeticError("cyclotomic_polynomial: inexact division");
  return quot;
}

void add_scaled(std::vector<Integer>& acc, const std::vector<std::int64_t>& row, const Integer& w) {
  for (std::size_t l = 0; l < row.size(); ++l) {
    std::int64_t t = row[l];
    if (t == 1) {
      acc[l] += w;
    } else if (t == -1) {
      acc[l] -= w;
    } else if (t > 0) {
      mpz_addmul_ui(acc[l].get_mpz_t(), w.get_mpz_t(), static_cast<unsigned long>(t));
    } else if (t < 0) {
      mpz_submul_ui(acc[l].get_mpz_t(), w.get_mpz_t(), static_cast<unsigned long>(-t));
    }
  }
}

// Integer numerators over one common denominator.
Integer scale_to_integers(const std::vector<Rational>& coords, std::vector<Integer>& out) {
  Integer den = 1;
  for (const auto& c : coords) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  out.resize(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    out[i] = den / coords[i].get_den() * coords[i].get_num();
  }
  return den;
}

std::vector<Rational> reduce_weights(const CyclotomicField& f, const std::vector<Integer>& w,
                                     const Integer& den) {
  std::vector<Integer> acc(f.degree, 0);
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (w[j] != 0) add_scaled(acc, f.power_table[j], w[j]);
  }
  std::vector<Rational> coords(f.degree);
  for (std::size_t l = 0; l < f.degree; ++l) {
    coords[l] = Rational(acc[l], den);
    coords[l].canonicalize();
  }
  return coords;
}

void times_zeta(const CyclotomicField& f, std::vector<Rational>& v) {
  Rational top = v.back();
  for (std::size_t i = v.size() - 1; i > 0; --i) v[i] = v[i - 1];
  v[0] = 0;
  if (top != 0) {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= top * static_cast<long>(f.modulus[i]);
  }
}

}  // namespace

std::vector<std::int64_t> cyclotomic_polynomial(unsigned n) {
  if (n == 0) throw InvalidArgument("cyclotomic_polynomial: n must be positive");
  std::map<long, Poly> phi;
  for (long d : divisors(n)) {
    Poly p(d + 1, 0);
    p[0] = -1;
    p[d] = 1;
    for (const auto& [e, pe] : phi)
      if (d % e == 0) p = divide_monic(p, pe);
    phi[d] = std::move(p);
  }
  return phi[n];
}

std::shared_ptr<const CyclotomicField> CyclotomicField::get(unsigned n) {
  static std::mutex mu;
  static std::map<unsigned, std::shared_ptr<const CyclotomicField>> cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  auto f = std::make_shared<CyclotomicField>();
  f->order = n;
  f->modulus = cyclotomic_polynomial(n);
  f->degree = static_cast<unsigned>(f->modulus.size() - 1);
  std::vector<std::int64_t> cur(f->degree, 0);
  cur[0] = 1;
  f->power_table.reserve(n);
  for (unsigned j = 0; j < n; ++j) {
    f->power_table.push_back(cur);
    std::int64_t top = cur.back();
    for (std::size_t i = cur.size() - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    for (std::size_t i = 0; i < cur.size(); ++i) cur[i] -= top * f->modulus[i];
  }
  std::lock_guard lock(mu);
  return cache.emplace(n, std::move(f)).first->second;
}

CyclotomicNumber::CyclotomicNumber() : field_(CyclotomicField::get(1)), coords_(1, 0) {}

CyclotomicNumber::CyclotomicNumber(const Rational& r) : field_(CyclotomicField::get(1)), coords_(1, r) {
  coords_[0].canonicalize();
}

CyclotomicNumber::CyclotomicNumber(long v) : CyclotomicNumber(Rational(v)) {}

CyclotomicNumber::CyclotomicNumber(unsigned order, std::vector<Rational> coords)
    : field_(CyclotomicField::get(order)), coords_(std::move(coords)) {
  if (coords_.size() > field_->degree)
    throw InvalidArgument("CyclotomicNumber: too many coordinates for order " + std::to_string(order));
  coords_.resize(field_->degree, 0);
  for (auto& c : coords_) c.canonicalize();
}

CyclotomicNumber CyclotomicNumber::from_exponent_weights(unsigned n, const std::vector<Rational>& weights) {
  auto f = CyclotomicField::get(n);
  std::vector<Rational> folded(n, 0);
  for (std::size_t j = 0; j < weights.size(); ++j) folded[j % n] += weights[j];
  std::vector<Integer> w;
  Integer den = scale_to_integers(folded, w);
  CyclotomicNumber out;
  out.field_ = f;
  out.coords_ = reduce_weights(*f, w, den);
  return out;
}

bool CyclotomicNumber::is_zero() const {
  for (const auto& c : coords_)
    if (c != 0) return false;
  return true;
}

bool CyclotomicNumber::is_rational() const {
  for (std::size_t i = 1; i < coords_.size(); ++i)
    if (coords_[i] != 0) return false;
  return true;
}

Rational CyclotomicNumber::rational_part() const {
  if (!is_rational()) throw ArithmeticError("rational_part: value is not rational");
  return coords_[0];
}

CyclotomicNumber CyclotomicNumber::lift(unsigned new_order) const {
  if (new_order == order()) return *this;
  if (new_order % order() != 0)
    throw InvalidArgument("lift: order " + std::to_string(order()) + " does not divide " +
                          std::to_string(new_order));
  auto f = CyclotomicField::get(new_order);
  CyclotomicNumber out;
  out.field_ = f;
  if (is_rational()) {
    out.coords_.assign(f->degree, 0);
    out.coords_[0] = coords_[0];
    return out;
  }
  std::vector<Integer> num;
  Integer den = scale_to_integers(coords_, num);
  const unsigned step = new_order / order();
  std::vector<Integer> w(new_order, 0);
  for (std::size_t j = 0; j < num.size(); ++j) w[j * step] = num[j];
  out.coords_ = reduce_weights(*f, w, den);
  return out;
}

CyclotomicNumber lift_to_common_order(const CyclotomicNumber& a, unsigned other_order) {
  return a.lift(static_cast<unsigned>(lcm(a.order(), other_order)));
}

CyclotomicNumber CyclotomicNumber::conj() const {
  if (is_rational()) return *this;
  const unsigned n = order();
  std::vector<Integer> num;
  Integer den = scale_to_integers(coords_, num);
  std::vector<Integer> w(n, 0);
  for (std::size_t j = 0; j < num.size(); ++j) w[(n - j) % n] = num[j];
  CyclotomicNumber out;
  out.field_ = field_;
  out.coords_ = reduce_weights(*field_, w, den);
  return out;
}

CyclotomicNumber CyclotomicNumber::inverse() const {
  if (is_zero()) throw ArithmeticError("CyclotomicNumber: division by zero");
  if (is_rational()) {
    CyclotomicNumber out = *this;
    out.coords_[0] = 1 / coords_[0];
    return out;
  }
  // Solve M x = e_0 where column j of M holds alpha * zeta^j.
  const std::size_t d = coords_.size();
  std::vector<std::vector<Rational>> rows(d, std::vector<Rational>(d + 1, 0));
  std::vector<Rational> col = coords_;
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < d; ++i) rows[i][j] = col[i];
    times_zeta(*field_, col);
  }
  rows[0][d] = 1;
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    while (piv < d && rows[piv][c] == 0) ++piv;
    if (piv == d) throw ArithmeticError("CyclotomicNumber::inverse: singular multiplication matrix");
    std::swap(rows[piv], rows[c]);
    Rational inv = 1 / rows[c][c];
    for (std::size_t j = c; j <= d; ++j) rows[c][j] *= inv;
    for (std::size_t r = 0; r < d; ++r) {
      if (r == c || rows[r][c] == 0) continue;
      Rational factor = rows[r][c];
      for (std::size_t j = c; j <= d; ++j) rows[r][j] -= factor * rows[c][j];
    }
  }
  CyclotomicNumber out;
  out.field_ = field_;
  out.coords_.resize(d);
  for (std::size_t i = 0; i < d; ++i) out.coords_[i] = rows[i][d];
  return out;
}

CyclotomicNumber& CyclotomicNumber::operator+=(const CyclotomicNumber& o) {
  if (o.is_rational()) {
    coords_[0] += o.coords_[0];
    return *this;
  }
  if (order() != o.order()) {
    unsigned l = static_cast<unsigned>(lcm(order(), o.order()));
    *this = lift(l);
    return *this += o.lift(l);
  }
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

CyclotomicNumber& CyclotomicNumber::operator-=(const CyclotomicNumber& o) { return *this += -o; }

CyclotomicNumber CyclotomicNumber::operator-() const {
  CyclotomicNumber out = *this;
  for (auto& c : out.coords_) c = -c;
  return out;
}

CyclotomicNumber& CyclotomicNumber::operator*=(const CyclotomicNumber& o) {
  if (o.is_rational()) {
    for (auto& c : coords_) c *= o.coords_[0];
    return *this;
  }
  if (is_rational()) {
    Rational s = coords_[0];
    *this = o;
    for (auto& c : coords_) c *= s;
    return *this;
  }
  if (order() != o.order()) {
    unsigned l = static_cast<unsigned>(lcm(order(), o.order()));
    *this = lift(l);
    return *this *= o.lift(l);
  }
  const unsigned n = order();
  std::vector<Integer> a, b;
  Integer den = scale_to_integers(coords_, a) * scale_to_integers(o.coords_, b);
  std::vector<Integer> w(n, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      mpz_addmul(w[(i + j) % n].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  coords_ = reduce_weights(*field_, w, den);
  return *this;
}

CyclotomicNumber& CyclotomicNumber::operator/=(const CyclotomicNumber& o) { return *this *= o.inverse(); }

bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b) {
  if (a.order() == b.order()) return a.coords_ == b.coords_;
  if (a.is_rational() && b.is_rational()) return a.coords_[0] == b.coords_[0];
  unsigned l = static_cast<unsigned>(lcm(a.order(), b.order()));
  return a.lift(l).coords_ == b.lift(l).coords_;
}

CyclotomicNumber cyclo_root(unsigned n, long j) {
  if (n == 0) throw InvalidArgument("cyclo_root: n must be positive");
  auto f = CyclotomicField::get(n);
  const auto& row = f->power_table[mod(j, n)];
  std::vector<Rational> coords(row.begin(), row.end());
  for (std::size_t i = 0; i < row.size(); ++i) coords[i] = Rational(static_cast<long>(row[i]));
  return CyclotomicNumber(n, std::move(coords));
}

std::complex<long double> embed_complex_ld(const CyclotomicNumber& a) {
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  std::complex<long double> acc = 0;
  const auto& c = a.coords();
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (c[j] == 0) continue;
    long double angle = two_pi * static_cast<long double>(j) / a.order();
    long double v = c[j].get_d();
    acc += v * std::complex<long double>(std::cos(angle), std::sin(angle));
  }
  return acc;
}

ComplexApprox embed_complex(const CyclotomicNumber& a) {
  auto z = embed_complex_ld(a);
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

bool divides_integer(const CyclotomicNumber& a, const Integer& n) {
  if (n == 0) throw InvalidArgument("divides_integer: zero modulus");
  for (const auto& c : a.coords()) {
    if (c.get_den() != 1) return false;
    if (!mpz_divisible_p(c.get_num_mpz_t(), n.get_mpz_t())) return false;
  }
  return true;
}

std::optional<long> min_coord_valuation(const CyclotomicNumber& a, unsigned long p) {
  std::optional<long> best;
  for (const auto& c : a.coords()) {
    auto v = p_valuation(c, p);
    if (v && (!best || *v < *best)) best = v;
  }
  return best;
}

Integer common_denominator(const CyclotomicNumber& a) {
  Integer den = 1;
  for (const auto& c : a.coords()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  return den;
}

RootSum::RootSum(unsigned order) : order_(order), weights_(order, 0) {}

void RootSum::add(long exponent, const Integer& weight) { weights_[mod(exponent, order_)] += weight; }

void RootSum::add(long exponent, long weight) { weights_[mod(exponent, order_)] += weight; }

void RootSum::merge(const RootSum& other) {
  if (other.order_ != order_) throw InvalidArgument("RootSum::merge: order mismatch");
  for (unsigned j = 0; j < order_; ++j) weights_[j] += other.weights_[j];
}

CyclotomicNumber RootSum::value() const {
  std::vector<Rational> w(weights_.begin(), weights_.end());
  return CyclotomicNumber::from_exponent_weights(order_, w);
}

}  // namespace eismeas
