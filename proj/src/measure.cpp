#include "eismeas/measure.hpp"

#include <omp.h>

#include <cmath>
#include <exception>
#include <numbers>

#include "eismeas/linalg.hpp"
#include "eismeas/parallel.hpp"
#include "eismeas/qexpansion.hpp"
#include "eismeas/serialize.hpp"

namespace eismeas {

namespace {

void require_odd_prime(long p, const char* who) {
  if (p < 3 || !is_prime(p)) throw InvalidArgument(std::string(who) + ": p must be an odd prime");
}

std::vector<long> units_mod(long p, long n) {
  std::vector<long> out;
  for (long a = 1; a < n; ++a)
    if (a % p != 0) out.push_back(a);
  return out;
}

Rational frac(long a, long n) {
  Rational r(mod(a, n), n);
  r.canonicalize();
  return r;
}

Integer factorial(long k) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(k));
  return out;
}

std::string value_string(const CyclotomicNumber& a) {
  if (a.is_rational()) return to_string(a.rational_part());
  return to_json(a).dump();
}

// Runs body(i) for i < n on the OpenMP team; the first exception is rethrown afterwards.
template <class F>
void parallel_for(long n, F&& body) {
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
  for (long i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical(eismeas_parallel_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

MeasureReport compare_exact(std::string claim, Json inputs, const CyclotomicNumber& left,
                            const CyclotomicNumber& right, std::optional<long> p) {
  MeasureReport r;
  r.claim = std::move(claim);
  r.inputs = std::move(inputs);
  r.left = value_json(left);
  r.right = value_json(right);
  r.equal = left == right;
  r.holds = r.equal;
  if (!r.equal) {
    if (right.is_zero())
      r.ratio = "inf";
    else if (left.is_zero())
      r.ratio = "0";
    else
      r.ratio = value_string(left / right);
    if (p) r.valuation_gap = min_coord_valuation(left - right, static_cast<unsigned long>(*p));
  }
  return r;
}

// ---- Mazur measure ----

DistributionTable<Rational> mazur_measure(long p, long m, long c) {
  require_odd_prime(p, "mazur_measure");
  if (m < 1) throw InvalidArgument("mazur_measure: m must be >= 1");
  if (c <= 1 || gcd(c, 2 * p) != 1) throw InvalidArgument("mazur_measure: c must be > 1 and coprime to 2p");
  DistributionTable<Rational> t{p, m, {}};
  const long n = t.modulus();
  const long cbar = mod_inverse(c, n);
  for (long a : units_mod(p, n)) {
    // c B_1({a cbar / N}) - B_1({a / N}); the opposite sign integrates to minus the interpolation target.
    Rational v = c * frac(a * cbar, n) - frac(a, n) - Rational(c - 1, 2);
    v.canonicalize();
    auto val = p_valuation(v, static_cast<unsigned long>(p));
    if (val && *val < 0) throw ArithmeticError("mazur_measure: value is not p-integral");
    t.values.emplace(a, v);
  }
  return t;
}

Rational zeta_c_neg(long p, long c, long k) {
  if (k < 1) throw InvalidArgument("zeta_c_neg: k must be >= 1");
  Rational out = Rational(1 - ipow(p, k)) * Rational(1 - ipow(c, k + 1)) * zeta_neg(k + 1);
  out.canonicalize();
  return out;
}

Rational riemann_sum(const DistributionTable<Rational>& table, long k) {
  Rational acc = 0;
  for (const auto& [a, v] : table.values) acc += Rational(ipow(a, k)) * v;
  acc.canonicalize();
  return acc;
}

MeasureReport mazur_interpolation_check(long p, long m, long c, long k) {
  auto table = mazur_measure(p, m, c);
  Rational left = riemann_sum(table, k), right = zeta_c_neg(p, c, k);
  auto r = compare_exact("mazur_interpolation", Json{{"p", p}, {"m", m}, {"c", c}, {"k", k}}, left, right, p);
  Rational diff = left - right;
  diff.canonicalize();
  auto v = p_valuation(diff, static_cast<unsigned long>(p));
  r.valuation_gap = v;
  r.holds = !v || *v >= m;
  return r;
}

MeasureReport mazur_refinement_check(long p, long m, long c) {
  auto coarse = mazur_measure(p, m, c), fine = mazur_measure(p, m + 1, c);
  const long n = coarse.modulus();
  MeasureReport r;
  r.claim = "mazur_refinement";
  r.inputs = Json{{"p", p}, {"m", m}, {"c", c}};
  r.holds = true;
  Json bad = Json::array();
  for (const auto& [a, v] : coarse.values) {
    Rational sum = 0;
    for (long j = 0; j < p; ++j) sum += fine.at(a + j * n);
    sum.canonicalize();
    if (sum != v) {
      r.holds = false;
      bad.push_back(a);
    }
  }
  r.equal = r.holds;
  r.left = "sum of refinements";
  r.right = "coarse value";
  if (!bad.empty()) r.details["mismatched_residues"] = bad;
  return r;
}

MeasureReport kummer_theorem_check(long p, long m, long c, const std::vector<Rational>& h) {
  MeasureReport r;
  r.claim = "kummer_theorem";
  Json coeffs = Json::array();
  for (const auto& a : h) coeffs.push_back(to_string(a));
  r.inputs = Json{{"p", p}, {"m", m}, {"c", c}, {"h", coeffs}};
  const auto up = static_cast<unsigned long>(p);
  const long n = ipow_small(p, static_cast<unsigned>(m));

  bool integral = true;
  for (const auto& a : h) {
    auto v = p_valuation(a, up);
    if (v && *v < 0) integral = false;
  }
  bool hypothesis = integral;
  for (long x = 0; hypothesis && x < n; ++x) {
    Rational hx = 0;
    for (std::size_t i = 0; i < h.size(); ++i) hx += h[i] * Rational(ipow(x, i));
    hx.canonicalize();
    auto v = p_valuation(hx, up);
    if (v && *v < m) hypothesis = false;
  }
  if (!hypothesis) {
    r.applicable = false;
    r.holds = true;
    r.details["reason"] = integral ? "h(x) not in p^m Z_p for some x" : "coefficients not p-integral";
    return r;
  }
  // The i = 0 term carries the factor (1 - p^0) and vanishes.
  Rational sum = 0;
  for (std::size_t i = 1; i < h.size(); ++i)
    if (h[i] != 0) sum += h[i] * zeta_c_neg(p, c, static_cast<long>(i));
  sum.canonicalize();
  r.left = to_string(sum);
  r.right = "0 mod p^m";
  auto v = p_valuation(sum, up);
  r.valuation_gap = v;
  r.holds = !v || *v >= m;
  r.equal = sum == 0;
  return r;
}

// ---- Character and Gauss-sum lemmas ----

MeasureReport character_sum_lemma(long p, long b, long n) {
  require_odd_prime(p, "character_sum_lemma");
  if (mod(b, p) == 0 || mod(n, p) == 0) throw InvalidArgument("character_sum_lemma: b and n must be units");
  RootSum acc(static_cast<unsigned>(p - 1));
  for (const auto& chi : enumerate_characters(p, 1)) {
    if (chi.conductor() != p) continue;
    acc.add(*chi.exponent(n) - *chi.exponent(b), 1);
  }
  const long right = mod(b - n, p) == 0 ? p - 2 : -1;
  return compare_exact("character_sum_lemma", Json{{"p", p}, {"b", b}, {"n", n}}, acc.value(),
                       CyclotomicNumber(right));
}

MeasureReport geometric_sum_lemma(const DirichletCharacter& chi, long v) {
  const long n = chi.modulus(), c = chi.conductor(), q = n / c;
  RootSum acc(static_cast<unsigned>(n));
  for (long t = 0; t < q; ++t) acc.add(mod(v * c * t, n), 1);
  const long right = mod(v, q) == 0 ? q : 0;
  return compare_exact("geometric_sum_lemma",
                       Json{{"p", chi.p()}, {"m", chi.m()}, {"index", chi.index()}, {"v", v}}, acc.value(),
                       CyclotomicNumber(right));
}

MeasureReport gauss_summation_lemma(const DirichletCharacter& chi, long v) {
  const long n = chi.modulus(), c = chi.conductor(), q = n / c, phi = chi.phi();
  const unsigned order = static_cast<unsigned>(lcm(n, phi));
  Json inputs{{"p", chi.p()}, {"m", chi.m()}, {"index", chi.index()}, {"v", v}};

  RootSum literal(order);
  for (long t0 = 0; t0 < c; ++t0)
    if (auto e = chi.primitive_exponent(t0)) literal.add(*e * (order / phi) + mod(v * t0, n) * (order / n), 1);

  if (mod(v, q) != 0) {
    MeasureReport r;
    r.claim = "gauss_summation_lemma";
    r.inputs = inputs;
    r.left = value_json(literal.value());
    r.right = nullptr;
    r.applicable = false;
    r.holds = true;
    r.details["reason"] = "p^m / C does not divide v";
    return r;
  }
  const long w = v / q;
  const auto g = gauss_sum(chi);
  const auto chibar_w = chi.conj().primitive_value(w);
  auto r = compare_exact("gauss_summation_lemma", inputs, literal.value(), chibar_w * g);

  // Sum over t in (Z/p^m)^* against the phi-ratio normalization.
  RootSum full(order);
  for (long t = 0; t < n; ++t)
    if (auto e = chi.exponent(t)) full.add(*e * (order / phi) + mod(v * t, n) * (order / n), 1);
  const CyclotomicNumber right_full = chibar_w * g * Rational(phi, euler_phi(c));
  const bool full_ok = full.value() == right_full;
  r.details["unit_sum"] = value_json(full.value());
  r.details["unit_sum_expected"] = value_json(right_full);
  r.details["unit_sum_equal"] = full_ok;
  r.holds = r.equal && full_ok;
  return r;
}

MeasureReport functional_equation_check(const DirichletCharacter& chi, long k, long terms, double tol) {
  if (k < 2) throw InvalidArgument("functional_equation_check: k must be >= 2");
  const int delta = chi.parity();
  const long c = chi.conductor();
  const double gamma = std::tgamma(static_cast<double>(k));
  const double cs = std::cos(std::numbers::pi * static_cast<double>(k - delta) / 2.0);
  auto series = l_complex(k, chi.conj(), terms, CharacterConvention::Primitive);
  const ComplexApprox left = gamma * cs * series.value;
  const ComplexApprox i_delta = delta ? ComplexApprox(0, 1) : ComplexApprox(1, 0);
  const ComplexApprox rest = std::pow(2.0 * std::numbers::pi / static_cast<double>(c), static_cast<double>(k)) *
                             embed_complex(l_neg(k, chi)) / (2.0 * i_delta);
  const ComplexApprox right = embed_complex(gauss_sum(chi.conj())) * rest;
  const ComplexApprox printed = embed_complex(gauss_sum(chi)) * rest;
  MeasureReport r;
  r.claim = "functional_equation";
  r.inputs = Json{{"p", chi.p()}, {"m", chi.m()}, {"index", chi.index()}, {"k", k}, {"terms", terms}};
  r.left = to_json(left);
  r.right = to_json(right);
  r.exact = false;
  const double bound = tol + gamma * std::abs(cs) * series.tail_bound;
  r.tolerance = bound;
  r.equal = std::abs(left - right) <= bound;
  r.holds = r.equal;
  r.details["abs_difference"] = std::abs(left - right);
  r.details["gauss_factor"] = "G(conj chi)";
  r.details["printed_gauss_factor_value"] = to_json(printed);
  r.details["printed_gauss_factor_matches"] = std::abs(left - printed) <= bound;
  return r;
}

// ---- Divisibility claims ----

int cos_half_pi(long k, int delta) {
  switch (mod(k - delta, 4)) {
    case 0: return 1;
    case 2: return -1;
    default: return 0;
  }
}

CyclotomicNumber functional_bracket(const DirichletCharacter& chi, long k) {
  const int cs = cos_half_pi(k, chi.parity());
  if (cs == 0) return CyclotomicNumber();
  const auto l = l_neg(k, chi);
  if (l.is_zero()) throw ArithmeticError("functional_bracket: L(1-k, chi) vanishes");
  CyclotomicNumber out = Rational(factorial(k) / k * cs * 2 * ipow(chi.conductor(), k));
  out *= cyclo_root(4, chi.parity());
  return out / gauss_sum(chi) / l;
}

CyclotomicNumber true_bracket(const DirichletCharacter& chi, long k) {
  const auto printed = functional_bracket(chi, k);
  if (printed.is_zero()) return printed;
  return printed * gauss_sum(chi) / gauss_sum(chi.conj());
}

CPrime compute_cprime(long p, long m_max, const std::vector<long>& ks) {
  CPrime out{Integer(1), 0};
  for (long m = 1; m <= m_max; ++m)
    for (const auto& chi : enumerate_characters(p, m))
      for (long k : ks) {
        const auto l = l_neg(k, chi);
        if (l.is_zero()) continue;
        Integer den = common_denominator(l.inverse());
        mpz_lcm(out.value.get_mpz_t(), out.value.get_mpz_t(), den.get_mpz_t());
      }
  out.p_part = p_valuation(out.value, static_cast<unsigned long>(p)).value_or(0);
  return out;
}

MeasureReport divisibility_5_11(const DirichletCharacter& chi, long k, const Integer& cprime) {
  const long c = chi.conductor();
  Json inputs{{"p", chi.p()}, {"m", chi.m()}, {"index", chi.index()}, {"k", k}, {"cprime", cprime.get_str()}};
  const Integer c2 = Integer(c) * c;
  const int cs = cos_half_pi(k, chi.parity());
  if (cs == 0) {
    auto r = compare_exact("divisibility_5_11", inputs, CyclotomicNumber(), CyclotomicNumber());
    r.holds = true;
    r.details["reason"] = "parity factor vanishes";
    return r;
  }
  const auto g = gauss_sum(chi);
  const CyclotomicNumber sign = chi.value(-1);
  const bool gauss_identity = Rational(c) * gauss_sum(chi.conj()).inverse() == sign * g;
  CyclotomicNumber value = Rational(factorial(k) / k * cs * 2 * ipow(c, k - 1));
  value *= cyclo_root(4, chi.parity()) * sign * g * l_neg(k, chi).inverse();
  const CyclotomicNumber scaled = value * Rational(cprime);
  MeasureReport r;
  r.claim = "divisibility_5_11";
  r.inputs = inputs;
  r.left = value_json(scaled);
  r.right = c2.get_str();
  r.holds = divides_integer(scaled, c2) && gauss_identity;
  r.equal = r.holds;
  r.details["gauss_identity"] = gauss_identity;
  r.details["value"] = value_json(value);
  return r;
}

MeasureReport exp_sum_divisibility_5_17(const DirichletCharacter& chi, long d, long a, long mprime) {
  const long p = chi.p(), n = chi.modulus(), c = chi.conductor(), q = n / c, phi = chi.phi();
  if (d == 0) throw InvalidArgument("exp_sum_divisibility_5_17: d must be +-p^m_d");
  const long sign = d > 0 ? 1 : -1;
  const long md = p_valuation(Integer(d), static_cast<unsigned long>(p)).value_or(0);
  if (std::labs(d) != ipow_small(p, static_cast<unsigned>(md)))
    throw InvalidArgument("exp_sum_divisibility_5_17: d must be +-p^m_d");
  if (mprime < md) throw InvalidArgument("exp_sum_divisibility_5_17: need m' >= m_d");
  const long target = mod_pow(p, static_cast<unsigned long>(mprime - md), n);
  const long order = lcm(n, phi);

  auto triple = [&](bool primitive) {
    RootSum acc(static_cast<unsigned>(order));
    const long outer = primitive ? c : n, inner = primitive ? q : 1;
    for (long t0 = 0; t0 < outer; ++t0) {
      auto e = primitive ? chi.primitive_exponent(t0) : chi.exponent(t0);
      if (!e) continue;
      for (long tp = 0; tp < inner; ++tp) {
        const long t = t0 + c * tp;
        for (long x = 0; x < n; ++x) {
          if (mod(sign * x * t - target, n) != 0) continue;
          for (long b = 0; b < n; ++b)
            acc.add(*e * (order / phi) + mod(d * b * t - a * x, n) * (order / n), 1);
        }
      }
    }
    return acc.value();
  };
  const auto value = triple(true);
  MeasureReport r;
  r.claim = "exp_sum_divisibility_5_17";
  r.inputs = Json{{"p", p}, {"m", chi.m()}, {"index", chi.index()}, {"d", d}, {"a", a}, {"mprime", mprime}};
  const Integer q2 = Integer(q) * q;
  r.left = value_json(value);
  r.right = q2.get_str();
  r.holds = divides_integer(value, q2);
  r.equal = r.holds;
  r.details["modulus_convention_sum"] = value_json(triple(false));
  if (!r.holds) r.valuation_gap = min_coord_valuation(value, static_cast<unsigned long>(p));
  return r;
}

// ---- Exact p-power coefficients ----

std::string to_string(Convention c) { return c == Convention::AsPrinted ? "as-printed" : "from-definition"; }

Convention parse_convention(const std::string& s) {
  if (s == "as-printed") return Convention::AsPrinted;
  if (s == "from-definition") return Convention::FromDefinition;
  throw InvalidArgument("unknown convention: " + s);
}

CyclotomicNumber character_weight(const DirichletCharacter& chi, long k, Convention conv) {
  const auto bracket = conv == Convention::AsPrinted ? functional_bracket(chi, k) : true_bracket(chi, k);
  if (bracket.is_zero()) return bracket;
  if ((chi.parity() + k) % 2 != 0) return CyclotomicNumber();  // 1 + conj(chi)(-1) (-1)^k = 0
  CyclotomicNumber w = bracket * CyclotomicNumber(2);
  if (chi.is_principal()) {
    const Integer pk = ipow(chi.p(), k);
    w *= Rational(pk, pk - 1);
  }
  if (conv == Convention::FromDefinition) w *= cyclo_root(4, 3 * k);
  return w;
}

namespace {

// H(t) = sum_chi W(chi) chi(t) (or conj(chi)(t)) for t in [0, p^m); zero at non-units.
std::shared_ptr<const std::vector<CyclotomicNumber>> weighted_character_table(long p, long m, long k,
                                                                              Convention conv) {
  using Key = std::tuple<long, long, long, int>;
  static SpecialValueCache<Key, std::shared_ptr<const std::vector<CyclotomicNumber>>> cache;
  return cache.get_or_compute(Key{p, m, k, static_cast<int>(conv)}, [&] {
    const long n = ipow_small(p, static_cast<unsigned>(m));
    const auto chars = enumerate_characters(p, m);
    const long phi = chars.front().phi();
    std::vector<CyclotomicNumber> weights;
    for (const auto& chi : chars) weights.push_back(character_weight(chi, k, conv));
    auto table = std::make_shared<std::vector<CyclotomicNumber>>(n, CyclotomicNumber());
    for (long t = 0; t < n; ++t) {
      if (t % p == 0) continue;
      CyclotomicNumber acc;
      for (std::size_t i = 0; i < chars.size(); ++i) {
        if (weights[i].is_zero()) continue;
        long e = *chars[i].exponent(t);
        if (conv == Convention::FromDefinition) e = -e;
        acc += weights[i] * cyclo_root(static_cast<unsigned>(phi), e);
      }
      (*table)[t] = acc;
    }
    return std::shared_ptr<const std::vector<CyclotomicNumber>>(table);
  });
}

void require_coefficient_inputs(long p, long m, long k, long a, long j) {
  require_odd_prime(p, "fourier_coefficient");
  if (m < 1) throw InvalidArgument("fourier_coefficient: m must be >= 1");
  if (k < 2 || k % 2 != 0) throw InvalidArgument("fourier_coefficient: k must be even and >= 2");
  if (mod(a, p) == 0) throw InvalidArgument("fourier_coefficient: a must be a unit mod p");
  if (j < 0) throw InvalidArgument("fourier_coefficient: j must be >= 0");
}

}  // namespace

CyclotomicNumber fourier_coefficient_ppower(long p, long m, long k, long a, long j, Convention conv) {
  require_coefficient_inputs(p, m, k, a, j);
  const long n = ipow_small(p, static_cast<unsigned>(m));
  const long phi = euler_phi(n);
  const auto h = weighted_character_table(p, m, k, conv);
  const std::vector<long> signs = conv == Convention::AsPrinted ? std::vector<long>{1, -1} : std::vector<long>{1};
  CyclotomicNumber total;
  for (long t = 1; t < n; ++t) {
    if (t % p == 0 || (*h)[t].is_zero()) continue;
    const long tinv = mod_inverse(t, n);
    RootSum g(static_cast<unsigned>(n));
    for (long md = m; md <= j; ++md) {
      const Integer w = ipow(p, md * (k - 1));
      const long x = mod(mod_pow(p, static_cast<unsigned long>(j - md), n) * tinv, n);
      for (long s : signs) g.add(mod(-a * s * x, n), s < 0 && k % 2 ? Integer(-w) : w);
    }
    total += (*h)[t] * g.value();
  }
  return total * Rational(1, phi);
}

CyclotomicNumber fourier_coefficient_ppower_reference(long p, long m, long k, long a, long j, Convention conv) {
  require_coefficient_inputs(p, m, k, a, j);
  const long n = ipow_small(p, static_cast<unsigned>(m));
  const long phi = euler_phi(n);
  const long order = lcm(n, phi);
  const long sign_count = conv == Convention::AsPrinted ? 2 : 1;
  CyclotomicNumber total;
  for (const auto& chi : enumerate_characters(p, m)) {
    const auto w = character_weight(chi, k, conv);
    if (w.is_zero()) continue;
    RootSum acc(static_cast<unsigned>(order));
    for (long t = 0; t < n; ++t) {
      auto e = chi.exponent(t);
      if (!e) continue;
      const long ce = conv == Convention::FromDefinition ? -*e : *e;
      for (long md = 0; md <= j; ++md) {
        const long pd = mod_pow(p, static_cast<unsigned long>(md), n);
        const long rest = mod_pow(p, static_cast<unsigned long>(j - md), n);
        const Integer weight = ipow(p, md * (k - 1));
        for (long si = 0; si < sign_count; ++si) {
          const long s = si == 0 ? 1 : -1;
          // d = s p^md; the explicit sign of the negative-divisor sum times d^(k-1) gives (-1)^k.
          const Integer dw = s < 0 && k % 2 ? Integer(-weight) : weight;
          for (long x = 0; x < n; ++x) {
            if (mod(rest - s * x * t, n) != 0) continue;
            for (long b = 0; b < n; ++b)
              acc.add(ce * (order / phi) + mod(-a * x + s * pd * b * t, n) * (order / n), dw);
          }
        }
      }
    }
    total += w * acc.value();
  }
  return total * Rational(1, n * phi);
}

DistributionTable<CyclotomicNumber> fourier_coefficient_table(long p, long m, long k, long j, Convention conv) {
  DistributionTable<CyclotomicNumber> t{p, m, {}};
  const auto residues = units_mod(p, t.modulus());
  weighted_character_table(p, m, k, conv);
  std::vector<CyclotomicNumber> out(residues.size());
  parallel_for(static_cast<long>(residues.size()),
               [&](long i) { out[i] = fourier_coefficient_ppower(p, m, k, residues[i], j, conv); });
  for (std::size_t i = 0; i < residues.size(); ++i) t.values.emplace(residues[i], out[i]);
  return t;
}

// ---- mu*_k ----

AlphaPart alpha_part_of_sequence(const std::vector<CyclotomicNumber>& seq, const Rational& alpha, long mprime) {
  using M = Matrix<CyclotomicNumber>;
  AlphaPart out;
  bool all_zero = true;
  for (const auto& s : seq) all_zero = all_zero && s.is_zero();
  if (all_zero) return out;
  const long len = static_cast<long>(seq.size());
  for (long r = 1; 2 * r + 2 <= len; ++r) {
    const long eqs = len - r;
    M a(eqs, r);
    std::vector<CyclotomicNumber> b(eqs);
    for (long i = 0; i < eqs; ++i) {
      for (long l = 0; l < r; ++l) a(i, l) = seq[i + l];
      b[i] = seq[i + r];
    }
    auto c = solve_linear(a, b);
    if (!c) continue;
    M companion(r, r);
    for (long l = 0; l + 1 < r; ++l) companion(l + 1, l) = CyclotomicNumber(1);
    for (long l = 0; l < r; ++l) companion(l, r - 1) = (*c)[l];
    const M pi = projector_alpha(companion, CyclotomicNumber(alpha));
    std::vector<CyclotomicNumber> v(r);
    for (long l = 0; l < r; ++l) v[l] = pi(l, 0);
    // U restricted to the alpha-part, extended by the identity so it is invertible.
    const M id = M::identity(r);
    auto inv = inverse(companion * pi + (id - pi));
    if (!inv) throw ArithmeticError("alpha_part_of_sequence: U is singular on the alpha-part");
    const auto w = matrix_power(*inv, static_cast<unsigned long>(mprime)).apply(v);
    for (long l = 0; l < r; ++l) out.value += w[l] * seq[l];
    out.recurrence_order = r;
    out.recurrence = *c;
    return out;
  }
  throw ArithmeticError("alpha_part_of_sequence: no linear recurrence of small order");
}

void require_mu_star_inputs(long p, long m, long k, long mprime) {
  require_odd_prime(p, "mu_star");
  if (!is_regular_prime(p)) throw InvalidArgument("mu_star: p must be a regular prime");
  if (k < 4 || k % 2 != 0) throw InvalidArgument("mu_star: k must be even and >= 4");
  if (m < 1) throw InvalidArgument("mu_star: m must be >= 1");
  if (mprime <= 2 * m) throw InvalidArgument("mu_star: m' must exceed 2m");
}

namespace {

constexpr long kSequenceLength = 8;

CyclotomicNumber mu_star_unchecked(long p, long m, long k, long a, long mprime, Convention conv) {
  std::vector<CyclotomicNumber> seq;
  for (long i = 0; i < kSequenceLength; ++i) seq.push_back(fourier_coefficient_ppower(p, m, k, a, mprime + i, conv));
  return alpha_part_of_sequence(seq, Rational(1), mprime).value;
}

}  // namespace

CyclotomicNumber mu_star_k_value(long p, long m, long k, long a, long mprime, Convention conv) {
  require_mu_star_inputs(p, m, k, mprime);
  if (mod(a, p) == 0) throw InvalidArgument("mu_star: a must be a unit mod p");
  return mu_star_unchecked(p, m, k, a, mprime, conv);
}

DistributionTable<CyclotomicNumber> mu_star_table(long p, long m, long k, long mprime, Convention conv) {
  require_mu_star_inputs(p, m, k, mprime);
  DistributionTable<CyclotomicNumber> t{p, m, {}};
  const auto residues = units_mod(p, t.modulus());
  weighted_character_table(p, m, k, conv);
  std::vector<CyclotomicNumber> out(residues.size());
  parallel_for(static_cast<long>(residues.size()),
               [&](long i) { out[i] = mu_star_unchecked(p, m, k, residues[i], mprime, conv); });
  for (std::size_t i = 0; i < residues.size(); ++i) t.values.emplace(residues[i], out[i]);
  return t;
}

CyclotomicNumber mu_star_integrate(const DistributionTable<CyclotomicNumber>& table, const DirichletCharacter& chi) {
  if (chi.p() != table.p || chi.m() > table.m)
    throw InvalidArgument("mu_star_integrate: character modulus must divide the table modulus");
  CyclotomicNumber acc;
  for (const auto& [a, v] : table.values) acc += chi.value(a) * v;
  return acc;
}

CyclotomicNumber mu_star_integrate(const DistributionTable<CyclotomicNumber>& table, MonomialMarker x) {
  CyclotomicNumber acc;
  for (const auto& [a, v] : table.values) acc += v * Rational(ipow(a, x.k));
  return acc;
}

MeasureReport mu_star_refinement_check(long p, long m, long k, long mprime, Convention conv) {
  auto coarse = mu_star_table(p, m, k, mprime, conv);
  auto fine = mu_star_table(p, m + 1, k, mprime, conv);
  const long n = coarse.modulus();
  MeasureReport r;
  r.claim = "mu_star_refinement";
  r.inputs = Json{{"p", p}, {"m", m}, {"k", k}, {"mprime", mprime}, {"convention", to_string(conv)}};
  r.holds = true;
  Json bad = Json::array();
  for (const auto& [a, v] : coarse.values) {
    CyclotomicNumber sum;
    for (long j = 0; j < p; ++j) sum += fine.at(a + j * n);
    if (sum != v) {
      r.holds = false;
      Json entry{{"residue", a}, {"coarse", value_json(v)}, {"refined_sum", value_json(sum)}};
      if (!v.is_zero()) entry["ratio"] = value_string(sum / v);
      bad.push_back(entry);
    }
  }
  r.equal = r.holds;
  r.left = "sum of refinements";
  r.right = "coarse value";
  if (!bad.empty()) r.details["mismatches"] = bad;
  return r;
}

Rational rhs_theorem1(long p, long k) {
  if (k < 4 || k % 2 != 0) throw InvalidArgument("rhs_theorem1: k must be even and >= 4");
  require_odd_prime(p, "rhs_theorem1");
  const long sign = (k / 2) % 2 == 0 ? 1 : -1;
  Rational out = Rational(factorial(k - 1) * 4 * sign * ipow(p, 2 * k - 1) * (p - 1));
  out /= zeta_neg(k) * Rational(1 - ipow(p, k - 1));
  out.canonicalize();
  return out;
}

MeasureReport theorem1_check(long p, long k, long mprime, Convention conv) {
  auto table = mu_star_table(p, 1, k, mprime, conv);
  const auto principal = enumerate_characters(p, 1).front();
  const auto left = mu_star_integrate(table, principal);
  Json inputs{{"p", p}, {"k", k}, {"mprime", mprime}, {"convention", to_string(conv)}};
  const Rational right = rhs_theorem1(p, k);
  if (!left.is_rational()) {
    MeasureReport r;
    r.claim = "theorem1";
    r.inputs = inputs;
    r.left = to_json(left);
    r.right = to_string(right);
    r.details["derivation_inconsistency"] = "left side is not rational";
    r.details["coords"] = to_json(left)["coords"];
    return r;
  }
  auto r = compare_exact("theorem1", inputs, left, right, p);
  return r;
}

MeasureReport boundedness_check(long p, long k, long m_max, Convention conv) {
  MeasureReport r;
  r.claim = "boundedness";
  r.inputs = Json{{"p", p}, {"k", k}, {"m_max", m_max}, {"convention", to_string(conv)}};
  const auto up = static_cast<unsigned long>(p);
  long e = 0;
  std::vector<DistributionTable<CyclotomicNumber>> tables;
  for (long m = 1; m <= m_max; ++m) tables.push_back(mu_star_table(p, m, k, 2 * m + 1, conv));
  for (const auto& [a, v] : tables.front().values)
    if (auto val = min_coord_valuation(v, up)) e = std::max(e, -*val);
  const Integer scale = ipow(p, e);
  r.holds = true;
  Json per_level = Json::array();
  for (const auto& t : tables) {
    std::optional<long> lowest;
    for (const auto& [a, v] : t.values) {
      auto val = min_coord_valuation(v * Rational(scale), up);
      if (val && (!lowest || *val < *lowest)) lowest = val;
    }
    if (lowest && *lowest < 0) r.holds = false;
    per_level.push_back(Json{{"m", t.m}, {"min_valuation_scaled", lowest ? Json(*lowest) : Json(nullptr)}});
  }
  r.equal = r.holds;
  r.left = per_level;
  r.right = scale.get_str();
  r.details["scale_exponent"] = e;
  return r;
}

std::vector<MeasureReport> abstract_kummer_verify(long p, long m, const std::map<long, CyclotomicNumber>& targets,
                                                  const std::vector<KummerTrial>& trials, const Integer& scale) {
  const auto chars = enumerate_characters(p, m);
  const long n = chars.front().modulus();
  const long phi = chars.front().phi();
  const auto up = static_cast<unsigned long>(p);
  std::vector<std::pair<std::string, KummerTrial>> all;
  for (std::size_t i = 0; i < trials.size(); ++i) all.emplace_back("trial_" + std::to_string(i), trials[i]);
  for (long a : units_mod(p, n)) {
    KummerTrial delta;
    for (const auto& chi : chars) delta.emplace_back(chi.index(), chi.conj().value(a) * Rational(1, phi));
    all.emplace_back("delta_" + std::to_string(a), delta);
  }

  std::vector<MeasureReport> out;
  for (const auto& [name, trial] : all) {
    MeasureReport r;
    r.claim = "abstract_kummer";
    r.inputs = Json{{"p", p}, {"m", m}, {"combination", name}, {"scale", scale.get_str()}};
    std::optional<long> level;
    for (long y : units_mod(p, n)) {
      CyclotomicNumber f;
      for (const auto& [idx, b] : trial) f += b * chars.at(idx).value(y);
      if (auto v = min_coord_valuation(f, up); v && (!level || *v < *level)) level = v;
    }
    CyclotomicNumber sum;
    for (const auto& [idx, b] : trial) sum += b * targets.at(idx);
    sum *= Rational(scale);
    r.left = value_json(sum);
    if (!level) {
      r.right = "0";
      r.equal = r.holds = sum.is_zero();
    } else if (*level < 0) {
      r.applicable = false;
      r.holds = true;
      r.right = nullptr;
      r.details["reason"] = "combination is not integral";
    } else {
      r.right = "p^" + std::to_string(*level) + " O";
      auto v = min_coord_valuation(sum, up);
      r.valuation_gap = v;
      r.holds = !v || *v >= *level;
      r.equal = r.holds;
    }
    r.details["r"] = level ? Json(*level) : Json("inf");
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace eismeas
