#include "eismeas/eisenstein.hpp"

#include <omp.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>

#include "eismeas/parallel.hpp"

namespace eismeas {

namespace {

using CLD = std::complex<long double>;

constexpr long double kTwoPi = 2.0L * std::numbers::pi_v<long double>;

long double factorial(long n) {
  long double out = 1;
  for (long i = 2; i <= n; ++i) out *= i;
  return out;
}

// (-2 pi i)^k
CLD minus_two_pi_i_pow(long k) {
  CLD out = 1;
  for (long i = 0; i < k; ++i) out *= CLD(0, -kTwoPi);
  return out;
}

std::vector<CLD> roots_table(long n) {
  std::vector<CLD> out(n);
  for (long j = 0; j < n; ++j) out[j] = std::polar(1.0L, kTwoPi * j / n);
  return out;
}

void require_upper_half_plane(ComplexApprox z) {
  if (!(z.imag() > 0)) throw InvalidArgument("lattice sum: Im(z) must be positive");
}

// One lattice row: sum over d = b mod N, |d| <= R, of (c z + d)^-k.
std::complex<double> lattice_row(long k, long n_level, long b, ComplexApprox z, long c, long cutoff, bool coprime) {
  std::complex<double> acc = 0;
  long d = -cutoff + mod(b + cutoff, n_level);
  const std::complex<double> cz = static_cast<double>(c) * z;
  for (; d <= cutoff; d += n_level) {
    if (c == 0 && d == 0) continue;
    if (coprime && std::gcd(std::abs(c), std::abs(d)) != 1) continue;
    std::complex<double> w = 1.0 / (cz + static_cast<double>(d));
    std::complex<double> wk = w;
    for (long i = 1; i < k; ++i) wk *= w;
    acc += wk;
  }
  return acc;
}

std::vector<long> lattice_rows(long n_level, long a, long cutoff) {
  std::vector<long> rows;
  for (long c = -cutoff + mod(a + cutoff, n_level); c <= cutoff; c += n_level) rows.push_back(c);
  return rows;
}

LatticeResult finish_lattice(const std::vector<std::complex<double>>& row_sums, long k, ComplexApprox z,
                             long cutoff) {
  CLD total = 0;
  for (const auto& r : row_sums) total += CLD(r.real(), r.imag());
  LatticeResult out;
  out.value = {static_cast<double>(total.real()), static_cast<double>(total.imag())};
  out.tail_estimate = 16.0 * std::pow(static_cast<double>(cutoff), 2.0 - k) * std::pow(1.0 + std::abs(z), k);
  out.cutoff = cutoff;
  return out;
}

LatticeResult lattice_parallel(long k, long n_level, long a, long b, ComplexApprox z, long cutoff, bool coprime) {
  require_upper_half_plane(z);
  const auto rows = lattice_rows(n_level, a, cutoff);
  std::vector<std::complex<double>> sums(rows.size());
  const long count = static_cast<long>(rows.size());
#pragma omp parallel for schedule(dynamic, 8) num_threads(thread_count())
  for (long i = 0; i < count; ++i) sums[i] = lattice_row(k, n_level, b, z, rows[i], cutoff, coprime);
  return finish_lattice(sums, k, z, cutoff);
}

LatticeResult lattice_serial(long k, long n_level, long a, long b, ComplexApprox z, long cutoff, bool coprime) {
  require_upper_half_plane(z);
  std::vector<std::complex<double>> sums;
  for (long c : lattice_rows(n_level, a, cutoff)) sums.push_back(lattice_row(k, n_level, b, z, c, cutoff, coprime));
  return finish_lattice(sums, k, z, cutoff);
}

}  // namespace

QExpansion<Rational> eisenstein_normalized(long k, long n_level, long a, long b, std::size_t precision) {
  if (k < 3) throw InvalidArgument("eisenstein_normalized: k must be >= 3");
  const long na = mod(a, n_level), nb = mod(b, n_level);
  QExpansion<Rational> out(precision);
  if (precision == 0) return out;
  if (nb == 0) out[0] = partial_zeta_neg(k, na == 0 ? n_level : na, n_level);
  const Integer sign_neg = (k % 2 == 0) ? 1 : -1;  // sgn(-d) (-d)^(k-1) = (-1)^k d^(k-1)
  for (std::size_t n = 1; n < precision; ++n) {
    Integer acc = 0;
    for (long d : divisors(static_cast<long>(n))) {
      const long dp = static_cast<long>(n) / d;
      if (mod(d, n_level) == na && mod(dp, n_level) == nb) acc += ipow(d, k - 1);
      if (mod(-d, n_level) == na && mod(-dp, n_level) == nb) acc += sign_neg * ipow(d, k - 1);
    }
    out[n] = acc;
  }
  return out;
}

RefinementResult distribution_refinement_check(long k, long p, long m, long a, long b, std::size_t precision) {
  const long n = ipow_small(p, static_cast<unsigned>(m));
  auto lhs = eisenstein_normalized(k, n, a, b, precision);
  QExpansion<Rational> rhs(precision);
  for (long j = 0; j < p; ++j)
    for (long l = 0; l < p; ++l) rhs = rhs + eisenstein_normalized(k, n * p, a + j * n, b + l * n, precision);
  RefinementResult out;
  for (std::size_t i = 0; i < precision; ++i) {
    if (lhs[i] != rhs[i]) {
      out.first_difference = i;
      return out;
    }
  }
  out.equal = true;
  return out;
}

NumericExpansion eisenstein_raw_numeric(long k, long n_level, long a, long b, std::size_t precision,
                                        long zeta_terms) {
  if (k < 3) throw InvalidArgument("eisenstein_raw_numeric: k must be >= 3");
  const auto roots = roots_table(n_level);
  const CLD scale = minus_two_pi_i_pow(k) / (std::pow(static_cast<long double>(n_level), k) * factorial(k - 1));
  const long na = mod(a, n_level), nb = mod(b, n_level);
  const long double sign = (k % 2 == 0) ? 1 : -1;
  NumericExpansion out;
  out.series = QExpansion<ComplexApprox>(precision);
  if (precision == 0) return out;
  if (na == 0) {
    auto plus = partial_zeta_numeric(k, nb, n_level, zeta_terms);
    auto minus = partial_zeta_numeric(k, -nb, n_level, zeta_terms);
    out.series[0] = plus.value + static_cast<double>(sign) * minus.value;
    out.constant_tail = plus.tail_bound + minus.tail_bound;
  }
  for (std::size_t n = 1; n < precision; ++n) {
    CLD acc = 0;
    for (long r : divisors(static_cast<long>(n))) {
      const long c = static_cast<long>(n) / r;
      const long double w = std::pow(static_cast<long double>(r), k - 1);
      if (mod(c, n_level) == na) acc += w * roots[mod(r * nb, n_level)];
      if (mod(-c, n_level) == na) acc += sign * w * roots[mod(-r * nb, n_level)];
    }
    CLD v = scale * acc;
    out.series[n] = {static_cast<double>(v.real()), static_cast<double>(v.imag())};
  }
  return out;
}

NumericValue evaluate_expansion(const QExpansion<ComplexApprox>& f, ComplexApprox z, long n_level, double scale,
                                double growth) {
  const CLD step = std::exp(CLD(0, kTwoPi) * CLD(z.real(), z.imag()) / static_cast<long double>(n_level));
  CLD acc = 0, qn = 1;
  for (std::size_t n = 0; n < f.precision(); ++n) {
    acc += CLD(f[n].real(), f[n].imag()) * qn;
    qn *= step;
  }
  const double r = static_cast<double>(std::abs(step));
  double tail = 0, term = 0;
  for (std::size_t n = f.precision(); n < f.precision() + 100000; ++n) {
    term = scale * std::pow(static_cast<double>(n), growth) * std::pow(r, static_cast<double>(n));
    tail += term;
    if (term < 1e-30 && n > f.precision() + 10) break;
  }
  return {{static_cast<double>(acc.real()), static_cast<double>(acc.imag())}, tail};
}

NumericValue evaluate_raw(const NumericExpansion& e, long k, long n_level, ComplexApprox z) {
  const double k_scale = std::pow(2.0 * std::numbers::pi / n_level, k) / static_cast<double>(factorial(k - 1));
  auto v = evaluate_expansion(e.series, z, n_level, 4.0 * k_scale, static_cast<double>(k));
  v.tail_bound += e.constant_tail;
  return v;
}

LatticeResult lattice_sum(long k, long n_level, long a, long b, ComplexApprox z, long cutoff) {
  return lattice_parallel(k, n_level, a, b, z, cutoff, false);
}

LatticeResult lattice_sum_coprime(long k, long n_level, long a, long b, ComplexApprox z, long cutoff) {
  return lattice_parallel(k, n_level, a, b, z, cutoff, true);
}

LatticeResult lattice_sum_reference(long k, long n_level, long a, long b, ComplexApprox z, long cutoff) {
  return lattice_serial(k, n_level, a, b, z, cutoff, false);
}

LatticeResult lattice_sum_coprime_reference(long k, long n_level, long a, long b, ComplexApprox z, long cutoff) {
  return lattice_serial(k, n_level, a, b, z, cutoff, true);
}

NumericValue moebius_estar_numeric(long k, long n_level, long a, long b, ComplexApprox z, long terms) {
  require_upper_half_plane(z);
  std::map<std::tuple<long, long, long>, NumericValue> cache;
  auto series_value = [&](long level, long x, long y) {
    auto key = std::make_tuple(level, x, y);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    auto v = evaluate_raw(eisenstein_raw_numeric(k, level, x, y, 60), k, level, z);
    cache.emplace(key, v);
    return v;
  };
  const auto mu = moebius_table(terms);
  CLD acc = 0;
  double tail = 0, max_abs = 0;
  for (long delta = terms; delta >= 1; --delta) {
    if ((*mu)[delta] == 0) continue;
    const long g = gcd(delta, n_level);
    if (mod(a, g) != 0 || mod(b, g) != 0) continue;
    const long level = n_level / g;
    const long inv = level == 1 ? 0 : mod_inverse(mod(delta / g, level), level);
    const long ap = mod(a / g * inv, level), bp = mod(b / g * inv, level);
    auto v = series_value(level, ap, bp);
    const long double w = (*mu)[delta] * std::pow(static_cast<long double>(delta), -k);
    acc += w * CLD(v.value.real(), v.value.imag());
    tail += static_cast<double>(std::abs(w)) * v.tail_bound;
    max_abs = std::max(max_abs, std::abs(v.value) + v.tail_bound);
  }
  tail += max_abs * std::pow(static_cast<double>(terms), 1.0 - k) / (k - 1);
  return {{static_cast<double>(acc.real()), static_cast<double>(acc.imag())}, tail};
}

std::shared_ptr<const std::vector<signed char>> moebius_table(long n) {
  static std::mutex mu;
  static std::shared_ptr<const std::vector<signed char>> cached;
  std::lock_guard lock(mu);
  if (cached && static_cast<long>(cached->size()) > n) return cached;
  const long size = std::max<long>(n + 1, 2);
  std::vector<signed char> table(size, 1);
  std::vector<bool> composite(size, false);
  table[0] = 0;
  for (long q = 2; q < size; ++q) {
    if (composite[q]) continue;
    for (long j = q; j < size; j += q) {
      if (j > q) composite[j] = true;
      table[j] = static_cast<signed char>(-table[j]);
    }
    if (q <= (size - 1) / q)
      for (long j = q * q; j < size; j += q * q) table[j] = 0;
  }
  cached = std::make_shared<const std::vector<signed char>>(std::move(table));
  return cached;
}

SeriesValue hecke_ct_numeric(long k, long p, long m, long t, long terms) {
  const long n_level = ipow_small(p, static_cast<unsigned>(m));
  SeriesValue out;
  out.terms = terms;
  out.tail_bound = std::pow(static_cast<double>(terms), 1.0 - k) / (k - 1);
  if (mod(t, p) == 0) {
    out.value = 0;
    out.tail_bound = 0;
    return out;
  }
  const long start = mod_inverse(t, n_level);
  const auto mu = moebius_table(terms);
  long double acc = 0;
  long last = start;
  while (last + n_level <= terms) last += n_level;
  for (long n = last; n >= start; n -= n_level) {
    if ((*mu)[n] != 0) acc += (*mu)[n] * std::pow(static_cast<long double>(n), -k);
  }
  out.value = static_cast<double>(acc);
  out.tail_bound += rounding_allowance(out.value);
  return out;
}

SeriesValue hecke_ct_character_form(long k, long p, long m, long t, long terms, bool conjugated) {
  auto chars = enumerate_characters(p, m);
  CLD acc = 0;
  double tail = 0;
  for (const auto& chi : chars) {
    auto e = chi.exponent(t);
    if (!e) continue;
    auto l = l_complex(k, conjugated ? chi.conj() : chi, terms, CharacterConvention::Modulus);
    const double abs_l = std::abs(l.value);
    CLD inv = 1.0L / CLD(l.value.real(), l.value.imag());
    acc += std::polar(1.0L, kTwoPi * *e / chi.phi()) * inv;
    tail += l.tail_bound / (abs_l * (abs_l - l.tail_bound));
  }
  const long double phi = static_cast<long double>(chars.size());
  SeriesValue out;
  out.value = {static_cast<double>(acc.real() / phi), static_cast<double>(acc.imag() / phi)};
  out.tail_bound = tail / static_cast<double>(phi) + rounding_allowance(out.value);
  out.terms = terms;
  return out;
}

NumericExpansion one_var_estar_numeric(long k, long p, long m, long a, std::size_t precision,
                                       const OneVarOptions& opt) {
  const long n_level = ipow_small(p, static_cast<unsigned>(m));
  const auto roots = roots_table(n_level);
  std::vector<long double> ct(n_level, 0);
  double ct_tail = 0;
  for (long t = 1; t < n_level; ++t) {
    if (t % p == 0) continue;
    auto c = hecke_ct_numeric(k, p, m, t, opt.ct_terms);
    ct[t] = c.value.real();
    ct_tail += c.tail_bound;
  }
  // N^(k-1) Gamma(k) times the raw-series scale (-2 pi i)^k / (N^k Gamma(k)).
  const CLD scale = minus_two_pi_i_pow(k) / static_cast<long double>(n_level);
  const long double sign = (k % 2 == 0) ? 1 : -1;
  const long double prefactor = std::pow(static_cast<long double>(n_level), k - 1) * factorial(k - 1);

  NumericExpansion out;
  out.series = QExpansion<ComplexApprox>(precision);
  if (precision == 0) return out;
  // Constant term: only x = 0 survives delta(t x / N).
  {
    CLD acc = 0;
    double tail = 0;
    for (long b = 0; b < n_level; ++b)
      for (long t = 1; t < n_level; ++t) {
        if (t % p == 0) continue;
        auto plus = partial_zeta_numeric(k, t * b, n_level, opt.zeta_terms);
        auto minus = partial_zeta_numeric(k, -t * b, n_level, opt.zeta_terms);
        acc += ct[t] * (static_cast<long double>(plus.value.real()) + sign * minus.value.real());
        tail += std::abs(static_cast<double>(ct[t])) * (plus.tail_bound + minus.tail_bound);
      }
    CLD v = prefactor * acc;
    out.series[0] = {static_cast<double>(v.real()), static_cast<double>(v.imag())};
    out.constant_tail = static_cast<double>(prefactor) * tail;
  }
  for (std::size_t n = 1; n < precision; ++n) {
    CLD acc = 0;
    for (long r : divisors(static_cast<long>(n))) {
      const long c = static_cast<long>(n) / r;
      const long double w = std::pow(static_cast<long double>(r), k - 1);
      for (long x = 0; x < n_level; ++x) {
        const CLD ex = roots[mod(-a * x, n_level)];
        for (long t = 1; t < n_level; ++t) {
          if (t % p == 0) continue;
          CLD inner = 0;
          for (long b = 0; b < n_level; ++b) {
            if (mod(c, n_level) == mod(t * x, n_level)) inner += w * roots[mod(r * t * b, n_level)];
            if (mod(-c, n_level) == mod(t * x, n_level)) inner += sign * w * roots[mod(-r * t * b, n_level)];
          }
          acc += ex * ct[t] * inner;
        }
      }
    }
    CLD v = scale * acc;
    out.series[n] = {static_cast<double>(v.real()), static_cast<double>(v.imag())};
  }
  out.constant_tail += ct_tail;
  return out;
}

QExpansion<ComplexApprox> eab_transform(long k, long n_level, long a, long b, std::size_t precision, bool swapped,
                                        long zeta_terms) {
  const auto roots = roots_table(n_level);
  const CLD rescale = std::pow(static_cast<long double>(n_level), k - 1) * factorial(k - 1) / minus_two_pi_i_pow(k);
  std::vector<CLD> acc(precision, 0);
  for (long x = 0; x < n_level; ++x) {
    auto e = swapped ? eisenstein_raw_numeric(k, n_level, b, x, precision, zeta_terms)
                     : eisenstein_raw_numeric(k, n_level, x, b, precision, zeta_terms);
    const CLD w = roots[mod(-a * x, n_level)];
    for (std::size_t n = 0; n < precision; ++n) acc[n] += w * CLD(e.series[n].real(), e.series[n].imag());
  }
  QExpansion<ComplexApprox> out(precision);
  for (std::size_t n = 0; n < precision; ++n) {
    CLD v = rescale * acc[n];
    out[n] = {static_cast<double>(v.real()), static_cast<double>(v.imag())};
  }
  return out;
}

}  // namespace eismeas
