#include "eismeas/bernoulli.hpp"

#include <cmath>

namespace eismeas {

namespace {

Integer binomial(long n, long k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

}  // namespace

Rational bernoulli_number(long k) {
  if (k < 0) throw InvalidArgument("bernoulli_number: negative index");
  static std::mutex mu;
  static std::vector<Rational> table{Rational(1)};
  std::lock_guard lock(mu);
  while (static_cast<long>(table.size()) <= k) {
    const long n = static_cast<long>(table.size());
    Rational acc = 0;
    for (long j = 0; j < n; ++j) acc += Rational(binomial(n + 1, j)) * table[j];
    Rational b = -acc / (n + 1);
    b.canonicalize();
    table.push_back(b);
  }
  return table[k];
}

Rational bernoulli_poly(long k, const Rational& x) {
  Rational acc = 0;
  for (long j = 0; j <= k; ++j) {
    Rational b = bernoulli_number(j);
    if (b == 0) continue;
    acc += Rational(binomial(k, j)) * b * rpow(x, k - j);
  }
  return acc;
}

Rational zeta_neg(long k) {
  if (k < 2) throw InvalidArgument("zeta_neg: k must be >= 2");
  Rational out = -bernoulli_number(k) / k;
  out.canonicalize();
  return out;
}

Rational partial_zeta_neg(long k, long a, long n) {
  if (k < 2) throw InvalidArgument("partial_zeta_neg: k must be >= 2");
  if (n < 1 || a < 1 || a > n) throw InvalidArgument("partial_zeta_neg: need 1 <= a <= N");
  Rational out = -Rational(ipow(n, k - 1)) * bernoulli_poly(k, Rational(a, n)) / k;
  out.canonicalize();
  return out;
}

CyclotomicNumber generalized_bernoulli(long k, const DirichletCharacter& chi) {
  const long c = chi.conductor();
  if (c == 1) return CyclotomicNumber(Rational(bernoulli_number(k) * (k == 1 ? -1 : 1)));
  std::vector<Rational> weights(chi.phi(), 0);
  for (long a = 1; a <= c; ++a) {
    auto e = chi.primitive_exponent(a);
    if (!e) continue;
    Rational x(a, c);
    x.canonicalize();
    weights[*e] += bernoulli_poly(k, x);
  }
  auto out = CyclotomicNumber::from_exponent_weights(static_cast<unsigned>(chi.phi()), weights);
  return out * Rational(ipow(c, k - 1));
}

CyclotomicNumber l_neg(long k, const DirichletCharacter& chi) {
  if (k < 2) throw InvalidArgument("l_neg: k must be >= 2");
  static SpecialValueCache<std::tuple<long, long, long, long>, CyclotomicNumber> cache;
  return cache.get_or_compute(std::make_tuple(chi.p(), chi.m(), chi.index(), k), [&] {
    if (chi.conductor() == 1) return CyclotomicNumber(zeta_neg(k));
    return generalized_bernoulli(k, chi) * Rational(-1, k);
  });
}

SeriesValue l_complex(long k, const DirichletCharacter& chi, long terms, CharacterConvention conv) {
  if (k < 2) throw InvalidArgument("l_complex: k must be >= 2");
  const long n = chi.modulus();
  std::vector<std::complex<long double>> table(n, 0);
  const long double two_pi = 2.0L * std::acos(-1.0L);
  for (long r = 0; r < n; ++r) {
    auto e = conv == CharacterConvention::Primitive ? chi.primitive_exponent(r) : chi.exponent(r);
    if (!e) continue;
    long double ang = two_pi * *e / chi.phi();
    table[r] = {std::cos(ang), std::sin(ang)};
  }
  std::complex<long double> acc = 0;
  for (long j = terms; j >= 1; --j) acc += table[j % n] * std::pow(static_cast<long double>(j), -k);
  SeriesValue out;
  out.value = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
  out.tail_bound = std::pow(static_cast<double>(terms), 1.0 - k) / (k - 1) + rounding_allowance(out.value);
  out.terms = terms;
  return out;
}

SeriesValue zeta_complex(long k, long terms) {
  long double acc = 0;
  for (long j = terms; j >= 1; --j) acc += std::pow(static_cast<long double>(j), -k);
  const ComplexApprox v(static_cast<double>(acc), 0.0);
  return {v, std::pow(static_cast<double>(terms), 1.0 - k) / (k - 1) + rounding_allowance(v), terms};
}

SeriesValue partial_zeta_numeric(long k, long a, long n, long terms) {
  long first = mod(a, n);
  if (first == 0) first = n;
  long double acc = 0;
  for (long j = terms - 1; j >= 0; --j) acc += std::pow(static_cast<long double>(first + j * n), -k);
  double next = static_cast<double>(first + terms * n);
  SeriesValue out;
  out.value = {static_cast<double>(acc), 0.0};
  out.tail_bound = std::pow(next, -k) + std::pow(next, 1.0 - k) / (n * (k - 1.0)) + rounding_allowance(out.value);
  out.terms = terms;
  return out;
}

bool is_regular_prime(long p) {
  if (p < 3 || !is_prime(p)) throw InvalidArgument("is_regular_prime: p must be an odd prime");
  for (long k = 2; k <= p - 3; k += 2) {
    Rational b = bernoulli_number(k);
    if (mpz_divisible_ui_p(b.get_num_mpz_t(), static_cast<unsigned long>(p))) return false;
  }
  return true;
}

}  // namespace eismeas
