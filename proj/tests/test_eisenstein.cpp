#include <cmath>

#include "doctest.h"
#include "eismeas/eisenstein.hpp"

using namespace eismeas;

namespace {

const ComplexApprox kZ(0.05, 0.9);

// Oracle: direct enumeration of d d' = n over nonzero integers of both signs.
Rational divisor_oracle(long k, long level, long a, long b, long n) {
  Rational s;
  for (long d = -n; d <= n; ++d) {
    if (d == 0 || n % d != 0) continue;
    const long dp = n / d;
    if (mod(d - a, level) != 0 || mod(dp - b, level) != 0) continue;
    const Integer term = ipow(std::abs(d), static_cast<unsigned long>(k - 1));
    // sgn(d) d^(k-1) = (sgn d)^k |d|^(k-1)
    s += d > 0 || k % 2 == 0 ? Rational(term) : Rational(-term);
  }
  return s;
}

}  // namespace

TEST_CASE("normalized coefficients") {
  const auto f = eisenstein_normalized(4, 3, 1, 1, 40);
  CHECK(f[0] == 0);
  CHECK(f[1] == 1);
  CHECK(f[4] == 73);
  CHECK(eisenstein_normalized(4, 3, 1, 0, 5)[0] == partial_zeta_neg(4, 1, 3));
  for (long a = 0; a < 5; ++a)
    for (long b = 0; b < 5; ++b) {
      const auto g = eisenstein_normalized(4, 5, a, b, 30);
      for (long n = 1; n < 30; ++n) CHECK(g[n] == divisor_oracle(4, 5, a, b, n));
      if (b != 0) CHECK(g[0] == 0);
    }
}

TEST_CASE("distribution refinement") {
  for (long p : {3L, 5L})
    for (long a = 0; a < p; ++a)
      for (long b = 0; b < p; ++b) CHECK(distribution_refinement_check(4, p, 1, a, b, 60).equal);
}

TEST_CASE("lattice sums against the Fourier expansion") {
  const auto lattice = lattice_sum(4, 3, 1, 1, kZ, 4000);
  const auto series = evaluate_raw(eisenstein_raw_numeric(4, 3, 1, 1, 40), 4, 3, kZ);
  CHECK(std::abs(lattice.value - series.value) <= 1e-6);

  const auto at_i = lattice_sum(4, 1, 0, 0, ComplexApprox(0, 1), 400);
  const auto at_i_series = evaluate_raw(eisenstein_raw_numeric(4, 1, 0, 0, 40), 4, 1, ComplexApprox(0, 1));
  CHECK(std::abs(at_i.value - at_i_series.value) <= 1e-5);
  const auto at_i_fine = lattice_sum(4, 1, 0, 0, ComplexApprox(0, 1), 800);
  CHECK(std::abs(at_i.value - at_i_fine.value) <= at_i.tail_estimate);
}

TEST_CASE("coprime sums and the Moebius identity") {
  for (auto [a, b] : std::vector<std::pair<long, long>>{{1, 0}, {0, 1}, {1, 1}}) {
    const auto coprime = lattice_sum_coprime(4, 3, a, b, kZ, 4000);
    const auto moeb = moebius_estar_numeric(4, 3, a, b, kZ, 400);
    CHECK(std::abs(coprime.value - moeb.value) <= 1e-5);
  }
  // Level one: the coprime sum is the full sum divided by zeta(k).
  const auto full = lattice_sum(4, 1, 0, 0, kZ, 2000);
  const auto cop = lattice_sum_coprime(4, 1, 0, 0, kZ, 2000);
  CHECK(std::abs(cop.value * (std::pow(M_PI, 4) / 90) - full.value) <= 1e-4);
  CHECK(std::abs(lattice_sum_coprime(4, 4, 2, 2, kZ, 500).value) < 1e-12);
}

TEST_CASE("Hecke coefficients c_t") {
  const long p = 5, k = 4, terms = 2000000;
  ComplexApprox total = 0;
  for (long t = 0; t < p; ++t) {
    const auto direct = hecke_ct_numeric(k, p, 1, t, terms);
    const auto chars = hecke_ct_character_form(k, p, 1, t, terms);
    CHECK(std::abs(direct.value - chars.value) <= direct.tail_bound + chars.tail_bound);
    if (t == 0) CHECK(std::abs(direct.value) == 0);
    total += direct.value;
  }
  const double expected = 1 / ((std::pow(M_PI, 4) / 90) * (1 - std::pow(5.0, -4)));
  CHECK(std::abs(total - expected) < 1e-9);
  // The conjugated form is c at the inverse class.
  const auto c2 = hecke_ct_numeric(k, p, 1, 2, terms);
  const auto c3_conj = hecke_ct_character_form(k, p, 1, 3, terms, true);
  CHECK(std::abs(c2.value - c3_conj.value) <= c2.tail_bound + c3_conj.tail_bound);
}

TEST_CASE("Fourier inversion in the first index") {
  for (auto [a, b] : std::vector<std::pair<long, long>>{{1, 1}, {1, 2}, {0, 1}, {2, 0}}) {
    const auto swapped = eab_transform(4, 3, a, b, 20, true);
    const auto normalized = eisenstein_normalized(4, 3, a, b, 20);
    for (long n = 0; n < 20; ++n) CHECK(std::abs(swapped[n] - normalized[n].get_d()) < 1e-8);
  }
  // The literal index order does not reproduce the normalized coefficients.
  const auto literal = eab_transform(4, 3, 1, 1, 20, false);
  const auto normalized = eisenstein_normalized(4, 3, 1, 1, 20);
  double worst = 0;
  for (long n = 0; n < 20; ++n) worst = std::max(worst, std::abs(literal[n] - normalized[n].get_d()));
  CHECK(worst > 1);
}

TEST_CASE("parallel lattice kernels match the serial references") {
  const auto par = lattice_sum(6, 5, 2, 3, kZ, 600);
  const auto ser = lattice_sum_reference(6, 5, 2, 3, kZ, 600);
  CHECK(std::abs(par.value - ser.value) < 1e-12);
  const auto cpar = lattice_sum_coprime(4, 5, 1, 0, kZ, 600);
  const auto cser = lattice_sum_coprime_reference(4, 5, 1, 0, kZ, 600);
  CHECK(std::abs(cpar.value - cser.value) < 1e-12);
}
