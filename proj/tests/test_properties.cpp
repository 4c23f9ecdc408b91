#include <random>

#include "doctest.h"
#include "eismeas/measure.hpp"

using namespace eismeas;

namespace {

std::mt19937_64 rng(20260917);

long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

CyclotomicNumber random_element(unsigned order) {
  const auto field = CyclotomicField::get(order);
  std::vector<Rational> c(field->degree);
  for (auto& x : c) {
    x = Rational(uniform(-20, 20), uniform(1, 9));
    x.canonicalize();
  }
  return CyclotomicNumber(order, c);
}

}  // namespace

TEST_CASE("field axioms on random elements") {
  for (int trial = 0; trial < 60; ++trial) {
    const unsigned order = static_cast<unsigned>(std::vector<long>{3, 4, 5, 8, 12, 20, 25}[uniform(0, 6)]);
    const auto a = random_element(order), b = random_element(order), c = random_element(order);
    CHECK(a * b == b * a);
    CHECK((a + b) * c == a * c + b * c);
    CHECK((a - a).is_zero());
    if (!a.is_zero()) CHECK(a * a.inverse() == CyclotomicNumber(1));
    CHECK((a * b).conj() == a.conj() * b.conj());
    const auto ea = embed_complex(a), eb = embed_complex(b);
    CHECK(std::abs(embed_complex(a * b) - ea * eb) < 1e-9 * (1 + std::abs(ea * eb)));
    CHECK(std::abs(embed_complex(a.conj()) - std::conj(ea)) < 1e-9 * (1 + std::abs(ea)));
  }
}

TEST_CASE("partial zeta scaling and additivity") {
  for (int trial = 0; trial < 40; ++trial) {
    const long k = uniform(2, 8), n = uniform(1, 12), a = uniform(1, n), d = uniform(1, 5);
    // sum over m = d a mod d n of m^-s is d^-s zeta(s; a, n).
    CHECK(partial_zeta_neg(k, d * a, d * n) == Rational(ipow(d, k - 1)) * partial_zeta_neg(k, a, n));
    Rational s;
    for (long j = 0; j < d; ++j) s += partial_zeta_neg(k, a + j * n, d * n);
    CHECK(s == partial_zeta_neg(k, a, n));
  }
}

TEST_CASE("Mazur interpolation on random parameters") {
  for (int trial = 0; trial < 25; ++trial) {
    const long p = std::vector<long>{3, 5, 7, 11}[uniform(0, 3)];
    long c = uniform(2, 30);
    while (gcd(c, 2 * p) != 1) ++c;
    const long m = uniform(1, p > 5 ? 2 : 3), k = uniform(1, 9);
    CHECK(mazur_interpolation_check(p, m, c, k).holds);
  }
}

TEST_CASE("character transform of a measure: inversion and conjugate symmetry") {
  for (int trial = 0; trial < 4; ++trial) {
    const long p = uniform(0, 1) ? 5 : 7, m = p == 5 ? uniform(1, 2) : 1;
    const auto t = mazur_measure(p, m, 3);
    const auto chars = enumerate_characters(p, m);
    std::map<long, CyclotomicNumber> hat;
    for (const auto& chi : chars) {
      CyclotomicNumber s;
      for (const auto& [a, v] : t.values) s += chi.value(a) * CyclotomicNumber(v);
      hat[chi.index()] = s;
    }
    for (const auto& chi : chars) CHECK(hat.at(chi.conj().index()) == hat.at(chi.index()).conj());
    const long a = std::next(t.values.begin(), uniform(0, static_cast<long>(t.values.size()) - 1))->first;
    CyclotomicNumber back;
    for (const auto& chi : chars) back += chi.conj().value(a) * hat.at(chi.index());
    CHECK(back == CyclotomicNumber(t.values.at(a) * chars.front().phi()));
  }
}

TEST_CASE("mu* integration is linear in the table") {
  const auto t = mu_star_table(5, 1, 4, 3);
  DistributionTable<CyclotomicNumber> doubled = t;
  for (auto& [a, v] : doubled.values) v = v * CyclotomicNumber(2);
  for (const auto& chi : enumerate_characters(5, 1)) {
    CHECK(mu_star_integrate(doubled, chi) == CyclotomicNumber(2) * mu_star_integrate(t, chi));
    auto sum = t;
    for (auto& [a, v] : sum.values) v += doubled.values.at(a);
    CHECK(mu_star_integrate(sum, chi) == CyclotomicNumber(3) * mu_star_integrate(t, chi));
  }
  CHECK(mu_star_integrate(doubled, MonomialMarker{4}) == CyclotomicNumber(2) * mu_star_integrate(t, MonomialMarker{4}));
}
