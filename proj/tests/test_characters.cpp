#include <cmath>
#include <map>

#include "doctest.h"
#include "eismeas/characters.hpp"

using namespace eismeas;

TEST_CASE("enumeration sizes and generators") {
  CHECK(enumerate_characters(5, 1).size() == 4);
  CHECK(enumerate_characters(5, 2).size() == 20);
  CHECK(smallest_primitive_root(5, 1) == 2);
  CHECK(smallest_primitive_root(7, 1) == 3);
  CHECK(smallest_primitive_root(5, 2) == 2);
  CHECK_THROWS_AS(enumerate_characters(2, 1), InvalidArgument);
  CHECK_THROWS_AS(enumerate_characters(9, 1), InvalidArgument);
  CHECK_THROWS_AS(enumerate_characters(5, 0), InvalidArgument);
}

TEST_CASE("conductor distribution") {
  auto count = [](long p, long m) {
    std::map<long, int> by;
    for (const auto& chi : enumerate_characters(p, m)) ++by[chi.conductor()];
    return by;
  };
  CHECK(count(5, 1) == std::map<long, int>{{1, 1}, {5, 3}});
  CHECK(count(5, 2) == std::map<long, int>{{1, 1}, {5, 3}, {25, 16}});
}

TEST_CASE("values and parity") {
  const auto chars = enumerate_characters(5, 1);
  CHECK(chars[0].value(7) == CyclotomicNumber(1));
  for (const auto& chi : chars) CHECK(chi.value(10).is_zero());
  const auto& quad = chars[2];
  CHECK(quad.value(2) == CyclotomicNumber(-1));
  CHECK(quad.conductor() == 5);
  CHECK(quad.parity() == 0);
  CHECK(chars[1].parity() == 1);
  CHECK(chars[1].value(-1) == CyclotomicNumber(-1));
  CHECK(chars[1].conj().index() == 3);

  // The principal character mod 25 is 1 on 5 | n only through its primitive restriction.
  const auto p25 = enumerate_characters(5, 2)[0];
  CHECK(p25.conductor() == 1);
  CHECK(p25.value(5).is_zero());
  CHECK(p25.primitive_value(5) == CyclotomicNumber(1));
}

TEST_CASE("multiplicativity and orthogonality") {
  for (const auto& chi : enumerate_characters(5, 2)) {
    const long n = chi.modulus();
    for (long a = 1; a < n; a += 3)
      for (long b = 2; b < n; b += 7) CHECK(chi.value(a * b) == chi.value(a) * chi.value(b));
    CyclotomicNumber s;
    for (long a = 0; a < n; ++a) s += chi.value(a);
    CHECK(s == CyclotomicNumber(chi.is_principal() ? chi.phi() : 0));
  }
  for (long a = 0; a < 25; ++a) {
    CyclotomicNumber s;
    for (const auto& chi : enumerate_characters(5, 2)) s += chi.value(a);
    CHECK(s == CyclotomicNumber(a == 1 ? 20 : 0));
  }
}

TEST_CASE("primitive restriction agrees on units") {
  for (const auto& chi : enumerate_characters(5, 2))
    for (long a = 1; a < 25; ++a)
      if (a % 5 != 0) CHECK(chi.value(a) == chi.primitive_value(a));
}

TEST_CASE("gauss sums") {
  CHECK(gauss_sum(enumerate_characters(5, 1)[0]) == CyclotomicNumber(1));
  const auto quad = enumerate_characters(5, 1)[2];
  CHECK(gauss_sum(quad) * gauss_sum(quad) == CyclotomicNumber(5));

  for (long m : {1L, 2L})
    for (const auto& chi : enumerate_characters(5, m)) {
      if (chi.is_principal()) continue;
      const auto prod = gauss_sum(chi) * gauss_sum(chi.conj());
      CHECK(prod == chi.value(-1) * CyclotomicNumber(chi.conductor()));
    }

  const auto g7 = embed_complex(gauss_sum(enumerate_characters(7, 1)[1]));
  CHECK(g7.real() == doctest::Approx(-2.440133358345537).epsilon(1e-12));
  CHECK(g7.imag() == doctest::Approx(1.0226187918717948).epsilon(1e-12));
  CHECK(std::norm(g7) == doctest::Approx(7.0));
}
