#include "doctest.h"
#include "eismeas/qexpansion.hpp"

using namespace eismeas;

namespace {

QExpansion<Rational> series(std::vector<long> c) {
  QExpansion<Rational> f(c.size());
  for (std::size_t n = 0; n < c.size(); ++n) f[n] = c[n];
  return f;
}

Rational sigma(long k, long n) {
  Rational s;
  for (long d : divisors(n)) s += Rational(ipow(d, k));
  return s;
}

}  // namespace

TEST_CASE("level-one Eisenstein series") {
  const auto e4 = eisenstein_level_one(4, 30);
  CHECK(e4[0] == Rational(1, 240));
  const std::vector<long> sigma3 = {1, 9, 28, 73, 126};
  for (std::size_t n = 1; n <= 5; ++n) CHECK(e4[n] == sigma3[n - 1]);
  for (long n = 1; n < 30; ++n) CHECK(e4[n] == sigma(3, n));
  const auto e6 = eisenstein_level_one(6, 10);
  CHECK(e6[0] == Rational(-1, 504));
}

TEST_CASE("U operator") {
  CHECK(u_operator(series({1, 1, 2, 3, 4}), 2) == series({1, 2, 4}));
  QExpansion<Rational> c(10);
  c[0] = 7;
  CHECK(u_operator(c, 5)[0] == 7);
  CHECK(u_operator(c, 5)[1] == 0);
  const auto e = eisenstein_level_one(4, 100);
  CHECK(u_operator(u_operator(e, 3), 3) == u_operator(e, 9));
  CHECK_THROWS_AS(u_operator(series({1, 2}), 3), InvalidArgument);
}

TEST_CASE("partial forms") {
  CHECK(partial_form(series({1, 1, 1}), 1, 2) == series({0, 1, 0}));
  const auto f = eisenstein_level_one(4, 60);
  auto total = QExpansion<Rational>(60);
  for (long a = 0; a < 5; ++a) total = total + partial_form(f, a, 5);
  CHECK(total == f);
  for (long a = 0; a < 5; ++a) {
    auto refined = QExpansion<Rational>(60);
    for (long j = 0; j < 5; ++j) refined = refined + partial_form(f, a + 5 * j, 25);
    CHECK(refined == partial_form(f, a, 5));
  }
}

TEST_CASE("twists") {
  const auto f = eisenstein_level_one(4, 60);
  const auto chars = enumerate_characters(5, 1);
  const auto principal = twist(f, chars[0]);
  for (std::size_t n = 0; n < 60; ++n)
    CHECK(principal[n] == (n % 5 == 0 ? CyclotomicNumber() : CyclotomicNumber(f[n])));

  for (const auto& chi : chars) {
    const auto back = twist(twist(f, chi), chi.conj());
    CHECK(back == principal);
    QExpansion<CyclotomicNumber> sum(60);
    for (long a = 1; a < 5; ++a) {
      const auto pf = partial_form(f, a, 5);
      for (std::size_t n = 0; n < 60; ++n) sum[n] += chi.value(a) * CyclotomicNumber(pf[n]);
    }
    CHECK(sum == twist(f, chi));
  }
}

TEST_CASE("U-span of the p-stabilization pair") {
  for (long k : {4L, 6L}) {
    const long p = 5;
    const auto e = eisenstein_level_one(k, 200);
    const auto span = make_uspan<Rational>({e, scale_argument(e, p)},
                                           [&](const QExpansion<Rational>& f) { return u_operator(f, p); });
    const Rational big = Rational(ipow(p, k - 1));
    Matrix<Rational> expected(2, 2);
    expected(0, 0) = 1 + big;
    expected(0, 1) = 1;
    expected(1, 0) = -big;
    expected(1, 1) = 0;
    CHECK(span.u_matrix == expected);
    CHECK(span.shared_precision == 40);
  }
  const auto e = eisenstein_level_one(4, 50);
  CHECK_THROWS_AS(make_uspan<Rational>({e}, [](const QExpansion<Rational>& f) { return u_operator(f, 5); }),
                  ArithmeticError);
}
