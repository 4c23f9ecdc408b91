#include "doctest.h"
#include "eismeas/qexpansion.hpp"

using namespace eismeas;

namespace {

USpan<Rational> stabilization_span(long k, long p, long levels, std::size_t precision) {
  const auto e = eisenstein_level_one(k, precision);
  std::vector<QExpansion<Rational>> basis;
  std::size_t d = 1;
  for (long i = 0; i <= levels; ++i, d *= static_cast<std::size_t>(p)) basis.push_back(scale_argument(e, d));
  return make_uspan<Rational>(basis, [&](const QExpansion<Rational>& f) { return u_operator(f, p); });
}

std::vector<Rational> coords(const USpan<Rational>& span, const QExpansion<Rational>& f) {
  auto x = coordinates_in_span(span.basis, f, span.shared_precision);
  REQUIRE(x.has_value());
  return *x;
}

}  // namespace

TEST_CASE("projector algebra on the stabilization pair") {
  const long p = 5;
  for (long k : {4L, 6L}) {
    const auto span = stabilization_span(k, p, 1, 250);
    const auto& u = span.u_matrix;
    const Rational big = Rational(ipow(p, k - 1));

    const auto roots = rational_roots(characteristic_polynomial(u));
    CHECK(roots == std::vector<std::pair<Rational, int>>{{1, 1}, {big, 1}});

    const auto pi1 = projector_alpha(span, Rational(1));
    const auto pib = projector_alpha(span, big);
    CHECK(pi1 * pi1 == pi1);
    CHECK(u * pi1 == pi1 * u);
    CHECK(pi1 + pib == Matrix<Rational>::identity(2));
    CHECK((u - Matrix<Rational>::identity(2)) * pi1 == Matrix<Rational>(2, 2));
    CHECK(projector_alpha(span, Rational(3)).is_zero_matrix());

    // pi_1 E_k is the p-stabilization E_k(q) - p^(k-1) E_k(q^p).
    const auto e = span.basis[0];
    const auto stab = project(span, e, Rational(1));
    const auto expected = (Rational(1) / (1 - big)) * (e - big * span.basis[1]);
    CHECK(stab == expected.truncated(span.shared_precision));
    CHECK(u_operator(stab, p).truncated(stab.precision() / p) == stab.truncated(stab.precision() / p));
  }
}

TEST_CASE("projectors at level p^m glue along U^m") {
  // pi_{alpha,0}(U^m f) = (U^alpha)^m pi_{alpha,m}(f) for f in the span of E_k(q^(p^i)), i <= m.
  const long p = 5;
  for (long k : {4L, 6L})
    for (long m : {1L, 2L}) {
      const auto big_span = stabilization_span(k, p, m, 3000);
      const auto small_span = stabilization_span(k, p, 1, 3000);
      const auto um = matrix_power(big_span.u_matrix, static_cast<unsigned long>(m));
      for (const Rational& alpha : {Rational(1), Rational(ipow(p, k - 1))}) {
        const auto pim = projector_alpha(big_span, alpha);
        const auto pi0 = projector_alpha(small_span, alpha);
        // U^m maps the level-p^m span into the first two basis vectors.
        for (std::size_t j = 0; j < big_span.basis.size(); ++j) {
          std::vector<Rational> f(big_span.basis.size(), Rational(0));
          f[j] = 1;
          const auto umf = um.apply(f);
          for (std::size_t i = 2; i < umf.size(); ++i) REQUIRE(umf[i] == 0);
          const auto left = pi0.apply({umf[0], umf[1]});
          const auto right = um.apply(pim.apply(f));
          CHECK(left[0] == right[0]);
          CHECK(left[1] == right[1]);
          for (std::size_t i = 2; i < right.size(); ++i) CHECK(right[i] == 0);
        }
      }
    }
}

TEST_CASE("coordinates in the span") {
  const auto span = stabilization_span(4, 5, 1, 250);
  const auto c = coords(span, span.basis[0] - span.basis[1]);
  CHECK(c == std::vector<Rational>{1, -1});
  auto off = span.basis[0];
  off[1] += 1;
  CHECK_FALSE(coordinates_in_span(span.basis, off, span.shared_precision).has_value());
}
