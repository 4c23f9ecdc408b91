#include "eismeas/qexpansion.hpp"

#include "eismeas/bernoulli.hpp"

namespace eismeas {

QExpansion<Rational> eisenstein_level_one(long k, std::size_t precision) {
  QExpansion<Rational> out(precision);
  if (precision == 0) return out;
  out[0] = zeta_neg(k) / 2;
  for (std::size_t n = 1; n < precision; ++n) {
    Integer s = 0;
    for (long d : divisors(static_cast<long>(n))) s += ipow(d, k - 1);
    out[n] = s;
  }
  return out;
}

namespace {

std::vector<long> positive_divisors(const Integer& n) {
  if (!n.fits_slong_p()) throw ArithmeticError("rational_roots: coefficient too large");
  return divisors(std::abs(n.get_si()));
}

}  // namespace

std::vector<std::pair<Rational, int>> rational_roots(const Polynomial<Rational>& f) {
  std::vector<std::pair<Rational, int>> out;
  if (f.degree() < 1) return out;
  Polynomial<Rational> g = f;
  // Roots at zero first.
  int zero_mult = 0;
  while (g.degree() >= 1 && g.coeff(0) == 0) {
    g = g.divmod(Polynomial<Rational>::monomial(1)).first;
    ++zero_mult;
  }
  if (zero_mult) out.emplace_back(Rational(0), zero_mult);
  Integer den = 1;
  for (const auto& c : g.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  const Integer lead = Integer(g.leading() * den), constant = Integer(g.coeff(0) * den);
  for (long num : positive_divisors(constant)) {
    for (long d : positive_divisors(lead)) {
      for (int s : {1, -1}) {
        Rational r(s * num, d);
        r.canonicalize();
        if (r.get_den() != d && d != 1) continue;  // visit each reduced fraction once
        int mult = 0;
        auto lin = Polynomial<Rational>::linear_root(r);
        while (g.degree() >= 1) {
          auto [q, rem] = g.divmod(lin);
          if (!rem.is_zero_poly()) break;
          g = q;
          ++mult;
        }
        if (mult) out.emplace_back(r, mult);
      }
    }
  }
  return out;
}

}  // namespace eismeas
