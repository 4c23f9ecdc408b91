#include "eismeas/measure.hpp"

namespace eismeas {

namespace {

Rational gamma_integer(long k) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(k - 1));
  return Rational(out);
}

// i^k for even k.
long i_power_even(long k) { return (k / 2) % 2 == 0 ? 1 : -1; }

Rational euler_principal(long p, long k) {
  const Integer pk = ipow(p, k);
  return Rational(pk, pk - 1);
}

// Gamma(k) 4 (i p)^k for even k.
Rational chain_prefactor(long p, long k) {
  return gamma_integer(k) * 4 * i_power_even(k) * Rational(ipow(p, k));
}

// The literal triple sum with t = t0 + C t', primitive chi(t0), summed over units a (m = 1).
CyclotomicNumber split_sum(long p, long k, long mprime) {
  const long n = p, phi = p - 1, order = lcm(n, phi);
  CyclotomicNumber total;
  for (const auto& chi : enumerate_characters(p, 1)) {
    const auto w = character_weight(chi, k, Convention::AsPrinted);
    if (w.is_zero()) continue;
    const long c = chi.conductor();
    RootSum acc(static_cast<unsigned>(order));
    for (long md = 0; md <= mprime; ++md) {
      const long rest = mod_pow(p, static_cast<unsigned long>(mprime - md), n);
      const long pd = mod_pow(p, static_cast<unsigned long>(md), n);
      const Integer weight = ipow(p, md * (k - 1));
      for (long s : {1L, -1L}) {
        const Integer dw = s < 0 && k % 2 ? Integer(-weight) : weight;
        for (long t0 = 0; t0 < c; ++t0) {
          auto e = chi.primitive_exponent(t0);
          if (!e) continue;
          for (long tp = 0; tp < n / c; ++tp) {
            const long t = t0 + c * tp;
            for (long a = 1; a < n; ++a)
              for (long x = 0; x < n; ++x) {
                if (mod(rest - s * x * t, n) != 0) continue;
                for (long b = 0; b < n; ++b)
                  acc.add(*e * (order / phi) + mod(s * pd * b * t - a * x, n) * (order / n), dw);
              }
          }
        }
      }
    }
    total += w * acc.value();
  }
  return total * Rational(1, n * phi);
}

// sum_b sum_chi conj(chi)(b) F(chi), with F(chi) = weight * scale(chi).
template <class F>
CyclotomicNumber character_b_sum(long p, F&& per_character) {
  CyclotomicNumber total;
  for (const auto& chi : enumerate_characters(p, 1)) {
    const auto f = per_character(chi);
    if (f.is_zero()) continue;
    CyclotomicNumber bsum;
    for (long b = 1; b < p; ++b) bsum += chi.conj().value(b);
    total += bsum * f;
  }
  return total;
}

}  // namespace

CyclotomicNumber formal_moebius_value(long p, long k, const std::vector<CyclotomicNumber>& f) {
  if (static_cast<long>(f.size()) != p) throw InvalidArgument("formal_moebius_value: f must have p entries");
  const Rational zinv = 1 / zeta_neg(k);
  const Rational euler = 1 / Rational(1 - ipow(p, k - 1));
  CyclotomicNumber out = f[0] * Rational(-ipow(p, k - 1)) * zinv * euler;
  for (const auto& chi : enumerate_characters(p, 1)) {
    CyclotomicNumber coeff;
    for (long u = 1; u < p; ++u) coeff += f[u] * chi.conj().value(u);
    coeff *= Rational(1, p - 1);
    if (coeff.is_zero()) continue;
    if (chi.is_principal()) {
      out += coeff * zinv * euler;
      continue;
    }
    const auto l = l_neg(k, chi);
    if (l.is_zero()) throw ArithmeticError("formal_moebius_value: component on a character with L(1-k, chi) = 0");
    out += coeff * l.inverse();
  }
  return out;
}

std::vector<ChainValue> intmuk_chain_values(long p, long k, long mprime) {
  require_mu_star_inputs(p, 1, k, mprime);
  const auto chars = enumerate_characters(p, 1);
  const Rational gamma = gamma_integer(k);
  const Rational zinv = 1 / zeta_neg(k);
  const Rational euler = 1 / Rational(1 - ipow(p, k - 1));
  std::vector<ChainValue> out;

  CyclotomicNumber v0;
  for (long a = 1; a < p; ++a) v0 += fourier_coefficient_ppower(p, 1, k, a, mprime, Convention::AsPrinted);
  out.push_back({"Intmuk", v0});
  out.push_back({"Intmuk (t0, t' split)", split_sum(p, k, mprime)});

  out.push_back({"Intmuk'", character_b_sum(p, [&](const DirichletCharacter& chi) {
                   const long q = p / chi.conductor();
                   return character_weight(chi, k, Convention::AsPrinted) * gauss_sum(chi) * Rational(q * q);
                 })});
  out.push_back({"Intmuk' (substituted)", character_b_sum(p, [&](const DirichletCharacter& chi) {
                   return character_weight(chi, k, Convention::AsPrinted) * gauss_sum(chi);
                 })});

  // Conductor split with the Moebius series read through Euler products.
  auto parity_euler = [&](const DirichletCharacter& chi) -> CyclotomicNumber {
    if ((chi.parity() + k) % 2 != 0) return CyclotomicNumber();
    return chi.is_principal() ? CyclotomicNumber(2 * euler_principal(p, k)) : CyclotomicNumber(2);
  };
  auto cos_i = [&](const DirichletCharacter& chi) {
    return CyclotomicNumber(Rational(2 * cos_half_pi(k, chi.parity()))) * cyclo_root(4, chi.parity());
  };
  auto twisted_b_sum = [&](const DirichletCharacter& chi) {
    std::vector<CyclotomicNumber> f(p);
    CyclotomicNumber bsum;
    for (long b = 1; b < p; ++b) bsum += chi.conj().value(b);
    for (long n = 0; n < p; ++n) f[n] = bsum * chi.primitive_value(n);
    return f;
  };
  CyclotomicNumber nonprincipal;
  for (const auto& chi : chars) {
    if (chi.is_principal()) continue;
    const auto pe = parity_euler(chi);
    if (pe.is_zero() || cos_half_pi(k, chi.parity()) == 0) continue;
    nonprincipal += cos_i(chi) * pe * formal_moebius_value(p, k, twisted_b_sum(chi)) * Rational(ipow(p, k));
  }
  const auto principal = chars.front();
  const auto principal_term =
      cos_i(principal) * parity_euler(principal) * formal_moebius_value(p, k, twisted_b_sum(principal));
  out.push_back({"Intmuk''", (nonprincipal + principal_term) * gamma});

  // As printed: the principal character enters only through (1 + (-1)^(k+1)) zeta(1-k)^-1.
  const Rational printed_principal = Rational(1 + (k % 2 ? 1 : -1)) * zinv;
  out.push_back({"Intmuk'''", nonprincipal * gamma + CyclotomicNumber(printed_principal)});

  std::vector<CyclotomicNumber> aggregated(p);
  for (long n = 0; n < p; ++n)
    for (long b = 1; b < p; ++b)
      for (const auto& chi : chars)
        if (chi.conductor() == p) aggregated[n] += chi.conj().value(b) * chi.value(n);
  const Rational pref = chain_prefactor(p, k);
  out.push_back({"Intmuk4", formal_moebius_value(p, k, aggregated) * pref});

  std::vector<CyclotomicNumber> lemma_units(p), lemma_all(p);
  for (long n = 0; n < p; ++n) {
    long acc = 0;
    for (long b = 1; b < p; ++b) acc += (mod(b - n, p) == 0 ? p - 1 : 0) - 1;
    lemma_all[n] = CyclotomicNumber(acc);
    lemma_units[n] = n == 0 ? CyclotomicNumber() : CyclotomicNumber(acc);
  }
  out.push_back({"Intmuk4 (lemma on units)", formal_moebius_value(p, k, lemma_units) * pref});
  out.push_back({"Intmuk4 (lemma at all n)", formal_moebius_value(p, k, lemma_all) * pref});

  out.push_back({"Intmuk5", CyclotomicNumber(pref * (p - 1) * zinv * (euler - 1))});
  out.push_back({"Intmuk6", CyclotomicNumber(pref * (p - 1) * zinv * Rational(ipow(p, k - 1)) * euler)});
  out.push_back({"Theorem", CyclotomicNumber(rhs_theorem1(p, k))});
  return out;
}

std::vector<MeasureReport> intmuk_chain_verify(long p, long k, long mprime) {
  const auto values = intmuk_chain_values(p, k, mprime);
  std::vector<MeasureReport> out;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    auto r = compare_exact("intmuk_chain",
                           Json{{"p", p}, {"k", k}, {"mprime", mprime}, {"from", values[i].name},
                                {"to", values[i + 1].name}},
                           values[i].value, values[i + 1].value, p);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace eismeas
