#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eismeas/bernoulli.hpp"
#include "eismeas/characters.hpp"
#include "json.hpp"

namespace eismeas {

using Json = nlohmann::ordered_json;

// Values on the classes a + (p^m), a coprime to p.
template <class S>
struct DistributionTable {
  long p = 0;
  long m = 0;
  std::map<long, S> values;

  long modulus() const { return ipow_small(p, static_cast<unsigned>(m)); }
  const S& at(long a) const { return values.at(mod(a, modulus())); }
};

struct MeasureReport {
  std::string claim;
  Json inputs = Json::object();
  Json left;
  Json right;
  bool equal = false;       // left == right (exactly on exact paths, within tolerance otherwise)
  bool holds = false;       // whether the asserted property holds
  bool exact = true;
  bool applicable = true;   // false when a hypothesis filter rejected the case
  std::optional<long> valuation_gap;
  std::optional<std::string> ratio;  // exact left/right, "inf" when right is zero
  std::optional<double> tolerance;
  Json details = Json::object();
};

// Fills equal / ratio / valuation_gap for an exact comparison.
MeasureReport compare_exact(std::string claim, Json inputs, const CyclotomicNumber& left,
                            const CyclotomicNumber& right, std::optional<long> p = std::nullopt);

// ---- Mazur measure and Kummer congruences ----

DistributionTable<Rational> mazur_measure(long p, long m, long c);
Rational zeta_c_neg(long p, long c, long k);  // (1 - p^k)(1 - c^(k+1)) zeta(-k)
Rational riemann_sum(const DistributionTable<Rational>& table, long k);  // sum_a a^k mu(a), 0 <= a < p^m
MeasureReport mazur_interpolation_check(long p, long m, long c, long k);
MeasureReport mazur_refinement_check(long p, long m, long c);
// h given by coefficients alpha_0 .. alpha_n.
MeasureReport kummer_theorem_check(long p, long m, long c, const std::vector<Rational>& h);

// ---- Character and Gauss-sum lemmas ----

MeasureReport character_sum_lemma(long p, long b, long n);
MeasureReport geometric_sum_lemma(const DirichletCharacter& chi, long v);
MeasureReport gauss_summation_lemma(const DirichletCharacter& chi, long v);
MeasureReport functional_equation_check(const DirichletCharacter& chi, long k, long terms, double tol);

// ---- Divisibility claims ----

// cos(pi (k - delta) / 2) as an exact integer in {0, 1, -1}.
int cos_half_pi(long k, int delta);

// Printed substitution: Gamma(k) cos(pi(k-delta)/2) 2 i^delta C^k G(chi)^-1 L(1-k, chi)^-1; zero when the cosine vanishes.
CyclotomicNumber functional_bracket(const DirichletCharacter& chi, long k);
// Same with G(conj chi) in place of G(chi); equals (2 pi)^k / L(k, conj chi) for primitive chi.
CyclotomicNumber true_bracket(const DirichletCharacter& chi, long k);

struct CPrime {
  Integer value;   // positive integer clearing every denominator of L(1-k, chi)^-1 in the sweep
  long p_part = 0;  // v_p(value)
};
CPrime compute_cprime(long p, long m_max, const std::vector<long>& ks);

MeasureReport divisibility_5_11(const DirichletCharacter& chi, long k, const Integer& cprime);
// The triple sum over x, b, t mod p^m with p^(m'-m_d) = sign(d) x t, evaluated through t = t0 + C t'.
MeasureReport exp_sum_divisibility_5_17(const DirichletCharacter& chi, long d, long a, long mprime);

// ---- Exact p-power coefficients and the measure mu*_k ----

// AsPrinted: chi(t), both divisor signs, parity factor, bracket without (-i)^k.
// FromDefinition: conj(chi)(t), positive divisors with the parity factor, true bracket times (-i)^k;
// this is what the Hecke-coefficient definition produces and what the numeric oracle computes.
enum class Convention { AsPrinted, FromDefinition };
std::string to_string(Convention c);
Convention parse_convention(const std::string& s);

// Per-character weight W(chi) multiplying the character values in the t-sum.
CyclotomicNumber character_weight(const DirichletCharacter& chi, long k, Convention conv);

// a_{p^j} of the one-variable E* distribution at residue a (exact). Fast kernel: b-sum collapsed.
CyclotomicNumber fourier_coefficient_ppower(long p, long m, long k, long a, long j, Convention conv);
// Literal x, b, t, m_d quadruple sum per character; serial reference for the kernel above.
CyclotomicNumber fourier_coefficient_ppower_reference(long p, long m, long k, long a, long j, Convention conv);
// All residues a coprime to p, in parallel.
DistributionTable<CyclotomicNumber> fourier_coefficient_table(long p, long m, long k, long j, Convention conv);

struct AlphaPart {
  CyclotomicNumber value;            // l((U^alpha)^-m' pi_alpha(.))
  long recurrence_order = 0;         // dimension of the U-span of the p-power shadow
  std::vector<CyclotomicNumber> recurrence;  // s_{i+r} = sum c_l s_{i+l}
};
// alpha-part of a sequence s_i = a_{p^(m'+i)} under the shift U.
AlphaPart alpha_part_of_sequence(const std::vector<CyclotomicNumber>& seq, const Rational& alpha, long mprime);

void require_mu_star_inputs(long p, long m, long k, long mprime);
CyclotomicNumber mu_star_k_value(long p, long m, long k, long a, long mprime, Convention conv = Convention::AsPrinted);
DistributionTable<CyclotomicNumber> mu_star_table(long p, long m, long k, long mprime,
                                                  Convention conv = Convention::AsPrinted);

struct MonomialMarker {
  long k;
};
CyclotomicNumber mu_star_integrate(const DistributionTable<CyclotomicNumber>& table, const DirichletCharacter& chi);
CyclotomicNumber mu_star_integrate(const DistributionTable<CyclotomicNumber>& table, MonomialMarker x);

// Finite-level compatibility sum_j mu(a + j p^m + (p^(m+1))) = mu(a + (p^m)) for every a.
MeasureReport mu_star_refinement_check(long p, long m, long k, long mprime, Convention conv);

Rational rhs_theorem1(long p, long k);
MeasureReport theorem1_check(long p, long k, long mprime, Convention conv = Convention::AsPrinted);

MeasureReport boundedness_check(long p, long k, long m_max, Convention conv = Convention::AsPrinted);

// One coefficient set: pairs (character index, coefficient).
using KummerTrial = std::vector<std::pair<long, CyclotomicNumber>>;
std::vector<MeasureReport> abstract_kummer_verify(long p, long m, const std::map<long, CyclotomicNumber>& targets,
                                                  const std::vector<KummerTrial>& trials, const Integer& scale);

// ---- The summation chain from the integral to the closed form (m = 1) ----

struct ChainValue {
  std::string name;
  CyclotomicNumber value;
};
std::vector<ChainValue> intmuk_chain_values(long p, long k, long mprime);
std::vector<MeasureReport> intmuk_chain_verify(long p, long k, long mprime);

// Value at s = 1 - k of sum_n mu(n) f(n) n^-s for f periodic mod p, read through Euler products:
// nonprincipal chi contributes L(1-k, chi)^-1, the principal part on units zeta(1-k)^-1 (1-p^(k-1))^-1,
// and the class p | n contributes -p^(k-1) times the same.
CyclotomicNumber formal_moebius_value(long p, long k, const std::vector<CyclotomicNumber>& f);

}  // namespace eismeas
