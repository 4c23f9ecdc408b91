#pragma once

#include <memory>
#include <optional>

#include "eismeas/bernoulli.hpp"
#include "eismeas/qexpansion.hpp"

namespace eismeas {

// Normalized Eisenstein distribution at level N. Constant term zeta(1-k; a, N) when N | b,
// n-th coefficient sum over d d' = n (d of both signs), d = a, d' = b mod N, of sgn(d) d^(k-1).
QExpansion<Rational> eisenstein_normalized(long k, long n_level, long a, long b, std::size_t precision);

struct RefinementResult {
  bool equal = false;
  std::optional<std::size_t> first_difference;
};

// eisenstein_normalized(k, p^m, a, b) against the sum over its p^2 refinements at level p^(m+1).
RefinementResult distribution_refinement_check(long k, long p, long m, long a, long b, std::size_t precision);

struct NumericExpansion {
  QExpansion<ComplexApprox> series;
  double constant_tail = 0;  // error bound on the constant term from the partial-zeta series
};

// Raw lattice Eisenstein series E_{k,N}(z; a, b) as a series in e(z/N). Equivalently the
// q-expansion of E_{k,N}(N z; a, b).
NumericExpansion eisenstein_raw_numeric(long k, long n_level, long a, long b, std::size_t precision,
                                        long zeta_terms = 100000);

struct NumericValue {
  ComplexApprox value;
  double tail_bound = 0;
};

// sum_n c_n e(n z / N), with a bound on the neglected coefficients assuming |c_n| <= scale n^growth.
NumericValue evaluate_expansion(const QExpansion<ComplexApprox>& f, ComplexApprox z, long n_level, double scale,
                                double growth);
NumericValue evaluate_raw(const NumericExpansion& e, long k, long n_level, ComplexApprox z);

struct LatticeResult {
  ComplexApprox value;
  double tail_estimate = 0;  // 16 R^(2-k) (1 + |z|)^k
  long cutoff = 0;
};

// Square-cutoff lattice sums over (c, d) = (a, b) mod N. The OpenMP kernels sum rows in
// parallel and combine them in a fixed order; the reference versions are plain serial loops.
LatticeResult lattice_sum(long k, long n_level, long a, long b, ComplexApprox z, long cutoff);
LatticeResult lattice_sum_coprime(long k, long n_level, long a, long b, ComplexApprox z, long cutoff);
LatticeResult lattice_sum_reference(long k, long n_level, long a, long b, ComplexApprox z, long cutoff);
LatticeResult lattice_sum_coprime_reference(long k, long n_level, long a, long b, ComplexApprox z, long cutoff);

// sum_delta mu(delta) delta^-k E_{k,N'}(z; a', b') with g = gcd(delta, N), g | a, g | b,
// N' = N/g, (a', b') = (a/g, b/g) (delta/g)^-1 mod N'. Each E_{k,N'} is evaluated from its expansion.
NumericValue moebius_estar_numeric(long k, long n_level, long a, long b, ComplexApprox z, long terms);

// c_t = sum over n with t n = 1 mod p^m of mu(n) n^-k.
SeriesValue hecke_ct_numeric(long k, long p, long m, long t, long terms);
// (1/phi) sum_chi chi(t) L(k, chi)^-1 (modulus convention). With `conjugated` the character
// inside L is conjugated instead, which yields c at t^-1.
SeriesValue hecke_ct_character_form(long k, long p, long m, long t, long terms, bool conjugated = false);

// Moebius function table for 0..n (shared, immutable).
std::shared_ptr<const std::vector<signed char>> moebius_table(long n);

// (p^m)^(k-1) Gamma(k) sum_{x,b} e(-a x/p^m) sum_t c_t E_{k,p^m}(p^m z; t x, t b), as a q-expansion.
struct OneVarOptions {
  long ct_terms = 2000000;
  long zeta_terms = 100000;
};
NumericExpansion one_var_estar_numeric(long k, long p, long m, long a, std::size_t precision,
                                       const OneVarOptions& opt = {});

// Fourier transforms of the raw series in the first index, rescaled by N^(k-1) Gamma(k) / (-2 pi i)^k:
// literal:  sum_x e(-a x/N) E_{k,N}(N z; x, b)
// swapped:  sum_x e(-a x/N) E_{k,N}(N z; b, x)
QExpansion<ComplexApprox> eab_transform(long k, long n_level, long a, long b, std::size_t precision, bool swapped,
                                        long zeta_terms = 100000);

}  // namespace eismeas
