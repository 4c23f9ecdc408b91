#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "eismeas/arith.hpp"

namespace eismeas {

using ComplexApprox = std::complex<double>;

// Precomputed data for Q(zeta_n): Phi_n and the power-basis image of every zeta^j.
struct CyclotomicField {
  unsigned order = 1;
  unsigned degree = 1;
  std::vector<std::int64_t> modulus;                  // Phi_n, low to high, monic
  std::vector<std::vector<std::int64_t>> power_table;  // zeta^j for j < order

  static std::shared_ptr<const CyclotomicField> get(unsigned n);
};

// Integer coefficients of Phi_n, low to high.
std::vector<std::int64_t> cyclotomic_polynomial(unsigned n);

class CyclotomicNumber {
 public:
  CyclotomicNumber();
  CyclotomicNumber(const Rational& r);  // NOLINT: rationals embed implicitly
  CyclotomicNumber(long v);             // NOLINT
  CyclotomicNumber(unsigned order, std::vector<Rational> coords);

  // Reduces sum_j weights[j] zeta_n^j.
  static CyclotomicNumber from_exponent_weights(unsigned n, const std::vector<Rational>& weights);

  unsigned order() const { return field_->order; }
  const std::vector<Rational>& coords() const { return coords_; }

  bool is_zero() const;
  bool is_rational() const;
  Rational rational_part() const;  // throws unless is_rational()

  CyclotomicNumber lift(unsigned new_order) const;
  CyclotomicNumber conj() const;  // zeta -> zeta^{-1}
  CyclotomicNumber inverse() const;

  CyclotomicNumber& operator+=(const CyclotomicNumber& o);
  CyclotomicNumber& operator-=(const CyclotomicNumber& o);
  CyclotomicNumber& operator*=(const CyclotomicNumber& o);
  CyclotomicNumber& operator/=(const CyclotomicNumber& o);

  friend CyclotomicNumber operator+(CyclotomicNumber a, const CyclotomicNumber& b) { return a += b; }
  friend CyclotomicNumber operator-(CyclotomicNumber a, const CyclotomicNumber& b) { return a -= b; }
  friend CyclotomicNumber operator*(CyclotomicNumber a, const CyclotomicNumber& b) { return a *= b; }
  friend CyclotomicNumber operator/(CyclotomicNumber a, const CyclotomicNumber& b) { return a /= b; }
  CyclotomicNumber operator-() const;

  friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b);
  friend bool operator!=(const CyclotomicNumber& a, const CyclotomicNumber& b) { return !(a == b); }

 private:
  std::shared_ptr<const CyclotomicField> field_;
  std::vector<Rational> coords_;
};

CyclotomicNumber cyclo_root(unsigned n, long j);
CyclotomicNumber lift_to_common_order(const CyclotomicNumber& a, unsigned other_order);
ComplexApprox embed_complex(const CyclotomicNumber& a);
std::complex<long double> embed_complex_ld(const CyclotomicNumber& a);

// Every power-basis coordinate is an integer divisible by n.
bool divides_integer(const CyclotomicNumber& a, const Integer& n);
// Smallest coordinate valuation; nullopt for zero. Divisibility by p^r in Z_p[zeta] is
// exactly min_coord_valuation >= r, since the power basis is integral.
std::optional<long> min_coord_valuation(const CyclotomicNumber& a, unsigned long p);
// Positive integer clearing all coordinate denominators.
Integer common_denominator(const CyclotomicNumber& a);

inline bool is_zero(const Rational& r) { return r == 0; }
inline bool is_zero(const CyclotomicNumber& a) { return a.is_zero(); }

// Accumulates sum_j w_j zeta_n^j with integer weights; reduction happens once at the end.
class RootSum {
 public:
  explicit RootSum(unsigned order);
  void add(long exponent, const Integer& weight);
  void add(long exponent, long weight);
  void merge(const RootSum& other);
  unsigned order() const { return order_; }
  CyclotomicNumber value() const;

 private:
  unsigned order_;
  std::vector<Integer> weights_;
};

}  // namespace eismeas
