#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace eismeas {

using Integer = mpz_class;
using Rational = mpq_class;

class ArithmeticError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Valuations return nullopt for zero (v_p(0) = +inf).
std::optional<long> p_valuation(const Integer& n, unsigned long p);
std::optional<long> p_valuation(const Rational& r, unsigned long p);

// "num/den", or "num" when den == 1.
std::string to_string(const Rational& r);
Rational parse_rational(std::string_view text);

bool is_integer(const Rational& r);
Integer ipow(const Integer& base, unsigned long e);
Rational rpow(const Rational& base, long e);

// Small-integer helpers (moduli here are at most a few thousand).
long mod(long a, long n);
long gcd(long a, long b);
long lcm(long a, long b);
long mod_pow(long base, unsigned long e, long n);
long mod_inverse(long a, long n);
long ipow_small(long base, unsigned e);
bool is_prime(long n);
long euler_phi(long n);
std::vector<long> prime_factors(long n);
std::vector<long> divisors(long n);
int moebius(long n);

}  // namespace eismeas
