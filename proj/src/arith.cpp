#include "eismeas/arith.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace eismeas {

std::optional<long> p_valuation(const Integer& n, unsigned long p) {
  if (p < 2) throw InvalidArgument("p_valuation: p must be prime");
  if (n == 0) return std::nullopt;
  mpz_class q = n;
  long v = 0;
  while (mpz_divisible_ui_p(q.get_mpz_t(), p)) {
    mpz_divexact_ui(q.get_mpz_t(), q.get_mpz_t(), p);
    ++v;
  }
  return v;
}

std::optional<long> p_valuation(const Rational& r, unsigned long p) {
  if (r == 0) return std::nullopt;
  return *p_valuation(Integer(r.get_num()), p) -
         *p_valuation(Integer(r.get_den()), p);
}

std::string to_string(const Rational& r) { return r.get_str(); }

Rational parse_rational(std::string_view text) {
  Rational r;
  if (text.empty() || r.set_str(std::string(text), 10) != 0 || r.get_den() == 0)
    throw InvalidArgument("not a rational: " + std::string(text));
  r.canonicalize();
  return r;
}

bool is_integer(const Rational& r) { return r.get_den() == 1; }

Integer ipow(const Integer& base, unsigned long e) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

Rational rpow(const Rational& base, long e) {
  if (e >= 0) {
    return Rational(ipow(base.get_num(), e), ipow(base.get_den(), e));
  }
  if (base == 0) throw ArithmeticError("rpow: zero to a negative power");
  Rational out(ipow(base.get_den(), -e), ipow(base.get_num(), -e));
  out.canonicalize();
  return out;
}

long mod(long a, long n) {
  long r = a % n;
  return r < 0 ? r + n : r;
}

long gcd(long a, long b) { return std::gcd(a, b); }
long lcm(long a, long b) { return std::lcm(a, b); }

long mod_pow(long base, unsigned long e, long n) {
  long long result = 1 % n, b = mod(base, n);
  while (e) {
    if (e & 1) result = result * b % n;
    b = b * b % n;
    e >>= 1;
  }
  return static_cast<long>(result);
}

long mod_inverse(long a, long n) {
  long t = 0, nt = 1, r = n, nr = mod(a, n);
  while (nr) {
    long q = r / nr;
    t = std::exchange(nt, t - q * nt);
    r = std::exchange(nr, r - q * nr);
  }
  if (r != 1) throw ArithmeticError("mod_inverse: not invertible");
  return mod(t, n);
}

long ipow_small(long base, unsigned e) {
  long out = 1;
  while (e--) out *= base;
  return out;
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<long> prime_factors(long n) {
  std::vector<long> out;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

long euler_phi(long n) {
  long out = n;
  for (long q : prime_factors(n)) out = out / q * (q - 1);
  return out;
}

std::vector<long> divisors(long n) {
  std::vector<long> small, large;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    small.push_back(d);
    if (d * d != n) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

int moebius(long n) {
  int sign = 1;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    n /= d;
    if (n % d == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

}  // namespace eismeas
