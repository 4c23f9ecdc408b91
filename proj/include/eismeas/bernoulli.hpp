#pragma once

#include <limits>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <tuple>

#include "eismeas/characters.hpp"

namespace eismeas {

// Read-mostly memo table. Writes are idempotent: concurrent misses compute the same value.
template <class Key, class Value>
class SpecialValueCache {
 public:
  template <class F>
  Value get_or_compute(const Key& key, F&& compute) {
    {
      std::shared_lock lock(mu_);
      if (auto it = table_.find(key); it != table_.end()) return it->second;
    }
    Value v = compute();
    std::unique_lock lock(mu_);
    return table_.emplace(key, std::move(v)).first->second;
  }
  std::optional<Value> lookup(const Key& key) const {
    std::shared_lock lock(mu_);
    if (auto it = table_.find(key); it != table_.end()) return it->second;
    return std::nullopt;
  }
  std::size_t size() const {
    std::shared_lock lock(mu_);
    return table_.size();
  }

 private:
  mutable std::shared_mutex mu_;
  std::map<Key, Value> table_;
};

enum class CharacterConvention { Modulus, Primitive };

struct SeriesValue {
  ComplexApprox value;
  double tail_bound = 0;  // truncation bound plus a rounding allowance
  long terms = 0;
};

Rational bernoulli_number(long k);
Rational bernoulli_poly(long k, const Rational& x);
Rational zeta_neg(long k);  // zeta(1 - k), k >= 2
Rational partial_zeta_neg(long k, long a, long n);  // zeta(1 - k; a, n), 1 <= a <= n
CyclotomicNumber generalized_bernoulli(long k, const DirichletCharacter& chi);
CyclotomicNumber l_neg(long k, const DirichletCharacter& chi);  // L(1 - k, chi), primitive convention

SeriesValue l_complex(long k, const DirichletCharacter& chi, long terms,
                      CharacterConvention conv = CharacterConvention::Primitive);
SeriesValue zeta_complex(long k, long terms);
// sum over 0 < n = a mod N of n^{-k}; `terms` terms of the progression.
SeriesValue partial_zeta_numeric(long k, long a, long n, long terms);

bool is_regular_prime(long p);

// Covers the long double accumulation and the final conversion to double.
inline double rounding_allowance(ComplexApprox v) { return 4 * std::numeric_limits<double>::epsilon() * (1 + std::abs(v)); }

}  // namespace eismeas
