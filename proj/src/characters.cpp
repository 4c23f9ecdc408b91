#include "eismeas/characters.hpp"

#include <map>
#include <mutex>

namespace eismeas {

namespace {

void require_odd_prime_power(long p, long m) {
  if (p == 2) throw InvalidArgument("characters: p = 2 is not supported");
  if (!is_prime(p)) throw InvalidArgument("characters: p must be an odd prime, got " + std::to_string(p));
  if (m < 1) throw InvalidArgument("characters: m must be positive");
}

}  // namespace

long smallest_primitive_root(long p, long m) {
  require_odd_prime_power(p, m);
  const long n = ipow_small(p, static_cast<unsigned>(m));
  const long phi = euler_phi(n);
  const auto qs = prime_factors(phi);
  for (long g = 2; g < n; ++g) {
    if (g % p == 0) continue;
    bool primitive = true;
    for (long q : qs) {
      if (mod_pow(g, phi / q, n) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) return g;
  }
  throw ArithmeticError("no primitive root found");
}

std::shared_ptr<const CharacterGroup> CharacterGroup::get(long p, long m) {
  static std::mutex mu;
  static std::map<std::pair<long, long>, std::shared_ptr<const CharacterGroup>> cache;
  std::lock_guard lock(mu);
  auto key = std::make_pair(p, m);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  auto g = std::make_shared<CharacterGroup>();
  g->p = p;
  g->m = m;
  g->modulus = ipow_small(p, static_cast<unsigned>(m));
  g->phi = euler_phi(g->modulus);
  g->generator = smallest_primitive_root(p, m);
  g->dlog.assign(g->modulus, -1);
  long x = 1;
  for (long e = 0; e < g->phi; ++e) {
    g->dlog[x] = e;
    x = x * g->generator % g->modulus;
  }
  return cache.emplace(key, std::move(g)).first->second;
}

DirichletCharacter::DirichletCharacter(std::shared_ptr<const CharacterGroup> group, long index)
    : group_(std::move(group)), index_(mod(index, group_->phi)) {
  const long n = group_->modulus;
  // chi(-1) = zeta_phi^(index * phi/2)
  parity_ = static_cast<int>(index_ % 2);
  conductor_ = 1;
  if (index_ == 0) return;
  // Smallest p^e with chi trivial on 1 + p^e Z.
  for (long e = 1, pe = group_->p; e <= group_->m; ++e, pe *= group_->p) {
    bool trivial = true;
    for (long u = 1; u < n; u += pe) {
      if (index_ * group_->dlog[u] % group_->phi != 0) {
        trivial = false;
        break;
      }
    }
    if (trivial) {
      conductor_ = pe;
      return;
    }
  }
  conductor_ = n;
}

std::optional<long> DirichletCharacter::exponent(long n) const {
  long r = group_->dlog[mod(n, group_->modulus)];
  if (r < 0) return std::nullopt;
  return index_ * r % group_->phi;
}

std::optional<long> DirichletCharacter::primitive_exponent(long n) const {
  if (conductor_ == 1) return 0;
  return exponent(n);
}

CyclotomicNumber DirichletCharacter::value(long n) const {
  auto e = exponent(n);
  if (!e) return CyclotomicNumber();
  return cyclo_root(static_cast<unsigned>(group_->phi), *e);
}

CyclotomicNumber DirichletCharacter::primitive_value(long n) const {
  auto e = primitive_exponent(n);
  if (!e) return CyclotomicNumber();
  return cyclo_root(static_cast<unsigned>(group_->phi), *e);
}

DirichletCharacter DirichletCharacter::conj() const { return DirichletCharacter(group_, group_->phi - index_); }

std::vector<DirichletCharacter> enumerate_characters(long p, long m) {
  require_odd_prime_power(p, m);
  auto g = CharacterGroup::get(p, m);
  std::vector<DirichletCharacter> out;
  out.reserve(g->phi);
  for (long j = 0; j < g->phi; ++j) out.emplace_back(g, j);
  return out;
}

CyclotomicNumber gauss_sum(const DirichletCharacter& chi) {
  const long c = chi.conductor();
  if (c == 1) return CyclotomicNumber(1);
  const long phi = chi.phi();
  const unsigned order = static_cast<unsigned>(lcm(phi, c));
  // chi(u) e(u/C) = zeta_L^(e * L/phi + u * L/C)
  RootSum acc(order);
  for (long u = 1; u < c; ++u) {
    auto e = chi.primitive_exponent(u);
    if (!e) continue;
    acc.add(*e * (order / phi) + u * (order / c), 1L);
  }
  return acc.value();
}

}  // namespace eismeas
