#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "eismeas/cyclotomic.hpp"

namespace eismeas {

// (Z/p^m)^* for odd p with a fixed primitive root and its discrete-log table.
struct CharacterGroup {
  long p = 0;
  long m = 0;
  long modulus = 0;
  long phi = 0;
  long generator = 0;
  std::vector<long> dlog;  // dlog[n] = ind_g(n), or -1 when p | n

  static std::shared_ptr<const CharacterGroup> get(long p, long m);
};

long smallest_primitive_root(long p, long m);

class DirichletCharacter {
 public:
  DirichletCharacter(std::shared_ptr<const CharacterGroup> group, long index);

  long p() const { return group_->p; }
  long m() const { return group_->m; }
  long modulus() const { return group_->modulus; }
  long phi() const { return group_->phi; }
  long generator() const { return group_->generator; }
  long index() const { return index_; }
  long conductor() const { return conductor_; }
  int parity() const { return parity_; }
  bool is_principal() const { return index_ == 0; }
  const CharacterGroup& group() const { return *group_; }

  // chi(n) = zeta_phi^e; nullopt when chi(n) = 0 (modulus convention: p | n).
  std::optional<long> exponent(long n) const;
  // Same for the primitive restriction; principal character is 1 everywhere.
  std::optional<long> primitive_exponent(long n) const;

  CyclotomicNumber value(long n) const;            // modulus-p^m convention
  CyclotomicNumber primitive_value(long n) const;  // through the conductor
  DirichletCharacter conj() const;

  friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
    return a.modulus() == b.modulus() && a.index_ == b.index_;
  }

 private:
  std::shared_ptr<const CharacterGroup> group_;
  long index_;
  long conductor_ = 1;
  int parity_ = 0;
};

std::vector<DirichletCharacter> enumerate_characters(long p, long m);
CyclotomicNumber gauss_sum(const DirichletCharacter& chi);

}  // namespace eismeas
