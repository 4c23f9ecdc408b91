#include "doctest.h"
#include "eismeas/eisenstein.hpp"
#include "eismeas/measure.hpp"
#include "eismeas/parallel.hpp"

using namespace eismeas;

TEST_CASE("collapsed coefficient kernel matches the literal quadruple sum") {
  for (auto conv : {Convention::AsPrinted, Convention::FromDefinition}) {
    for (long a : {1L, 7L, 24L})
      for (long j : {0L, 2L, 5L})
        CHECK(fourier_coefficient_ppower(5, 2, 4, a, j, conv) ==
              fourier_coefficient_ppower_reference(5, 2, 4, a, j, conv));
    for (long a = 1; a < 7; ++a)
      CHECK(fourier_coefficient_ppower(7, 1, 6, a, 3, conv) == fourier_coefficient_ppower_reference(7, 1, 6, a, 3, conv));
  }
}

TEST_CASE("parallel tables equal serial evaluation for any thread count") {
  for (int threads : {1, 2, 4}) {
    set_thread_count(threads);
    const auto table = fourier_coefficient_table(5, 2, 4, 4, Convention::AsPrinted);
    CHECK(table.values.size() == 20);
    for (const auto& [a, v] : table.values) CHECK(v == fourier_coefficient_ppower(5, 2, 4, a, 4, Convention::AsPrinted));
    const auto mu = mu_star_table(5, 1, 4, 3);
    for (const auto& [a, v] : mu.values) CHECK(v == mu_star_k_value(5, 1, 4, a, 3));
    const ComplexApprox z(0.05, 0.9);
    CHECK(lattice_sum(4, 3, 1, 2, z, 300).value == lattice_sum(4, 3, 1, 2, z, 300).value);
    CHECK(std::abs(lattice_sum(4, 3, 1, 2, z, 300).value - lattice_sum_reference(4, 3, 1, 2, z, 300).value) < 1e-12);
  }
  set_thread_count(0);
}
