#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "eismeas/eisenstein.hpp"
#include "eismeas/measure.hpp"
#include "eismeas/parallel.hpp"

using namespace eismeas;

namespace {

template <class F>
double seconds(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  const long cutoff = argc > 1 ? std::atol(argv[1]) : 2000;
  const ComplexApprox z(0.05, 0.9);
  std::printf("threads %d\n", thread_count());

  LatticeResult par, ser;
  const double t_par = seconds([&] { par = lattice_sum(4, 5, 1, 2, z, cutoff); });
  const double t_ser = seconds([&] { ser = lattice_sum_reference(4, 5, 1, 2, z, cutoff); });
  std::printf("lattice_sum R=%ld  parallel %.3fs  serial %.3fs  |diff| %.3g\n", cutoff, t_par, t_ser,
              std::abs(par.value - ser.value));

  CyclotomicNumber fast, ref;
  fourier_coefficient_ppower(5, 2, 4, 1, 0, Convention::AsPrinted);  // fills the character-weight cache
  const double t_fast = seconds([&] { fast = fourier_coefficient_ppower(5, 2, 4, 1, 5, Convention::AsPrinted); });
  const double t_ref =
      seconds([&] { ref = fourier_coefficient_ppower_reference(5, 2, 4, 1, 5, Convention::AsPrinted); });
  std::printf("a_{p^5} p=5 m=2  fast %.3fs  reference %.3fs  equal %d\n", t_fast, t_ref, fast == ref);

  const double t_table = seconds([] { fourier_coefficient_table(5, 2, 4, 5, Convention::AsPrinted); });
  std::printf("coefficient table p=5 m=2 j=5  %.3fs\n", t_table);
  const double t_mu = seconds([] { mu_star_table(5, 1, 4, 3); });
  std::printf("mu* table p=5 m=1 m'=3  %.3fs\n", t_mu);
  return fast == ref && std::abs(par.value - ser.value) == 0 ? 0 : 1;
}
