#include "eismeas/parallel.hpp"

#include <omp.h>

#include <atomic>
#include <cstdlib>

namespace eismeas {

namespace {

std::atomic<int> override_threads{0};

int from_environment() {
  const char* env = std::getenv("EISMEAS_THREADS");
  if (!env) return 0;
  int n = std::atoi(env);
  return n > 0 ? n : 0;
}

}  // namespace

int thread_count() {
  if (int n = override_threads.load(); n > 0) return n;
  static const int env = from_environment();
  return env > 0 ? env : omp_get_max_threads();
}

void set_thread_count(int n) { override_threads.store(n > 0 ? n : 0); }

}  // namespace eismeas
