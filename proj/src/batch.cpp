#include "rrcolor/batch.hpp"

#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rrcolor {

namespace {

SampleResult one(const Graph& g, int k, std::uint64_t seed, const BatchOptions& options) {
  BitSource rng(seed);
  SampleOptions so;
  so.step_cap = options.step_cap;
  return rr_sample(g, k, rng, so);
}

}  // namespace

std::vector<SampleResult> sample_batch_serial(const Graph& g, int k, std::uint64_t base_seed,
                                              int count, const BatchOptions& options) {
  std::vector<SampleResult> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out[i] = one(g, k, base_seed + i, options);
  return out;
}

std::vector<SampleResult> sample_batch_parallel(const Graph& g, int k, std::uint64_t base_seed,
                                                int count, const BatchOptions& options) {
#ifndef _OPENMP
  return sample_batch_serial(g, k, base_seed, count, options);
#else
  std::vector<SampleResult> out(static_cast<std::size_t>(count));
  std::exception_ptr first_error;
  std::mutex error_mutex;
  const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (int i = 0; i < count; ++i) {
    try {
      out[i] = one(g, k, base_seed + i, options);
    } catch (...) {
      const std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);
  return out;
#endif
}

}  // namespace rrcolor
