#pragma once

#include <cstdint>
#include <vector>

#include "rrcolor/sampler.hpp"

namespace rrcolor {

struct BatchOptions {
  std::uint64_t step_cap = 0;
  int threads = 0;  // 0 = runtime default
};

// count independent draws with per-sample seeds base_seed + i, results in
// sample-index order. The parallel runner fans samples out across OpenMP
// threads; the serial runner is the reference both for testing and for
// builds without OpenMP. Their outputs are identical apart from wall-clock
// fields.
std::vector<SampleResult> sample_batch_serial(const Graph& g, int k, std::uint64_t base_seed,
                                              int count, const BatchOptions& options = {});
std::vector<SampleResult> sample_batch_parallel(const Graph& g, int k, std::uint64_t base_seed,
                                                int count, const BatchOptions& options = {});

}  // namespace rrcolor
