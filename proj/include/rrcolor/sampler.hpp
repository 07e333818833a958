#pragma once

#include <cstdint>

#include "rrcolor/bit_source.hpp"
#include "rrcolor/graph.hpp"
#include "rrcolor/state.hpp"
#include "rrcolor/step.hpp"

namespace rrcolor {

// Hook for instrumented runs (potential traces, invariant audits). Sees the
// state at the start of the run and after every step.
struct StepObserver {
  virtual ~StepObserver() = default;
  virtual void on_start(const Coloring& x, const IndexState& xs) = 0;
  virtual void on_step(std::uint64_t step_index, const StepOutcome& outcome, const Coloring& x,
                       const IndexState& xs) = 0;
};

struct SampleOptions {
  std::uint64_t step_cap = 0;  // 0 means the default of 1e6 * node_count
  StepObserver* observer = nullptr;
};

enum class SampleStatus : unsigned char { Ok, BudgetExceeded };

struct SampleResult {
  SampleStatus status = SampleStatus::Ok;
  Coloring coloring;  // empty on BudgetExceeded: a truncated draw would bias the distribution
  RunMetrics metrics;
};

std::uint64_t default_step_cap(int node_count);

// Draws one exactly uniform proper k-coloring of g, or reports that the step
// budget ran out first. Requires k >= 2. Single-threaded; distinct
// invocations with their own BitSources may run concurrently.
SampleResult rr_sample(const Graph& g, int k, BitSource& rng, const SampleOptions& options = {});

}  // namespace rrcolor
