#include "rrcolor/sampler.hpp"

#include <chrono>
#include <stdexcept>

namespace rrcolor {

std::uint64_t default_step_cap(int node_count) {
  return 1'000'000ull * static_cast<std::uint64_t>(node_count);
}

SampleResult rr_sample(const Graph& g, int k, BitSource& rng, const SampleOptions& options) {
  if (k < 2) throw std::invalid_argument("rr_sample: need k >= 2");
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t bits_before = rng.bits_consumed();
  const std::uint64_t cap =
      options.step_cap == 0 ? default_step_cap(g.node_count()) : options.step_cap;

  SampleResult result;
  auto [x, xs] = initial_state(g, k, rng);
  if (options.observer) options.observer->on_start(x, xs);

  RunMetrics& m = result.metrics;
  while (true) {
    const StepOutcome outcome = rr_step(x, xs, g, rng);
    if (outcome.kind == StepKind::Done) break;
    ++m.total_steps;
    switch (outcome.kind) {
      case StepKind::RemoveForbidden:
        ++m.steps_remove_forbidden;
        break;
      case StepKind::RemoveFrozen:
        ++m.steps_remove_frozen;
        break;
      case StepKind::RemoveIgnored:
        ++m.steps_remove_ignored;
        break;
      case StepKind::Done:
        break;
    }
    if (outcome.recolor_d > 0) {
      m.min_recolor_d = m.min_recolor_d ? std::min(*m.min_recolor_d, outcome.recolor_d)
                                        : outcome.recolor_d;
    }
    if (options.observer) options.observer->on_step(m.total_steps, outcome, x, xs);
    if (m.total_steps >= cap && !xs.all_unrestricted()) {
      result.status = SampleStatus::BudgetExceeded;
      break;
    }
  }

  m.random_bits = rng.bits_consumed() - bits_before;
  m.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                  .count();
  if (result.status == SampleStatus::Ok) result.coloring = std::move(x);
  return result;
}

}  // namespace rrcolor
