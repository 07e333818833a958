#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rrcolor/batch.hpp"
#include "rrcolor/potential.hpp"
#include "rrcolor/stats.hpp"
#include "rrcolor/step.hpp"

namespace rrcolor {

// ---------------------------------------------------------------------------
// Whole-sampler uniformity against the enumeration oracle.

struct UniformityReport {
  std::uint64_t support_size = 0;
  std::uint64_t num_samples = 0;
  ChiSquareResult chi;
  double p_threshold = 1e-3;
  bool pass = false;
};

// Enumerates the proper k-colorings of g, draws num_samples independent
// samples (seeds seed+i), and chi-square-tests the empirical distribution.
// Throws when the support is empty or exceeds the enumeration cap.
UniformityReport uniformity_test(const Graph& g, int k, int num_samples, std::uint64_t seed,
                                 double p_threshold = 1e-3, std::uint64_t enum_cap = 10'000'000,
                                 const BatchOptions& batch = {});

// ---------------------------------------------------------------------------
// Potential drift.

struct DriftKindStats {
  std::uint64_t steps = 0;
  double mean = 0.0;         // mean per-step change of phi
  double stderr_mean = 0.0;  // standard error of that mean
};

struct DriftReport {
  PotentialParams params;
  std::uint64_t runs = 0;
  DriftKindStats overall;
  DriftKindStats by_kind[3];  // indexed by StepKind Forbidden/Frozen/Ignored
  // mean <= -epsilon + 3 * stderr, overall and per kind (kinds with no steps pass).
  bool overall_within_bound = false;
  bool per_kind_within_bound = false;
};

// Instrumented runs accumulating exact per-step potential changes.
// Uses max(max_degree, 1) for the parameter degree so edgeless graphs work.
DriftReport drift_experiment(const Graph& g, int k, int runs, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Scaling benchmark.

struct BenchRow {
  std::string family;
  int n = 0;
  int k = 0;
  int delta = 0;
  Rational epsilon;
  double mean_steps = 0.0;
  double steps_per_node = 0.0;
  double mean_bits_per_step = 0.0;
  double wall_ms = 0.0;  // mean per sample
  bool steps_bound_ok = false;  // mean_steps <= n / epsilon
  bool bits_bound_ok = false;   // mean_bits_per_step <= 64 * (delta + 2) * ceil(log2 k)
};

struct BenchReport {
  std::vector<BenchRow> rows;
  bool trend_ok = true;  // steps/node at the largest n within 1.25x of the smallest n
  bool all_bounds_ok = true;
};

// family: "cycle" | "path" | "complete" | "random_regular:<degree>".
// reps samples per size; reps == 0 yields an empty table.
BenchReport scaling_bench(const std::string& family, std::span<const int> sizes, int k, int reps,
                          std::uint64_t seed, const BatchOptions& batch = {});

// ---------------------------------------------------------------------------
// Per-procedure oracle: draw the input uniformly from a(start) by
// enumeration, apply one step, bucket by output index, and test each bucket's
// output states for uniformity over the bucket's own support.

struct OracleBucketReport {
  std::vector<int> index_key;  // IndexState::entries() of the output index
  StepBranch branch = StepBranch::None;  // branch that first produced it
  std::uint64_t trials = 0;
  std::uint64_t support = 0;
  // Rare buckets are tested on contiguous lexicographic blocks of the support
  // so every chi-square cell keeps an expected count of at least ~5;
  // merged_cells == support means no merging happened.
  std::uint64_t merged_cells = 0;
  bool tested = false;  // single-member or starved buckets are trivially/not testable
  ChiSquareResult chi;
  bool pass = true;
};

struct OracleReport {
  std::uint64_t trials = 0;
  std::uint64_t membership_failures = 0;  // outputs with weight 0 under their own index
  std::vector<OracleBucketReport> buckets;
  double min_p = 1.0;
  double p_threshold = 1e-3;
  bool pass = false;
};

OracleReport procedure_oracle(const Graph& g, int k, const IndexState& start,
                              std::uint64_t trials, std::uint64_t seed,
                              double p_threshold = 1e-3,
                              ForbiddenVariant variant = ForbiddenVariant::Balanced);

// The three fixed desk-scale configurations exercising one procedure each.
struct OracleConfig {
  std::string name;
  Graph g;
  int k = 0;
  IndexState start = IndexState::all_unrestricted(1);
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};
std::vector<OracleConfig> canonical_oracle_configs(std::uint64_t trial_scale = 1);

// ---------------------------------------------------------------------------
// Invariant audit: instrumented full runs, checking after every step that the
// output state is a member of its index, the partition and single-forbidden-
// color invariants hold, the share-sum identity held on line-7 entries, and
// the step changed exactly the entries it reported.

struct AuditReport {
  std::uint64_t runs = 0;
  std::uint64_t steps = 0;
  std::uint64_t membership_violations = 0;
  std::uint64_t partition_violations = 0;
  std::uint64_t share_sum_violations = 0;
  std::uint64_t progress_violations = 0;
  std::uint64_t share_sum_checks = 0;
  std::uint64_t frozen_equal_edge_uses = 0;  // edges saved only by the frozen-equal disjunct
  std::optional<int> min_recolor_d;
  bool d_lower_bound_ok = true;  // every observed d >= k - max_degree
  std::map<std::string, std::uint64_t> branch_counts;
  bool pass = false;
};

AuditReport invariant_audit(const Graph& g, int k, int runs, std::uint64_t seed);

}  // namespace rrcolor
