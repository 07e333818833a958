#include "rrcolor/experiments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace rrcolor {

namespace {

// Position of x in the lexicographically sorted support, or -1.
std::int64_t support_index(const std::vector<Coloring>& support, const Coloring& x) {
  const auto it = std::lower_bound(
      support.begin(), support.end(), x,
      [](const Coloring& a, const Coloring& b) { return a.color < b.color; });
  if (it == support.end() || it->color != x.color) return -1;
  return it - support.begin();
}

}  // namespace

UniformityReport uniformity_test(const Graph& g, int k, int num_samples, std::uint64_t seed,
                                 double p_threshold, std::uint64_t enum_cap,
                                 const BatchOptions& batch) {
  const auto support = enumerate_members(IndexState::all_unrestricted(g.node_count()), g, k,
                                         enum_cap);
  if (support.empty()) {
    throw std::runtime_error("uniformity_test: no proper colorings for k = " +
                             std::to_string(k));
  }
  const auto results = sample_batch_parallel(g, k, seed, num_samples, batch);
  std::vector<std::uint64_t> counts(support.size(), 0);
  for (const auto& r : results) {
    if (r.status != SampleStatus::Ok) {
      throw std::runtime_error("uniformity_test: a sample exceeded its step budget");
    }
    const std::int64_t idx = support_index(support, r.coloring);
    if (idx < 0) throw std::runtime_error("uniformity_test: sample outside the support");
    ++counts[static_cast<std::size_t>(idx)];
  }
  UniformityReport rep;
  rep.support_size = support.size();
  rep.num_samples = static_cast<std::uint64_t>(num_samples);
  rep.chi = chi_square_uniform(counts);
  rep.p_threshold = p_threshold;
  rep.pass = rep.chi.p_value > p_threshold;
  return rep;
}

namespace {

struct DriftAccumulator {
  std::uint64_t steps = 0;
  Rational sum;       // exact sum of per-step phi changes
  double sumsq = 0.0;

  void add(const Rational& delta) {
    ++steps;
    sum += delta;
    const double d = delta.to_double();
    sumsq += d * d;
  }
  DriftKindStats stats() const {
    DriftKindStats s;
    s.steps = steps;
    if (steps == 0) return s;
    s.mean = sum.to_double() / static_cast<double>(steps);
    const double var =
        std::max(0.0, sumsq / static_cast<double>(steps) - s.mean * s.mean);
    s.stderr_mean = std::sqrt(var / static_cast<double>(steps));
    return s;
  }
};

class DriftObserver final : public StepObserver {
 public:
  DriftObserver(const PotentialParams& params, DriftAccumulator& overall,
                DriftAccumulator (&by_kind)[3])
      : params_(params), overall_(overall), by_kind_(by_kind) {}

  void on_start(const Coloring&, const IndexState& xs) override {
    prev_ = potential_value(xs, params_);
  }
  void on_step(std::uint64_t, const StepOutcome& outcome, const Coloring&,
               const IndexState& xs) override {
    const Rational now = potential_value(xs, params_);
    const Rational delta = now - prev_;
    prev_ = now;
    overall_.add(delta);
    by_kind_[static_cast<int>(outcome.kind)].add(delta);
  }

 private:
  const PotentialParams& params_;
  DriftAccumulator& overall_;
  DriftAccumulator (&by_kind_)[3];
  Rational prev_;
};

bool within_drift_bound(const DriftKindStats& s, const Rational& epsilon) {
  if (s.steps == 0) return true;
  return s.mean <= -epsilon.to_double() + 3.0 * s.stderr_mean;
}

}  // namespace

DriftReport drift_experiment(const Graph& g, int k, int runs, std::uint64_t seed) {
  DriftReport rep;
  rep.params = make_potential_params(k, std::max(1, g.max_degree()));
  if (!rep.params.epsilon.is_positive()) {
    throw std::invalid_argument("drift_experiment: epsilon <= 0 for this (k, max_degree)");
  }
  DriftAccumulator overall;
  DriftAccumulator by_kind[3];
  for (int run = 0; run < runs; ++run) {
    BitSource rng(seed + static_cast<std::uint64_t>(run));
    DriftObserver obs(rep.params, overall, by_kind);
    SampleOptions opts;
    opts.observer = &obs;
    const SampleResult r = rr_sample(g, k, rng, opts);
    if (r.status != SampleStatus::Ok) {
      throw std::runtime_error("drift_experiment: a run exceeded its step budget");
    }
  }
  rep.runs = static_cast<std::uint64_t>(runs);
  rep.overall = overall.stats();
  rep.overall_within_bound = within_drift_bound(rep.overall, rep.params.epsilon);
  rep.per_kind_within_bound = true;
  for (int i = 0; i < 3; ++i) {
    rep.by_kind[i] = by_kind[i].stats();
    rep.per_kind_within_bound =
        rep.per_kind_within_bound && within_drift_bound(rep.by_kind[i], rep.params.epsilon);
  }
  return rep;
}

namespace {

Graph bench_graph(const std::string& family, int n, std::uint64_t seed) {
  if (family == "cycle") return make_cycle(n);
  if (family == "path") return make_path(n);
  if (family == "complete") return make_complete(n);
  if (family.rfind("random_regular:", 0) == 0) {
    const int degree = std::stoi(family.substr(std::string("random_regular:").size()));
    return make_random_regular(n, degree, seed);
  }
  throw std::invalid_argument("scaling_bench: unknown family '" + family + "'");
}

}  // namespace

BenchReport scaling_bench(const std::string& family, std::span<const int> sizes, int k, int reps,
                          std::uint64_t seed, const BatchOptions& batch) {
  BenchReport rep;
  if (reps == 0) return rep;
  for (std::size_t row_idx = 0; row_idx < sizes.size(); ++row_idx) {
    const int n = sizes[row_idx];
    const Graph g = bench_graph(family, n, seed * 0x9e3779b9u + static_cast<std::uint64_t>(n));
    const int delta = g.max_degree();
    BenchRow row;
    row.family = family;
    row.n = n;
    row.k = k;
    row.delta = delta;
    row.epsilon = epsilon_bound(k, std::max(1, delta));
    if (!row.epsilon.is_positive()) {
      throw std::invalid_argument("scaling_bench: epsilon <= 0 for k = " + std::to_string(k) +
                                  ", max_degree = " + std::to_string(delta));
    }
    const std::uint64_t sample_seed = seed + 1'000'003ull * row_idx;
    const auto results = sample_batch_parallel(g, k, sample_seed, reps, batch);
    std::uint64_t steps = 0, bits = 0;
    double wall = 0.0;
    for (const auto& r : results) {
      if (r.status != SampleStatus::Ok) {
        throw std::runtime_error("scaling_bench: a sample exceeded its step budget");
      }
      steps += r.metrics.total_steps;
      bits += r.metrics.random_bits;
      wall += r.metrics.wall_ms;
    }
    row.mean_steps = static_cast<double>(steps) / reps;
    row.steps_per_node = row.mean_steps / n;
    row.mean_bits_per_step = steps == 0 ? 0.0 : static_cast<double>(bits) / static_cast<double>(steps);
    row.wall_ms = wall / reps;
    // mean_steps <= n / epsilon, exactly: steps * epsilon <= n * reps.
    row.steps_bound_ok =
        Rational(static_cast<long long>(steps)) * row.epsilon <=
        Rational(static_cast<long long>(n) * reps);
    const unsigned log2k = std::bit_width(static_cast<unsigned>(k - 1));
    row.bits_bound_ok = row.mean_bits_per_step <= 64.0 * (delta + 2) * log2k;
    rep.all_bounds_ok = rep.all_bounds_ok && row.steps_bound_ok && row.bits_bound_ok;
    rep.rows.push_back(std::move(row));
  }
  const auto smallest = std::min_element(rep.rows.begin(), rep.rows.end(),
                                         [](const auto& a, const auto& b) { return a.n < b.n; });
  const auto largest = std::max_element(rep.rows.begin(), rep.rows.end(),
                                        [](const auto& a, const auto& b) { return a.n < b.n; });
  rep.trend_ok = largest->steps_per_node <= 1.25 * smallest->steps_per_node;
  return rep;
}

OracleReport procedure_oracle(const Graph& g, int k, const IndexState& start,
                              std::uint64_t trials, std::uint64_t seed, double p_threshold,
                              ForbiddenVariant variant) {
  const auto input_support = enumerate_members(start, g, k);
  if (input_support.empty()) throw std::runtime_error("procedure_oracle: empty input support");

  struct BucketData {
    IndexState xs = IndexState::all_unrestricted(1);
    StepBranch branch = StepBranch::None;
    std::map<std::vector<int>, std::uint64_t> counts;
    std::uint64_t trials = 0;
  };
  std::map<std::vector<int>, BucketData> buckets;

  BitSource rng(seed);
  OracleReport rep;
  rep.trials = trials;
  rep.p_threshold = p_threshold;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Coloring x = input_support[rng.uniform_int(input_support.size())];
    IndexState xs = start;
    const StepOutcome outcome = rr_step(x, xs, g, rng, variant);
    if (!is_member(x, xs, g)) ++rep.membership_failures;
    auto key = xs.entries();
    auto [it, inserted] = buckets.try_emplace(std::move(key));
    if (inserted) {
      it->second.xs = xs;
      it->second.branch = outcome.branch;
    }
    ++it->second.trials;
    ++it->second.counts[x.color];
  }

  rep.pass = rep.membership_failures == 0;
  for (auto& [key, data] : buckets) {
    OracleBucketReport br;
    br.index_key = key;
    br.branch = data.branch;
    br.trials = data.trials;
    const auto support = enumerate_members(data.xs, g, k);
    br.support = support.size();
    // Outputs that pass membership are in the support by definition; anything
    // else was already counted as a failure.
    const std::uint64_t cells_for_trials = data.trials / 5;
    if (support.size() >= 2 && cells_for_trials >= 2) {
      std::vector<std::uint64_t> counts(support.size(), 0);
      std::uint64_t in_support = 0;
      for (const auto& [colors, count] : data.counts) {
        Coloring c;
        c.k = k;
        c.color = colors;
        const std::int64_t idx = support_index(support, c);
        if (idx < 0) continue;  // non-member output, already a failure
        counts[static_cast<std::size_t>(idx)] += count;
        in_support += count;
      }
      if (in_support == 0) {
        // Every observation fell outside the support; membership accounting
        // already failed the report.
        rep.buckets.push_back(std::move(br));
        continue;
      }
      const std::uint64_t cells = std::min<std::uint64_t>(support.size(), cells_for_trials);
      const std::uint64_t block = (support.size() + cells - 1) / cells;
      std::vector<std::uint64_t> merged;
      std::vector<double> probs;
      for (std::size_t lo = 0; lo < counts.size(); lo += block) {
        const std::size_t hi = std::min(counts.size(), lo + block);
        std::uint64_t sum = 0;
        for (std::size_t i = lo; i < hi; ++i) sum += counts[i];
        merged.push_back(sum);
        probs.push_back(static_cast<double>(hi - lo) / static_cast<double>(support.size()));
      }
      br.merged_cells = merged.size();
      br.tested = true;
      br.chi = chi_square_gof(merged, probs);
      br.pass = br.chi.p_value > p_threshold;
      rep.min_p = std::min(rep.min_p, br.chi.p_value);
      rep.pass = rep.pass && br.pass;
    }
    rep.buckets.push_back(std::move(br));
  }
  return rep;
}

std::vector<OracleConfig> canonical_oracle_configs(std::uint64_t trial_scale) {
  std::vector<OracleConfig> configs;
  {
    // Path on three nodes, the first ignored: exercises the ignored removal.
    OracleConfig c;
    c.name = "remove_ignored/P3";
    c.g = make_path(3);
    c.k = 4;
    c.start = IndexState::all_unrestricted(3);
    c.start.set_ignored(0);
    c.trials = 60'000 * trial_scale;
    c.seed = 20'240'101;
    configs.push_back(std::move(c));
  }
  {
    // Path on three nodes with a frozen endpoint and an ignored endpoint.
    OracleConfig c;
    c.name = "remove_frozen/P3";
    c.g = make_path(3);
    c.k = 4;
    c.start = IndexState::all_unrestricted(3);
    c.start.set_frozen(0, 2);
    c.start.set_ignored(2);
    c.trials = 30'000 * trial_scale;
    c.seed = 20'240'202;
    configs.push_back(std::move(c));
  }
  {
    // Star with a forbidden center: exercises every forbidden-removal branch
    // reachable without frozen neighbors.
    OracleConfig c;
    c.name = "remove_forbidden/K1_3";
    c.g = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
    c.k = 13;
    c.start = IndexState::all_unrestricted(4);
    c.start.set_forbidden(0, 13);
    c.trials = 600'000 * trial_scale;
    c.seed = 14;
    configs.push_back(std::move(c));
  }
  {
    // Same star with one leaf frozen: adds the freeze-pair branch (a member
    // repeating the frozen color) to the distribution test.
    OracleConfig c;
    c.name = "remove_forbidden/K1_4_frozen";
    c.g = Graph::from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    c.k = 13;
    c.start = IndexState::all_unrestricted(5);
    c.start.set_frozen(1, 3);
    c.start.set_forbidden(0, 13);
    c.trials = 600'000 * trial_scale;
    c.seed = 14;
    configs.push_back(std::move(c));
  }
  return configs;
}

AuditReport invariant_audit(const Graph& g, int k, int runs, std::uint64_t seed) {
  AuditReport rep;
  rep.runs = static_cast<std::uint64_t>(runs);
  const int lower_d = k - g.max_degree();
  for (int run = 0; run < runs; ++run) {
    BitSource rng(seed + static_cast<std::uint64_t>(run));
    auto [x, xs] = initial_state(g, k, rng);
    const std::uint64_t cap = default_step_cap(g.node_count());
    for (std::uint64_t step = 0; step < cap; ++step) {
      const NodeSelection sel = select_node(xs);
      if (sel.kind == StepKind::Done) break;
      const IndexState before = xs;
      const Coloring x_before = x;
      StepOutcome outcome;
      try {
        outcome = rr_step(x, xs, g, rng);
      } catch (const std::logic_error&) {
        ++rep.partition_violations;
        break;
      }
      ++rep.steps;
      ++rep.branch_counts[std::string(step_branch_name(outcome.branch))];

      const MembershipReport mem = membership_report(x, xs, g);
      if (!mem.member) ++rep.membership_violations;
      rep.frozen_equal_edge_uses += mem.frozen_equal_only_edges;

      try {
        xs.validate();
      } catch (const std::logic_error&) {
        ++rep.partition_violations;
      }

      // The reported affected set must be exactly the entries that changed,
      // and a step must change something.
      const auto before_entries = before.entries();
      const auto after_entries = xs.entries();
      std::vector<int> changed;
      for (int v = 0; v < g.node_count(); ++v) {
        if (before_entries[v] != after_entries[v]) changed.push_back(v);
      }
      std::vector<int> reported = outcome.affected;
      std::sort(reported.begin(), reported.end());
      if (changed.empty() || changed != reported) ++rep.progress_violations;

      if (outcome.branch == StepBranch::ForbiddenFreezePair ||
          outcome.branch == StepBranch::ForbiddenFreezeGroup ||
          outcome.branch == StepBranch::ForbiddenFreezeConflictColor) {
        // Recompute the line-7 share sum from the pre-step state.
        ++rep.share_sum_checks;
        const int v = outcome.node;
        const int d = compute_d(before, g, v, k);
        const int n1 = compute_n1(x_before, before, g, v);
        Rational total(0);
        for (const auto& [u, h] : compute_shares(x_before, before, g, v)) total += h;
        if (!(total == Rational(n1 - (d - 1)))) ++rep.share_sum_violations;
      }
      if (outcome.recolor_d > 0) {
        rep.min_recolor_d = rep.min_recolor_d ? std::min(*rep.min_recolor_d, outcome.recolor_d)
                                              : outcome.recolor_d;
        if (outcome.recolor_d < lower_d) rep.d_lower_bound_ok = false;
      }
    }
  }
  rep.pass = rep.membership_violations == 0 && rep.partition_violations == 0 &&
             rep.share_sum_violations == 0 && rep.progress_violations == 0;
  return rep;
}

}  // namespace rrcolor
