#include "doctest.h"

#include "rrcolor/graph.hpp"
#include "rrcolor/sampler.hpp"

using namespace rrcolor;

TEST_CASE("a single node terminates in exactly one step") {
  const Graph g = make_path(1);
  BitSource rng(9);
  const auto r = rr_sample(g, 5, rng);
  CHECK(r.status == SampleStatus::Ok);
  CHECK(r.metrics.total_steps == 1);
  CHECK(r.metrics.steps_remove_ignored == 1);
  CHECK(r.metrics.steps_remove_forbidden == 0);
  CHECK(r.metrics.steps_remove_frozen == 0);
}

TEST_CASE("samples are proper and metrics are consistent") {
  const Graph g = make_cycle(8);
  const IndexState target = IndexState::all_unrestricted(8);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    BitSource rng(seed);
    const auto r = rr_sample(g, 13, rng);
    REQUIRE(r.status == SampleStatus::Ok);
    CHECK(is_member(r.coloring, target, g));
    CHECK(r.metrics.total_steps == r.metrics.steps_remove_forbidden +
                                       r.metrics.steps_remove_frozen +
                                       r.metrics.steps_remove_ignored);
    CHECK(r.metrics.total_steps >= 8);  // every node passes through at least one removal
    CHECK(r.metrics.random_bits == rng.bits_consumed());
    CHECK(r.metrics.random_bits >= 8 * 4);  // at least the initial draw
  }
}

TEST_CASE("identical seeds give identical samples and metrics") {
  const Graph g = make_random_regular(12, 3, 4);
  BitSource a(321), b(321);
  const auto ra = rr_sample(g, 13, a);
  const auto rb = rr_sample(g, 13, b);
  CHECK(ra.coloring == rb.coloring);
  CHECK(ra.metrics.total_steps == rb.metrics.total_steps);
  CHECK(ra.metrics.random_bits == rb.metrics.random_bits);
  CHECK(ra.metrics.steps_remove_forbidden == rb.metrics.steps_remove_forbidden);
}

TEST_CASE("an uncolorable graph hits the budget and emits nothing") {
  const Graph g = make_complete(3);  // odd cycle, not 2-colorable
  BitSource rng(1);
  SampleOptions opts;
  opts.step_cap = 20'000;
  const auto r = rr_sample(g, 2, rng, opts);
  CHECK(r.status == SampleStatus::BudgetExceeded);
  CHECK(r.coloring.color.empty());
  CHECK(r.metrics.total_steps >= opts.step_cap);
}

TEST_CASE("mean steps on the four-cycle sit inside the drift bound with slack") {
  // epsilon(13, 2) = 25/58; expected steps are at most n/epsilon, and the
  // empirical mean should clear even half that with room.
  const Graph g = make_cycle(4);
  std::uint64_t steps = 0;
  const int runs = 400;
  for (int i = 0; i < runs; ++i) {
    BitSource rng(8000 + static_cast<std::uint64_t>(i));
    const auto r = rr_sample(g, 13, rng);
    REQUIRE(r.status == SampleStatus::Ok);
    steps += r.metrics.total_steps;
  }
  const double mean_per_node = static_cast<double>(steps) / runs / 4.0;
  const double bound = 58.0 / 25.0;  // 1/epsilon
  CHECK(mean_per_node <= 2.0 * bound);
}

TEST_CASE("k below two is rejected") {
  const Graph g = make_path(1);
  BitSource rng(0);
  CHECK_THROWS_AS(rr_sample(g, 1, rng), std::invalid_argument);
}

TEST_CASE("the observer sees every step") {
  struct Counter final : StepObserver {
    int starts = 0;
    std::uint64_t steps = 0;
    void on_start(const Coloring&, const IndexState& xs) override {
      ++starts;
      CHECK(xs.ignored_set().size() == xs.node_count());
    }
    void on_step(std::uint64_t i, const StepOutcome& o, const Coloring&,
                 const IndexState&) override {
      ++steps;
      CHECK(i == steps);
      CHECK(o.kind != StepKind::Done);
    }
  };
  const Graph g = make_cycle(6);
  Counter obs;
  SampleOptions opts;
  opts.observer = &obs;
  BitSource rng(5);
  const auto r = rr_sample(g, 13, rng, opts);
  CHECK(obs.starts == 1);
  CHECK(obs.steps == r.metrics.total_steps);
}
