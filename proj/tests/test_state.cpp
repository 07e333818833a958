#include <array>

#include "doctest.h"

#include "rrcolor/graph.hpp"
#include "rrcolor/state.hpp"
#include "rrcolor/stats.hpp"

using namespace rrcolor;

namespace {

Coloring make_coloring(int k, std::vector<int> colors) {
  Coloring c;
  c.k = k;
  c.color = std::move(colors);
  return c;
}

// Independent count oracle: chromatic polynomials of the generator families.
long long chromatic_path(int n, int k) {
  long long count = k;
  for (int i = 1; i < n; ++i) count *= (k - 1);
  return count;
}
long long chromatic_cycle(int n, int k) {
  long long pw = 1;
  for (int i = 0; i < n; ++i) pw *= (k - 1);
  return pw + (n % 2 == 0 ? 1 : -1) * (k - 1);
}
long long chromatic_complete(int n, int k) {
  long long count = 1;
  for (int i = 0; i < n; ++i) count *= (k - i);
  return count < 0 ? 0 : count;
}

}  // namespace

TEST_CASE("membership under the index semantics") {
  const Graph k3 = make_complete(3);

  // All-ignored: nothing is constrained.
  const IndexState ignored = IndexState::all_ignored(3);
  CHECK(is_member(make_coloring(3, {1, 1, 1}), ignored, k3));

  // All-unrestricted: a monochromatic edge has weight zero.
  const IndexState unr = IndexState::all_unrestricted(3);
  CHECK_FALSE(is_member(make_coloring(3, {1, 1, 2}), unr, k3));
  CHECK(is_member(make_coloring(3, {1, 2, 3}), unr, k3));

  // Frozen node pins its color.
  IndexState frozen = IndexState::all_unrestricted(3);
  frozen.set_frozen(0, 1);
  CHECK(is_member(make_coloring(3, {1, 2, 3}), frozen, k3));
  CHECK_FALSE(is_member(make_coloring(3, {2, 2, 3}), frozen, k3));
  CHECK_FALSE(is_member(make_coloring(3, {2, 1, 3}), frozen, k3));

  // Forbidden node avoids exactly the active color.
  IndexState forb = IndexState::all_unrestricted(3);
  forb.set_forbidden(0, 2);
  CHECK_FALSE(is_member(make_coloring(3, {2, 1, 3}), forb, k3));
  CHECK(is_member(make_coloring(3, {1, 2, 3}), forb, k3));
}

TEST_CASE("the frozen-equal edge disjunct is honored and counted") {
  const Graph p2 = make_path(2);
  IndexState xs = IndexState::all_unrestricted(2);
  xs.set_frozen(0, 3);
  xs.set_frozen(1, 3);
  const Coloring x = make_coloring(4, {3, 3});
  CHECK(is_member(x, xs, p2));
  const MembershipReport rep = membership_report(x, xs, p2);
  CHECK(rep.member);
  CHECK(rep.frozen_equal_only_edges == 1);
}

TEST_CASE("enumeration matches chromatic polynomial counts") {
  for (int k = 2; k <= 5; ++k) {
    for (int n = 3; n <= 5; ++n) {
      const Graph cyc = make_cycle(n);
      CHECK(enumerate_members(IndexState::all_unrestricted(n), cyc, k).size() ==
            static_cast<std::size_t>(chromatic_cycle(n, k)));
      const Graph path = make_path(n);
      CHECK(enumerate_members(IndexState::all_unrestricted(n), path, k).size() ==
            static_cast<std::size_t>(chromatic_path(n, k)));
      const Graph comp = make_complete(n);
      CHECK(enumerate_members(IndexState::all_unrestricted(n), comp, k).size() ==
            static_cast<std::size_t>(chromatic_complete(n, k)));
    }
  }
  // The three desk-scale supports used by the acceptance suite.
  CHECK(enumerate_members(IndexState::all_unrestricted(3), make_complete(3), 3).size() == 6);
  CHECK(enumerate_members(IndexState::all_unrestricted(3), make_path(3), 3).size() == 12);
  CHECK(enumerate_members(IndexState::all_unrestricted(4), make_cycle(4), 3).size() == 18);
  // Unconstrained index: every assignment.
  CHECK(enumerate_members(IndexState::all_ignored(4), make_cycle(4), 3).size() == 81);
}

TEST_CASE("enumeration is lexicographic and cap-guarded") {
  const Graph p2 = make_path(2);
  const auto all = enumerate_members(IndexState::all_ignored(2), p2, 2);
  REQUIRE(all.size() == 4);
  CHECK(all[0].color == std::vector<int>{1, 1});
  CHECK(all[1].color == std::vector<int>{1, 2});
  CHECK(all[2].color == std::vector<int>{2, 1});
  CHECK(all[3].color == std::vector<int>{2, 2});

  const Graph big = make_cycle(30);
  CHECK_THROWS_AS(enumerate_members(IndexState::all_unrestricted(30), big, 3),
                  std::runtime_error);
  CHECK_THROWS_AS(enumerate_members(IndexState::all_ignored(2), p2, 3, 8), std::runtime_error);
}

TEST_CASE("initial state is all-ignored with uniform colors") {
  const Graph k3 = make_complete(3);
  BitSource rng(5);
  const auto [x, xs] = initial_state(k3, 3, rng);
  CHECK(xs.ignored_set().size() == 3);
  CHECK(xs.forbidden_set().empty());
  CHECK(xs.frozen_set().empty());
  for (int v = 0; v < 3; ++v) {
    CHECK(x.color[v] >= 1);
    CHECK(x.color[v] <= 3);
  }

  // One uniform draw per node: with k a power of two, exactly n*log2(k) bits.
  const Graph p5 = make_path(5);
  BitSource rng8(6);
  initial_state(p5, 8, rng8);
  CHECK(rng8.bits_consumed() == 5 * 3);

  // Single node, k = 3: color frequencies are uniform.
  const Graph single = make_path(1);
  std::array<std::uint64_t, 3> counts{};
  BitSource rng3(7);
  for (int i = 0; i < 30000; ++i) {
    const auto [c, ignored_xs] = initial_state(single, 3, rng3);
    ++counts[static_cast<std::size_t>(c.color[0] - 1)];
  }
  CHECK(chi_square_uniform(counts).p_value > 1e-3);
}

TEST_CASE("index partition bookkeeping") {
  IndexState xs = IndexState::all_ignored(4);
  xs.validate();
  CHECK(xs.entry(0) == 0);

  xs.set_frozen(1, 2);
  xs.set_forbidden(2, 3);
  xs.set_unrestricted(0);
  xs.validate();
  CHECK(xs.entry(0) == IndexState::kBot);
  CHECK(xs.entry(1) == 2);
  CHECK(xs.entry(2) == -3);
  CHECK(xs.entry(3) == 0);
  CHECK(xs.forbidden_color() == 3);
  CHECK(xs.unrestricted_count() == 1);

  // A second forbidden color is structurally impossible.
  CHECK_THROWS_AS(xs.set_forbidden(3, 1), std::logic_error);
  // Same color is fine.
  xs.set_forbidden(3, 3);
  xs.validate();

  // Clearing the last forbidden node resets the active color.
  xs.set_unrestricted(2);
  xs.set_unrestricted(3);
  CHECK_FALSE(xs.has_forbidden());
  CHECK(xs.forbidden_color() == 0);
  xs.set_forbidden(0, 1);
  CHECK(xs.forbidden_color() == 1);
  xs.validate();
}
