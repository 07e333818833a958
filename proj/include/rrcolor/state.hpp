#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "rrcolor/bit_source.hpp"
#include "rrcolor/graph.hpp"
#include "rrcolor/rational.hpp"

namespace rrcolor {

// Total color assignment V -> {1..k}. Properness is the terminal condition of
// the sampler, never an invariant here.
struct Coloring {
  int k = 0;
  std::vector<int> color;

  friend bool operator==(const Coloring&, const Coloring&) = default;
};

// Bitset over node ids with a popcount and lowest-member lookup. Backs the
// four-way index partition so class selection is cheap and deterministic.
class NodeSet {
 public:
  NodeSet() = default;
  explicit NodeSet(int n) : words_((n + 63) / 64, 0) {}

  int size() const { return count_; }
  bool empty() const { return count_ == 0; }
  bool contains(int v) const { return (words_[v >> 6] >> (v & 63)) & 1; }

  void add(int v) {
    std::uint64_t& w = words_[v >> 6];
    const std::uint64_t bit = 1ull << (v & 63);
    if (!(w & bit)) {
      w |= bit;
      ++count_;
    }
  }
  void remove(int v) {
    std::uint64_t& w = words_[v >> 6];
    const std::uint64_t bit = 1ull << (v & 63);
    if (w & bit) {
      w &= ~bit;
      --count_;
    }
  }
  // Lowest member, or -1 when empty.
  int first() const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i]) return static_cast<int>(i * 64 + std::countr_zero(words_[i]));
    }
    return -1;
  }

 private:
  int count_ = 0;
  std::vector<std::uint64_t> words_;
};

enum class NodeClass : unsigned char { Unrestricted, Ignored, Frozen, Forbidden };

// The per-node index x*. Entries take values in {-k..-1} u {0} u {1..k} u {bot}:
// negative = forbidden that color, 0 = ignored, positive = frozen at that
// color, bot = unrestricted. Maintains the four-way partition incrementally
// plus the single active forbidden color (all forbidden entries share it).
class IndexState {
 public:
  static constexpr int kBot = std::numeric_limits<int>::min();

  static IndexState all_ignored(int n) { return IndexState(n, NodeClass::Ignored); }
  static IndexState all_unrestricted(int n) { return IndexState(n, NodeClass::Unrestricted); }

  int node_count() const { return static_cast<int>(class_.size()); }
  NodeClass node_class(int v) const { return class_[v]; }
  int frozen_color(int v) const { return color_[v]; }  // meaningful iff Frozen
  bool has_forbidden() const { return !forb_.empty(); }
  int forbidden_color() const { return active_forbidden_; }  // 0 when none

  const NodeSet& forbidden_set() const { return forb_; }
  const NodeSet& frozen_set() const { return froz_; }
  const NodeSet& ignored_set() const { return ign_; }
  int unrestricted_count() const {
    return node_count() - forb_.size() - froz_.size() - ign_.size();
  }
  bool all_unrestricted() const { return unrestricted_count() == node_count(); }

  void set_unrestricted(int v) {
    detach(v);
    class_[v] = NodeClass::Unrestricted;
  }
  void set_ignored(int v) {
    detach(v);
    class_[v] = NodeClass::Ignored;
    ign_.add(v);
  }
  void set_frozen(int v, int c) {
    detach(v);
    class_[v] = NodeClass::Frozen;
    color_[v] = c;
    froz_.add(v);
  }
  // b must match the active forbidden color when one is in effect.
  void set_forbidden(int v, int b) {
    if (!forb_.empty() && b != active_forbidden_) {
      throw std::logic_error("IndexState: second forbidden color introduced");
    }
    detach(v);
    class_[v] = NodeClass::Forbidden;
    active_forbidden_ = b;
    forb_.add(v);
  }

  // Signed-alphabet view of one entry; kBot stands in for the unrestricted mark.
  int entry(int v) const {
    switch (class_[v]) {
      case NodeClass::Unrestricted:
        return kBot;
      case NodeClass::Ignored:
        return 0;
      case NodeClass::Frozen:
        return color_[v];
      case NodeClass::Forbidden:
        return -active_forbidden_;
    }
    return kBot;
  }
  std::vector<int> entries() const {
    std::vector<int> out(class_.size());
    for (int v = 0; v < node_count(); ++v) out[v] = entry(v);
    return out;
  }

  // Full recount of the partition and active-color invariants; throws on any
  // inconsistency. Test/audit helper, not on the sampling path.
  void validate() const;

  friend bool operator==(const IndexState& a, const IndexState& b) {
    return a.entries() == b.entries();
  }

 private:
  IndexState(int n, NodeClass fill)
      : class_(n, fill), color_(n, 0), forb_(n), froz_(n), ign_(n) {
    if (fill == NodeClass::Ignored)
      for (int v = 0; v < n; ++v) ign_.add(v);
  }

  void detach(int v) {
    switch (class_[v]) {
      case NodeClass::Forbidden:
        forb_.remove(v);
        if (forb_.empty()) active_forbidden_ = 0;
        break;
      case NodeClass::Frozen:
        froz_.remove(v);
        break;
      case NodeClass::Ignored:
        ign_.remove(v);
        break;
      case NodeClass::Unrestricted:
        break;
    }
  }

  std::vector<NodeClass> class_;
  std::vector<int> color_;
  NodeSet forb_, froz_, ign_;
  int active_forbidden_ = 0;
};

// Weight-one membership test: frozen nodes match their pinned color, forbidden
// nodes avoid the active color, and every edge is satisfied (distinct
// endpoint colors, or both endpoints frozen at equal colors, or an ignored
// endpoint).
bool is_member(const Coloring& x, const IndexState& xs, const Graph& g);

// is_member plus a count of edges that are satisfied ONLY by the
// both-frozen-at-equal-colors disjunct (reachability instrumentation).
struct MembershipReport {
  bool member = false;
  int frozen_equal_only_edges = 0;
};
MembershipReport membership_report(const Coloring& x, const IndexState& xs, const Graph& g);

// All colorings with weight 1 under xs, in lexicographic order. Refuses when
// k^n exceeds cap; this is a desk-scale oracle.
std::vector<Coloring> enumerate_members(const IndexState& xs, const Graph& g, int k,
                                        std::uint64_t cap = 10'000'000);

// All-ignored index with every color drawn independently and uniformly.
std::pair<Coloring, IndexState> initial_state(const Graph& g, int k, BitSource& rng);

struct RunMetrics {
  std::uint64_t total_steps = 0;
  std::uint64_t steps_remove_forbidden = 0;
  std::uint64_t steps_remove_frozen = 0;
  std::uint64_t steps_remove_ignored = 0;
  std::uint64_t random_bits = 0;
  double wall_ms = 0.0;
  // Smallest d observed across recolor proposals (absent if none happened).
  std::optional<int> min_recolor_d;
  // (step, phi) pairs when potential tracing was requested.
  std::vector<std::pair<std::uint64_t, Rational>> potential_trace;
};

}  // namespace rrcolor
