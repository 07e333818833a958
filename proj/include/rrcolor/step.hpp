#pragma once

#include <string_view>
#include <vector>

#include "rrcolor/bit_source.hpp"
#include "rrcolor/graph.hpp"
#include "rrcolor/rational.hpp"
#include "rrcolor/state.hpp"

namespace rrcolor {

// Raised when the protocol cannot take a step as specified (recolor
// probability 1/d undefined because d < 1). Only reachable when k is far
// below the linear-time regime; never emits a biased sample.
class protocol_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class StepKind : unsigned char { RemoveForbidden, RemoveFrozen, RemoveIgnored, Done };

// One label per branch of the three procedure listings. Part of the public
// test surface so branch coverage can be asserted.
enum class StepBranch : unsigned char {
  None,
  IgnoredAccept,            // no conflicting neighbor; v becomes unrestricted
  IgnoredConflict,          // search found a matching neighbor; forbid/freeze/redraw
  FrozenConvert,            // freeze -> ignore, unrestricted neighbors forbidden
  ForbiddenFrozenMatch,     // a neighbor is frozen at the forbidden color; just clear
  ForbiddenKeptColor,       // recolor proposal declined; clear
  ForbiddenConflictSearch,  // proposal hit an occupied color; forbid/freeze/redraw
  ForbiddenAccept,          // proposal accepted; clear
  ForbiddenFreezePair,      // chosen neighbor repeats a frozen color; freeze it and v
  ForbiddenFreezeGroup,     // chosen neighbor repeats inside U; freeze its color group
  ForbiddenFreezeConflictColor,  // chosen neighbor holds the forbidden color itself
};

std::string_view step_kind_name(StepKind k);
std::string_view step_branch_name(StepBranch b);

struct StepOutcome {
  StepKind kind = StepKind::Done;
  StepBranch branch = StepBranch::None;
  int node = -1;
  std::vector<int> affected;  // nodes whose index entries changed
  int recolor_d = 0;          // d at the recolor proposal, 0 if not reached
};

// d = n2 - n3: colors not pinned by frozen neighbors of v, minus the
// neighbors of v that are neither frozen nor ignored.
int compute_d(const IndexState& xs, const Graph& g, int v, int k);

// Number of colors valid for v given x off v: excludes the active forbidden
// color and every non-ignored neighbor's current color.
int compute_n1(const Coloring& x, const IndexState& xs, const Graph& g, int v);

// Share of the surplus n1 - (d - 1) carried by each neighbor in U(x*)
// (neighbors neither frozen nor ignored, adjacency order): 1 when the
// neighbor repeats the forbidden color or a frozen neighbor's color, else
// (g-1)/g over its same-color group within U.
std::vector<std::pair<int, Rational>> compute_shares(const Coloring& x, const IndexState& xs,
                                                     const Graph& g, int v);

struct NodeSelection {
  StepKind kind = StepKind::Done;
  int node = -1;
};

// Forbidden first, then frozen, then ignored; lowest id within the class.
NodeSelection select_node(const IndexState& xs);

// Weight bookkeeping for the forbidden removal. Balanced (shipped) applies
// the (d-1)/n1 acceptance before the occupied-color branch and, when the
// chosen neighbor repeats inside U, re-pins v at the group color; that makes
// the output exactly uniform over each output index. Unbalanced keeps the
// plainer shape (unconditional occupied-color search, v left at its proposed
// color), which the distribution oracles demonstrably reject: the recolor
// proposal folds n1 inputs onto each state, and without the correction that
// multiplicity leaks into the conflict branch.
enum class ForbiddenVariant : unsigned char { Balanced, Unbalanced };

StepOutcome remove_ignored(Coloring& x, IndexState& xs, const Graph& g, int v, BitSource& rng);
StepOutcome remove_frozen(Coloring& x, IndexState& xs, const Graph& g, int v, BitSource& rng);
StepOutcome remove_forbidden(Coloring& x, IndexState& xs, const Graph& g, int v, BitSource& rng,
                             ForbiddenVariant variant = ForbiddenVariant::Balanced);

// Dispatches on select_node; Done leaves the pair untouched.
StepOutcome rr_step(Coloring& x, IndexState& xs, const Graph& g, BitSource& rng,
                    ForbiddenVariant variant = ForbiddenVariant::Balanced);

}  // namespace rrcolor
