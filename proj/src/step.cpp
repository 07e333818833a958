#include "rrcolor/step.hpp"

#include <algorithm>

namespace rrcolor {

std::string_view step_kind_name(StepKind k) {
  switch (k) {
    case StepKind::RemoveForbidden:
      return "remove_forbidden";
    case StepKind::RemoveFrozen:
      return "remove_frozen";
    case StepKind::RemoveIgnored:
      return "remove_ignored";
    case StepKind::Done:
      return "done";
  }
  return "?";
}

std::string_view step_branch_name(StepBranch b) {
  switch (b) {
    case StepBranch::None:
      return "none";
    case StepBranch::IgnoredAccept:
      return "ignored_accept";
    case StepBranch::IgnoredConflict:
      return "ignored_conflict";
    case StepBranch::FrozenConvert:
      return "frozen_convert";
    case StepBranch::ForbiddenFrozenMatch:
      return "forbidden_frozen_match";
    case StepBranch::ForbiddenKeptColor:
      return "forbidden_kept_color";
    case StepBranch::ForbiddenConflictSearch:
      return "forbidden_conflict_search";
    case StepBranch::ForbiddenAccept:
      return "forbidden_accept";
    case StepBranch::ForbiddenFreezePair:
      return "forbidden_freeze_pair";
    case StepBranch::ForbiddenFreezeGroup:
      return "forbidden_freeze_group";
    case StepBranch::ForbiddenFreezeConflictColor:
      return "forbidden_freeze_conflict_color";
  }
  return "?";
}

namespace {

int redraw_color(Coloring& x, int v, BitSource& rng) {
  x.color[v] = 1 + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(x.k)));
  return x.color[v];
}

// Distinct colors pinned on frozen neighbors of v.
std::vector<int> frozen_neighbor_colors(const IndexState& xs, const Graph& g, int v) {
  std::vector<int> colors;
  for (int u : g.neighbors(v)) {
    if (xs.node_class(u) == NodeClass::Frozen) colors.push_back(xs.frozen_color(u));
  }
  std::sort(colors.begin(), colors.end());
  colors.erase(std::unique(colors.begin(), colors.end()), colors.end());
  return colors;
}

// Neighbors of v that are neither frozen nor ignored, adjacency order.
std::vector<int> u_set(const IndexState& xs, const Graph& g, int v) {
  std::vector<int> out;
  for (int u : g.neighbors(v)) {
    const NodeClass c = xs.node_class(u);
    if (c == NodeClass::Unrestricted || c == NodeClass::Forbidden) out.push_back(u);
  }
  return out;
}

}  // namespace

int compute_d(const IndexState& xs, const Graph& g, int v, int k) {
  const int n2 = k - static_cast<int>(frozen_neighbor_colors(xs, g, v).size());
  int n3 = 0;
  for (int u : g.neighbors(v)) {
    const NodeClass c = xs.node_class(u);
    if (c == NodeClass::Unrestricted || c == NodeClass::Forbidden) ++n3;
  }
  return n2 - n3;
}

int compute_n1(const Coloring& x, const IndexState& xs, const Graph& g, int v) {
  if (xs.node_class(v) != NodeClass::Forbidden) {
    throw std::logic_error("compute_n1: node is not forbidden");
  }
  std::vector<int> blocked{xs.forbidden_color()};
  for (int u : g.neighbors(v)) {
    if (xs.node_class(u) != NodeClass::Ignored) blocked.push_back(x.color[u]);
  }
  std::sort(blocked.begin(), blocked.end());
  blocked.erase(std::unique(blocked.begin(), blocked.end()), blocked.end());
  return x.k - static_cast<int>(blocked.size());
}

std::vector<std::pair<int, Rational>> compute_shares(const Coloring& x, const IndexState& xs,
                                                     const Graph& g, int v) {
  if (xs.node_class(v) != NodeClass::Forbidden) {
    throw std::logic_error("compute_shares: node is not forbidden");
  }
  const int b = xs.forbidden_color();
  const std::vector<int> frozen_colors = frozen_neighbor_colors(xs, g, v);
  const std::vector<int> members = u_set(xs, g, v);

  std::vector<std::pair<int, Rational>> shares;
  shares.reserve(members.size());
  for (int u : members) {
    const int c = x.color[u];
    const bool repeats_pinned =
        c == b || std::binary_search(frozen_colors.begin(), frozen_colors.end(), c);
    if (repeats_pinned) {
      shares.emplace_back(u, Rational(1));
      continue;
    }
    int group = 0;
    for (int w : members)
      if (x.color[w] == c) ++group;
    shares.emplace_back(u, Rational(group - 1, group));
  }
  return shares;
}

NodeSelection select_node(const IndexState& xs) {
  if (!xs.forbidden_set().empty()) return {StepKind::RemoveForbidden, xs.forbidden_set().first()};
  if (!xs.frozen_set().empty()) return {StepKind::RemoveFrozen, xs.frozen_set().first()};
  if (!xs.ignored_set().empty()) return {StepKind::RemoveIgnored, xs.ignored_set().first()};
  return {StepKind::Done, -1};
}

StepOutcome remove_ignored(Coloring& x, IndexState& xs, const Graph& g, int v, BitSource& rng) {
  if (xs.node_class(v) != NodeClass::Ignored || !xs.forbidden_set().empty() ||
      !xs.frozen_set().empty()) {
    throw std::logic_error("remove_ignored: precondition violated");
  }
  StepOutcome out{StepKind::RemoveIgnored, StepBranch::None, v, {}, 0};

  std::vector<int> candidates;  // unrestricted neighbors (nothing is frozen here)
  for (int u : g.neighbors(v)) {
    if (xs.node_class(u) == NodeClass::Unrestricted) candidates.push_back(u);
  }
  const int mine = x.color[v];
  auto [prefix, found] = rng.shuffled_prefix_search(std::span<const int>(candidates),
                                                    [&](int u) { return x.color[u] == mine; });
  if (!found) {
    xs.set_unrestricted(v);
    out.branch = StepBranch::IgnoredAccept;
    out.affected.push_back(v);
    return out;
  }
  // Conflict: searched-before neighbors can't have the color, the hit must.
  // v stays ignored and its color is redrawn.
  for (int u : prefix) {
    xs.set_forbidden(u, mine);
    out.affected.push_back(u);
  }
  xs.set_frozen(*found, mine);
  out.affected.push_back(*found);
  redraw_color(x, v, rng);
  out.branch = StepBranch::IgnoredConflict;
  return out;
}

StepOutcome remove_frozen(Coloring& x, IndexState& xs, const Graph& g, int v, BitSource& rng) {
  if (xs.node_class(v) != NodeClass::Frozen || !xs.forbidden_set().empty()) {
    throw std::logic_error("remove_frozen: precondition violated");
  }
  if (x.color[v] != xs.frozen_color(v)) {
    throw std::logic_error("remove_frozen: state disagrees with frozen color");
  }
  StepOutcome out{StepKind::RemoveFrozen, StepBranch::FrozenConvert, v, {}, 0};
  const int pinned = x.color[v];
  for (int u : g.neighbors(v)) {
    if (xs.node_class(u) == NodeClass::Unrestricted) {
      xs.set_forbidden(u, pinned);
      out.affected.push_back(u);
    }
  }
  xs.set_ignored(v);
  out.affected.push_back(v);
  redraw_color(x, v, rng);
  return out;
}

StepOutcome remove_forbidden(Coloring& x, IndexState& xs, const Graph& g, int v, BitSource& rng,
                             ForbiddenVariant variant) {
  if (xs.node_class(v) != NodeClass::Forbidden) {
    throw std::logic_error("remove_forbidden: precondition violated");
  }
  const int b = xs.forbidden_color();
  StepOutcome out{StepKind::RemoveForbidden, StepBranch::None, v, {}, 0};

  // A neighbor frozen at b already carries the restriction.
  for (int u : g.neighbors(v)) {
    if (xs.node_class(u) == NodeClass::Frozen && xs.frozen_color(u) == b) {
      xs.set_unrestricted(v);
      out.branch = StepBranch::ForbiddenFrozenMatch;
      out.affected.push_back(v);
      return out;
    }
  }

  // Propose recoloring v to b with probability 1/d.
  const int d = compute_d(xs, g, v, x.k);
  if (d < 1) {
    throw protocol_error("recolor probability 1/d undefined (d = " + std::to_string(d) +
                         "); k is too small for this graph");
  }
  out.recolor_d = d;
  if (rng.bernoulli_rational(1, d)) x.color[v] = b;

  // Proposal declined: the restriction lifts for free.
  if (x.color[v] != b) {
    xs.set_unrestricted(v);
    out.branch = StepBranch::ForbiddenKeptColor;
    out.affected.push_back(v);
    return out;
  }

  const std::vector<int> members = u_set(xs, g, v);
  const bool occupied =
      std::any_of(members.begin(), members.end(), [&](int u) { return x.color[u] == b; });

  // Occupied-color search: find the blocking member by uniform search without
  // replacement, forbid the searched-before prefix, freeze the hit, and send
  // v back to ignored with a fresh color. Already-forbidden members may sit
  // in the prefix; re-forbidding them changes nothing.
  auto conflict_search = [&]() {
    auto [prefix, found] = rng.shuffled_prefix_search(std::span<const int>(members),
                                                      [&](int u) { return x.color[u] == b; });
    for (int u : prefix) {
      if (xs.node_class(u) != NodeClass::Forbidden) out.affected.push_back(u);
      xs.set_forbidden(u, b);
    }
    xs.set_frozen(*found, b);
    out.affected.push_back(*found);
    xs.set_ignored(v);
    out.affected.push_back(v);
    redraw_color(x, v, rng);
    out.branch = StepBranch::ForbiddenConflictSearch;
  };

  const int n1 = compute_n1(x, xs, g, v);
  if (n1 < 1 || n1 < d - 1) {
    throw std::logic_error("remove_forbidden: impossible n1 for a weight-one state");
  }

  if (variant == ForbiddenVariant::Unbalanced) {
    // Plain shape, kept for the oracle tests to reject: search on conflict,
    // then the acceptance coin, with v left at b in the group branch. The
    // recolor proposal maps n1 inputs onto each state, and this ordering
    // leaks that multiplicity into the search branch.
    if (occupied) {
      conflict_search();
      return out;
    }
    if (rng.bernoulli_rational(d - 1, n1)) {
      xs.set_unrestricted(v);
      out.branch = StepBranch::ForbiddenAccept;
      out.affected.push_back(v);
      return out;
    }
  } else {
    // Accept the proposal with probability (d-1)/n1 FIRST. That flattens the
    // n1 input multiplicity on both sides: the accepted piece either stands
    // as is (no conflict) or is re-indexed by the search; the rejected piece
    // is uniform over all proposed states and goes to the share selection.
    if (rng.bernoulli_rational(d - 1, n1)) {
      if (occupied) {
        conflict_search();
        return out;
      }
      xs.set_unrestricted(v);
      out.branch = StepBranch::ForbiddenAccept;
      out.affected.push_back(v);
      return out;
    }
  }

  // Share selection over U with probability proportional to each member's
  // share of the surplus n1 - (d-1). Members repeating a pinned color carry
  // share 1; a repeated-color group of size g carries (g-1)/g per member,
  // i.e. an integer g-1 collectively, and the output never depends on which
  // group member is picked. Aggregating groups keeps every threshold an
  // exact small integer.
  const auto shares = compute_shares(x, xs, g, v);
  Rational total_share(0);
  for (const auto& [u, h] : shares) total_share += h;
  if (!(total_share == Rational(n1 - (d - 1)))) {
    throw std::logic_error("remove_forbidden: share sum != n1 - (d - 1)");
  }
  struct Entry {
    int member;  // a representative
    long long weight;
    bool unit_share;  // repeats a pinned color (weight-1 singleton)
  };
  std::vector<Entry> entries;
  std::vector<int> seen_group_colors;
  for (const auto& [u, h] : shares) {
    if (h == Rational(1)) {
      entries.push_back({u, 1, true});
    } else if (!h.is_zero()) {
      const int c = x.color[u];
      if (std::find(seen_group_colors.begin(), seen_group_colors.end(), c) ==
          seen_group_colors.end()) {
        seen_group_colors.push_back(c);
        entries.push_back({u, h.den() - 1, false});  // h = (g-1)/g in lowest terms has den g
      }
    }
  }
  std::uint64_t total_weight = 0;
  for (const auto& e : entries) total_weight += static_cast<std::uint64_t>(e.weight);
  if (total_weight != static_cast<std::uint64_t>(n1 - (d - 1))) {
    throw std::logic_error("remove_forbidden: aggregated share weights off");
  }
  std::uint64_t ticket = rng.uniform_int(total_weight);
  std::size_t pick = 0;
  while (ticket >= static_cast<std::uint64_t>(entries[pick].weight)) {
    ticket -= static_cast<std::uint64_t>(entries[pick].weight);
    ++pick;
  }
  const int chosen = entries[pick].member;
  const int chosen_color = x.color[chosen];

  // Members holding the forbidden color itself (possible only on the
  // balanced path, where rejected conflict states reach the selection) must
  // be pinned whenever v freezes at b: the edge factors to v demand it.
  auto freeze_conflict_group = [&]() {
    for (int u : members) {
      if (x.color[u] == b) {
        xs.set_frozen(u, b);
        out.affected.push_back(u);
      }
    }
  };

  if (chosen_color == b) {
    // The chosen member repeats the forbidden color: freeze that whole group
    // and pin v at b; the frozen-equal edge disjunct carries the v-group
    // edges. State unchanged.
    freeze_conflict_group();
    xs.set_frozen(v, b);
    out.affected.push_back(v);
    out.branch = StepBranch::ForbiddenFreezeConflictColor;
    return out;
  }

  if (entries[pick].unit_share) {
    // The chosen member repeats a frozen neighbor's color: freeze it and v.
    freeze_conflict_group();
    xs.set_frozen(chosen, chosen_color);
    out.affected.push_back(chosen);
    xs.set_frozen(v, b);
    out.affected.push_back(v);
    out.branch = StepBranch::ForbiddenFreezePair;
    return out;
  }

  // The chosen member repeats inside U: freeze its whole color group, forbid
  // the remaining members the color b, and re-pin v at the group color so the
  // index records that no other member holds it (its edge factors exclude it
  // from the rest). The unbalanced variant leaves v at the proposed color
  // instead, which widens the support past the reachable states.
  freeze_conflict_group();
  for (int u : members) {
    if (x.color[u] == b) continue;  // frozen above
    if (x.color[u] == chosen_color) {
      xs.set_frozen(u, chosen_color);
      out.affected.push_back(u);
    } else {
      if (xs.node_class(u) != NodeClass::Forbidden) out.affected.push_back(u);
      xs.set_forbidden(u, b);
    }
  }
  if (variant == ForbiddenVariant::Balanced) {
    x.color[v] = chosen_color;
    xs.set_frozen(v, chosen_color);
  } else {
    xs.set_frozen(v, b);
  }
  out.affected.push_back(v);
  out.branch = StepBranch::ForbiddenFreezeGroup;
  return out;
}

StepOutcome rr_step(Coloring& x, IndexState& xs, const Graph& g, BitSource& rng,
                    ForbiddenVariant variant) {
  const NodeSelection sel = select_node(xs);
  switch (sel.kind) {
    case StepKind::RemoveForbidden:
      return remove_forbidden(x, xs, g, sel.node, rng, variant);
    case StepKind::RemoveFrozen:
      return remove_frozen(x, xs, g, sel.node, rng);
    case StepKind::RemoveIgnored:
      return remove_ignored(x, xs, g, sel.node, rng);
    case StepKind::Done:
      break;
  }
  return StepOutcome{StepKind::Done, StepBranch::None, -1, {}, 0};
}

}  // namespace rrcolor
