#include "rrcolor/state.hpp"

#include <stdexcept>

namespace rrcolor {

void IndexState::validate() const {
  const int n = node_count();
  int nf = 0, nz = 0, ni = 0;
  for (int v = 0; v < n; ++v) {
    const NodeClass c = class_[v];
    if (forb_.contains(v) != (c == NodeClass::Forbidden) ||
        froz_.contains(v) != (c == NodeClass::Frozen) ||
        ign_.contains(v) != (c == NodeClass::Ignored)) {
      throw std::logic_error("IndexState: partition set disagrees with class array");
    }
    if (c == NodeClass::Forbidden) ++nf;
    if (c == NodeClass::Frozen) {
      ++nz;
      if (color_[v] < 1) throw std::logic_error("IndexState: frozen node without a color");
    }
    if (c == NodeClass::Ignored) ++ni;
  }
  if (nf != forb_.size() || nz != froz_.size() || ni != ign_.size()) {
    throw std::logic_error("IndexState: partition counts off");
  }
  if (forb_.empty() != (active_forbidden_ == 0)) {
    throw std::logic_error("IndexState: active forbidden color out of sync");
  }
}

namespace {

// Shared edge walk for both membership entry points. Returns false on the
// first hard violation; counts edges rescued only by the frozen-equal
// disjunct when asked to.
bool check_member(const Coloring& x, const IndexState& xs, const Graph& g,
                  int* frozen_equal_only) {
  const int n = g.node_count();
  const int b = xs.forbidden_color();
  for (int v = 0; v < n; ++v) {
    const NodeClass c = xs.node_class(v);
    if (c == NodeClass::Frozen && x.color[v] != xs.frozen_color(v)) return false;
    if (c == NodeClass::Forbidden && x.color[v] == b) return false;
  }
  for (int v = 0; v < n; ++v) {
    for (int w : g.neighbors(v)) {
      if (w <= v) continue;
      if (xs.node_class(v) == NodeClass::Ignored || xs.node_class(w) == NodeClass::Ignored) {
        continue;
      }
      if (x.color[v] != x.color[w]) continue;
      const bool frozen_equal = xs.node_class(v) == NodeClass::Frozen &&
                                xs.node_class(w) == NodeClass::Frozen &&
                                xs.frozen_color(v) == x.color[v] &&
                                xs.frozen_color(w) == x.color[w];
      if (!frozen_equal) return false;
      if (frozen_equal_only) ++*frozen_equal_only;
    }
  }
  return true;
}

}  // namespace

bool is_member(const Coloring& x, const IndexState& xs, const Graph& g) {
  return check_member(x, xs, g, nullptr);
}

MembershipReport membership_report(const Coloring& x, const IndexState& xs, const Graph& g) {
  MembershipReport r;
  int uses = 0;
  r.member = check_member(x, xs, g, &uses);
  r.frozen_equal_only_edges = r.member ? uses : 0;
  return r;
}

std::vector<Coloring> enumerate_members(const IndexState& xs, const Graph& g, int k,
                                        std::uint64_t cap) {
  if (k < 1) throw std::invalid_argument("enumerate_members: k < 1");
  const int n = g.node_count();
  // Refuse before touching k^n work.
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    if (total > cap / static_cast<std::uint64_t>(k)) {
      throw std::runtime_error("enumerate_members: k^n exceeds enumeration cap");
    }
    total *= static_cast<std::uint64_t>(k);
  }
  if (total > cap) throw std::runtime_error("enumerate_members: k^n exceeds enumeration cap");

  std::vector<Coloring> out;
  Coloring x;
  x.k = k;
  x.color.assign(n, 1);
  for (;;) {
    if (is_member(x, xs, g)) out.push_back(x);
    int i = n - 1;
    while (i >= 0 && x.color[i] == k) {
      x.color[i] = 1;
      --i;
    }
    if (i < 0) break;
    ++x.color[i];
  }
  return out;
}

std::pair<Coloring, IndexState> initial_state(const Graph& g, int k, BitSource& rng) {
  if (k < 1) throw std::invalid_argument("initial_state: k < 1");
  const int n = g.node_count();
  Coloring x;
  x.k = k;
  x.color.resize(n);
  for (int v = 0; v < n; ++v) {
    x.color[v] = 1 + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(k)));
  }
  return {std::move(x), IndexState::all_ignored(n)};
}

}  // namespace rrcolor
