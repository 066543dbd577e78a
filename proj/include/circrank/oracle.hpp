#pragma once

// Exhaustive-search oracles for cross-checking the flow-based solvers.
// These deliberately share no flow machinery with mcnf.hpp: they search the
// box 0 <= x <= q of integral arc-flow vectors directly, pruning only with
// facts that are immediate from the definitions (per-node balance must stay
// repairable by the remaining arc capacities, and the total can never beat
// the per-node throughput bound).  Exponential in the worst case, by
// design.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "circrank/rational.hpp"
#include "circrank/vote_graph.hpp"

namespace circrank {

struct EnumerationBudget {
  /// Upper bound on the product of (capacity + 1) over all arcs; the naive
  /// size of the search box.  Enumeration refuses instances above this.
  std::uint64_t max_product = std::uint64_t{1} << 24;
};

namespace oracle_detail {

struct NodeState {
  long long out_done = 0, in_done = 0;      // flow already assigned
  long long out_remcap = 0, in_remcap = 0;  // capacity still undecided
};

inline long long throughput(const NodeState& s) {
  return std::min(s.out_done + s.out_remcap, s.in_done + s.in_remcap);
}

// Depth-first sweep over all integral circulations.  Flow values are tried
// high-first so large circulations are found early.  With no target,
// max_total() returns the exact maximum.  With a target it answers a
// reachability question instead: the return value equals the target iff
// some circulation attains it (branches that cannot reach the target are
// skipped, so the return is not the true maximum otherwise).
class CirculationSearch {
 public:
  CirculationSearch(int n, const std::vector<Arc>& arcs, std::vector<long long> caps)
      : arcs_(arcs), caps_(std::move(caps)), nodes_(n) {
    for (std::size_t i = 0; i < arcs_.size(); ++i) {
      nodes_[arcs_[i].tail].out_remcap += caps_[i];
      nodes_[arcs_[i].head].in_remcap += caps_[i];
    }
    flow_.assign(arcs_.size(), 0);
  }

  long long max_total(std::optional<long long> target) {
    best_ = 0;  // the zero circulation is always feasible
    target_ = target;
    best_flow_.assign(arcs_.size(), 0);
    descend(0, 0);
    return best_;
  }

  const std::vector<long long>& best_flow() const { return best_flow_; }

 private:
  long long bound() const {
    long long b = 0;
    for (const NodeState& s : nodes_) b += throughput(s);
    return b;
  }

  bool balanced_feasible(int v) const {
    const NodeState& s = nodes_[v];
    long long imbalance = s.out_done - s.in_done;
    return imbalance <= s.in_remcap && -imbalance <= s.out_remcap;
  }

  void descend(std::size_t i, long long total) {
    if (target_ && best_ >= *target_) return;
    if (i == arcs_.size()) {
      // The feasibility prune guarantees perfect balance here.
      if (total > best_) {
        best_ = total;
        best_flow_ = flow_;
      }
      return;
    }
    const long long optimistic = bound();
    if (target_ ? optimistic < *target_ : optimistic <= best_) return;

    const Arc arc = arcs_[i];
    NodeState& tail = nodes_[arc.tail];
    NodeState& head = nodes_[arc.head];
    tail.out_remcap -= caps_[i];
    head.in_remcap -= caps_[i];
    for (long long f = caps_[i]; f >= 0; --f) {
      tail.out_done += f;
      head.in_done += f;
      flow_[i] = f;
      if (balanced_feasible(arc.tail) && balanced_feasible(arc.head)) {
        descend(i + 1, total + f);
      }
      tail.out_done -= f;
      head.in_done -= f;
    }
    flow_[i] = 0;
    tail.out_remcap += caps_[i];
    head.in_remcap += caps_[i];
  }

  const std::vector<Arc>& arcs_;
  std::vector<long long> caps_;
  std::vector<NodeState> nodes_;
  std::vector<long long> flow_, best_flow_;
  long long best_ = 0;
  std::optional<long long> target_;
};

inline std::vector<long long> scaled_caps(const VoteGraph& g, long long scale) {
  std::vector<long long> caps;
  caps.reserve(g.arc_count());
  for (const Rational& q : g.capacities()) {
    caps.push_back((q * Rational(scale)).as_integer());
  }
  return caps;
}

inline void check_budget(const std::vector<long long>& caps, EnumerationBudget b) {
  std::uint64_t product = 1;
  for (long long c : caps) {
    if (c >= static_cast<long long>(b.max_product) ||
        product > b.max_product / (static_cast<std::uint64_t>(c) + 1)) {
      throw size_limit_error("enumeration budget exceeded");
    }
    product *= static_cast<std::uint64_t>(c) + 1;
  }
}

}  // namespace oracle_detail

/// Largest total of any integral circulation within the (scaled) caps,
/// found by exhaustive search.
inline Rational oracle_max_circulation_value(const VoteGraph& g,
                                             EnumerationBudget budget = {}) {
  long long scale = common_denominator(g.capacities());
  std::vector<long long> caps = oracle_detail::scaled_caps(g, scale);
  oracle_detail::check_budget(caps, budget);
  oracle_detail::CirculationSearch search(g.node_count(), g.arcs(), caps);
  return Rational(search.max_total(std::nullopt), scale);
}

/// Arcs left below capacity by at least one integral maximum circulation.
/// Every fractional maximum circulation is a convex combination of integral
/// ones, so restricting to integral solutions loses nothing.
inline ArcSet oracle_strong_arcs(const VoteGraph& g, EnumerationBudget budget = {}) {
  long long scale = common_denominator(g.capacities());
  std::vector<long long> caps = oracle_detail::scaled_caps(g, scale);
  oracle_detail::check_budget(caps, budget);
  oracle_detail::CirculationSearch base(g.node_count(), g.arcs(), caps);
  const long long best = base.max_total(std::nullopt);
  const std::vector<long long> witness = base.best_flow();

  ArcSet strong;
  for (std::size_t i = 0; i < g.arc_count(); ++i) {
    if (witness[i] < caps[i]) {  // the found optimum already leaves it loose
      strong.push_back(g.arcs()[i]);
      continue;
    }
    if (caps[i] == 0) continue;
    std::vector<long long> tightened = caps;
    tightened[i] -= 1;
    oracle_detail::CirculationSearch capped(g.node_count(), g.arcs(), tightened);
    if (capped.max_total(best) == best) strong.push_back(g.arcs()[i]);
  }
  return strong;
}

/// Minimum number of arcs whose removal leaves an acyclic graph, by
/// enumerating all node orders and counting backward arcs.
inline int oracle_fas_min(int node_count, const ArcSet& arcs) {
  if (node_count > 10) throw size_limit_error("too many nodes for permutation search");
  if (node_count == 0) return 0;
  std::vector<int> perm(node_count);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> position(node_count);
  int best = std::numeric_limits<int>::max();
  do {
    for (int k = 0; k < node_count; ++k) position[perm[k]] = k;
    int backward = 0;
    for (const Arc& a : arcs) {
      if (position[a.tail] > position[a.head]) ++backward;
    }
    best = std::min(best, backward);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// ---------------------------------------------------------------------------
// Seeded instance generator for the randomized test suites.

struct RandomGraphParams {
  int min_nodes = 2;
  int max_nodes = 8;
  std::uint32_t arc_permille = 500;  // probability of each ordered pair, in 1/1000
  long long max_capacity = 3;
};

namespace oracle_detail {

// splitmix64; fixed here so the suites are reproducible across standard
// library implementations.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

 private:
  std::uint64_t state_;
};

}  // namespace oracle_detail

inline VoteGraph random_vote_graph(std::uint64_t seed, RandomGraphParams params = {}) {
  if (params.min_nodes < 0 || params.max_nodes < params.min_nodes ||
      params.max_capacity < 1) {
    throw std::invalid_argument("bad random graph parameters");
  }
  oracle_detail::SplitMix64 rng(seed);
  int n = params.min_nodes +
          static_cast<int>(rng.below(params.max_nodes - params.min_nodes + 1));
  std::vector<std::string> labels;
  for (int v = 0; v < n; ++v) labels.push_back(std::to_string(v + 1));
  std::vector<PairwiseRecord> records;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      bool present = rng.below(1000) < params.arc_permille;
      long long cap = 1 + static_cast<long long>(rng.below(params.max_capacity));
      if (present) records.push_back({labels[i], labels[j], Rational(cap)});
    }
  }
  return VoteGraph::from_pairwise(records, labels);
}

}  // namespace circrank
