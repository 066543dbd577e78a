#pragma once

// Minimum maximal circulations and the feedback-arc-set reduction.
//
// A maximal circulation is one whose removal leaves an acyclic graph; the
// minimum maximal circulation removes as few votes as possible subject to
// that.  Finding it is NP-hard, and distinct optima can induce conflicting
// partial orders, which is the failure mode demonstrate_conflict()
// exhibits.  The solver here enumerates integral circulations outright and
// is only meant for instances small enough for that to finish.

#include <algorithm>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "circrank/partial_order.hpp"
#include "circrank/rational.hpp"
#include "circrank/vote_graph.hpp"

namespace circrank {

struct MinMaxResult {
  long long weight = 0;  // votes removed by every optimal circulation
  /// All optimal integral circulations, in lexicographic flow order
  /// (parallel to VoteGraph::arcs()).
  std::vector<std::vector<long long>> circulations;
  struct Conflict {
    std::size_t first = 0, second = 0;  // indices into `circulations`
    ArcSet pairs;                       // oriented by `first`'s order
  };
  /// One entry per pair of optima whose induced partial orders conflict.
  std::vector<Conflict> conflict_report;
};

namespace minmax_detail {

inline std::vector<long long> integral_caps(const VoteGraph& g) {
  if (!g.integral()) {
    throw std::invalid_argument("minimum maximal circulation requires integral capacities");
  }
  std::vector<long long> caps;
  caps.reserve(g.arc_count());
  for (const Rational& q : g.capacities()) caps.push_back(q.as_integer());
  return caps;
}

inline void check_limit(const std::vector<long long>& caps, std::uint64_t limit) {
  std::uint64_t product = 1;
  for (long long c : caps) {
    if (c >= static_cast<long long>(limit) ||
        product > limit / (static_cast<std::uint64_t>(c) + 1)) {
      throw size_limit_error("minmax search space exceeds the limit");
    }
    product *= static_cast<std::uint64_t>(c) + 1;
  }
}

/// Any maximal circulation, greedily: push the bottleneck around directed
/// cycles of the remaining graph until none are left.  Used as an upper
/// bound to prune the exhaustive sweep.
inline long long greedy_maximal_total(int n, const std::vector<Arc>& arcs,
                                      std::vector<long long> caps) {
  long long total = 0;
  while (true) {
    // Find any directed cycle among arcs with remaining capacity.
    std::vector<std::vector<std::size_t>> out(n);
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      if (caps[i] > 0) out[arcs[i].tail].push_back(i);
    }
    std::vector<int> state(n, 0);  // 0 new, 1 on stack, 2 done
    std::vector<std::size_t> cycle_arcs;
    auto dfs = [&](auto&& self, int v) -> int {
      state[v] = 1;
      for (std::size_t i : out[v]) {
        int w = arcs[i].head;
        if (state[w] == 1) {
          cycle_arcs.push_back(i);
          return w;
        }
        if (state[w] == 0) {
          int entry = self(self, w);
          if (entry >= 0) {
            cycle_arcs.push_back(i);
            return entry == v ? -2 : entry;
          }
          if (entry == -2) return -2;
        }
      }
      state[v] = 2;
      return -1;
    };
    bool found = false;
    for (int v = 0; v < n && !found; ++v) {
      if (state[v] != 0) continue;
      cycle_arcs.clear();
      found = dfs(dfs, v) == -2;
    }
    if (!found) return total;
    // cycle_arcs holds the cycle (plus possibly a tail path) in reverse;
    // trim to the cycle proper: it starts at the arc whose head closed it.
    std::vector<std::size_t> cycle;
    int close = arcs[cycle_arcs.front()].head;
    for (std::size_t i : cycle_arcs) {
      cycle.push_back(i);
      if (arcs[i].tail == close) break;
    }
    long long bottleneck = caps[cycle.front()];
    for (std::size_t i : cycle) bottleneck = std::min(bottleneck, caps[i]);
    for (std::size_t i : cycle) caps[i] -= bottleneck;
    total = detail::narrow128(detail::int128(total) + detail::int128(bottleneck) * cycle.size());
  }
}

class MinimalSearch {
 public:
  MinimalSearch(int n, const std::vector<Arc>& arcs, std::vector<long long> caps)
      : n_(n), arcs_(arcs), caps_(std::move(caps)), nodes_(n) {
    for (std::size_t i = 0; i < arcs_.size(); ++i) {
      nodes_[arcs_[i].tail].out_remcap += caps_[i];
      nodes_[arcs_[i].head].in_remcap += caps_[i];
    }
    flow_.assign(arcs_.size(), 0);
  }

  /// Enumerates integral circulations in lexicographic flow order, keeping
  /// every maximal one of minimum total.  `stop_above` prunes totals
  /// strictly greater than the given bound.
  void run(long long stop_above) {
    best_ = stop_above;
    descend(0, 0);
  }

  long long best() const { return best_; }
  const std::vector<std::vector<long long>>& optima() const { return optima_; }
  bool found() const { return !optima_.empty(); }

 private:
  struct NodeState {
    long long out_done = 0, in_done = 0;
    long long out_remcap = 0, in_remcap = 0;
  };

  bool balanced_feasible(int v) const {
    const NodeState& s = nodes_[v];
    long long imbalance = s.out_done - s.in_done;
    return imbalance <= s.in_remcap && -imbalance <= s.out_remcap;
  }

  bool leaves_acyclic() const {
    ArcSet rest;
    for (std::size_t i = 0; i < arcs_.size(); ++i) {
      if (flow_[i] < caps_[i]) rest.push_back(arcs_[i]);
    }
    return is_acyclic(n_, rest);
  }

  void descend(std::size_t i, long long total) {
    if (total > best_) return;
    if (i == arcs_.size()) {
      if (!leaves_acyclic()) return;
      if (total < best_) {
        best_ = total;
        optima_.clear();
      }
      if (total == best_) optima_.push_back(flow_);
      return;
    }
    const Arc arc = arcs_[i];
    NodeState& tail = nodes_[arc.tail];
    NodeState& head = nodes_[arc.head];
    tail.out_remcap -= caps_[i];
    head.in_remcap -= caps_[i];
    for (long long f = 0; f <= caps_[i]; ++f) {
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

  int n_;
  const std::vector<Arc>& arcs_;
  std::vector<long long> caps_;
  std::vector<NodeState> nodes_;
  std::vector<long long> flow_;
  std::vector<std::vector<long long>> optima_;
  long long best_ = 0;
};

inline PartialOrder induced_order(const VoteGraph& g, const std::vector<long long>& x) {
  ArcSet rest;
  for (std::size_t i = 0; i < g.arc_count(); ++i) {
    if (Rational(x[i]) < g.capacity(i)) rest.push_back(g.arcs()[i]);
  }
  return transitive_closure(g.labels(), rest);
}

}  // namespace minmax_detail

/// Exhaustive minimum maximal circulation.  `limit` bounds the naive search
/// box, the product of (q_ij + 1) over all arcs.
inline MinMaxResult minmax_exact(const VoteGraph& g,
                                 std::uint64_t limit = std::uint64_t{1} << 24) {
  std::vector<long long> caps = minmax_detail::integral_caps(g);
  minmax_detail::check_limit(caps, limit);

  long long bound =
      minmax_detail::greedy_maximal_total(g.node_count(), g.arcs(), caps);
  minmax_detail::MinimalSearch search(g.node_count(), g.arcs(), caps);
  search.run(bound);
  if (!search.found()) {
    throw internal_error("no maximal circulation found below the greedy bound");
  }

  MinMaxResult result;
  result.weight = search.best();
  result.circulations = search.optima();

  std::vector<PartialOrder> orders;
  orders.reserve(result.circulations.size());
  for (const auto& x : result.circulations) {
    orders.push_back(minmax_detail::induced_order(g, x));
  }
  for (std::size_t a = 0; a < orders.size(); ++a) {
    for (std::size_t b = a + 1; b < orders.size(); ++b) {
      ArcSet pairs = conflicts(orders[a], orders[b]);
      if (!pairs.empty()) result.conflict_report.push_back({a, b, std::move(pairs)});
    }
  }
  return result;
}

/// Decision form: is there a maximal circulation of total at most `bound`?
/// Sound to prune on the running total because flows only grow along a
/// branch.
inline bool minmax_at_most(const VoteGraph& g, long long bound,
                           std::uint64_t limit = std::uint64_t{1} << 24) {
  std::vector<long long> caps = minmax_detail::integral_caps(g);
  minmax_detail::check_limit(caps, limit);
  minmax_detail::MinimalSearch search(g.node_count(), g.arcs(), caps);
  search.run(bound);
  return search.found();
}

struct ConflictWitness {
  std::vector<long long> first;   // two optimal circulations ...
  std::vector<long long> second;
  Arc pair;                       // ... ordering this pair oppositely
  std::string tail_label, head_label;
};

/// Two minimum maximal circulations whose induced partial orders conflict,
/// or nullopt when all optima agree.  Among the conflicting pairs of the
/// first conflicting optima, pairs whose opposite preferences both arise
/// only through chains of other alternatives are preferred (no single
/// surviving vote explains either side); ties break lexicographically.
inline std::optional<ConflictWitness> demonstrate_conflict(
    const VoteGraph& g, std::uint64_t limit = std::uint64_t{1} << 24) {
  MinMaxResult result = minmax_exact(g, limit);
  if (result.conflict_report.empty()) return std::nullopt;
  const MinMaxResult::Conflict& c = result.conflict_report.front();
  const auto& x1 = result.circulations[c.first];
  const auto& x2 = result.circulations[c.second];

  auto direct = [&](const std::vector<long long>& x, Arc a) {
    std::optional<std::size_t> idx = g.arc_index(a);
    return idx && Rational(x[*idx]) < g.capacity(*idx);
  };
  Arc chosen = c.pairs.front();
  for (const Arc& p : c.pairs) {
    if (!direct(x1, p) && !direct(x2, {p.head, p.tail})) {
      chosen = p;
      break;
    }
  }
  return ConflictWitness{x1, x2, chosen, g.label(chosen.tail), g.label(chosen.head)};
}

// ---------------------------------------------------------------------------
// Reduction from minimum feedback arc set.  Each arc (i, j) becomes a
// 3-arc path i -> ij1 -> ij2 -> j plus side arcs s -> ij1 and ij2 -> t, and
// K parallel copies of (t, s) close the construction (represented as one
// arc of capacity K).  A FAS of size at most K exists iff the reduced graph
// has a maximal circulation of total at most 4K.

struct FasInstance {
  std::vector<std::string> nodes;                         // first-mention order
  std::vector<std::pair<std::string, std::string>> arcs;  // no self-loops
  long long k = 0;
};

struct ReducedInstance {
  VoteGraph graph;
  long long k_prime = 0;  // 4K
};

inline ReducedInstance reduce_fas(const FasInstance& instance) {
  if (instance.k < 0) throw std::invalid_argument("negative FAS budget");
  std::vector<std::string> labels = instance.nodes;
  std::vector<PairwiseRecord> records;
  auto claim = [&](const std::string& label) {
    for (const std::string& existing : instance.nodes) {
      if (existing == label) {
        throw std::invalid_argument("generated node label '" + label +
                                    "' collides with an instance node");
      }
    }
    return label;
  };
  labels.push_back(claim("s"));
  labels.push_back(claim("t"));
  for (const auto& [a, b] : instance.arcs) {
    if (a == b) throw std::invalid_argument("self-loop in FAS instance");
    std::string mid1 = claim(a + b + "1");
    std::string mid2 = claim(a + b + "2");
    labels.push_back(mid1);
    labels.push_back(mid2);
    records.push_back({a, mid1, Rational(1)});
    records.push_back({mid1, mid2, Rational(1)});
    records.push_back({mid2, b, Rational(1)});
    records.push_back({"s", mid1, Rational(1)});
    records.push_back({mid2, "t", Rational(1)});
  }
  if (instance.k > 0) records.push_back({"t", "s", Rational(instance.k)});
  return {VoteGraph::from_pairwise(records, labels),
          detail::narrow128(detail::int128(4) * instance.k)};
}

/// FAS instance file: `#` comments, one `K <int>` line, and `from to` arc
/// lines (comma separators also accepted).
inline FasInstance read_fas_file(std::istream& in) {
  FasInstance instance;
  bool k_seen = false;
  std::string line;
  int lineno = 0;
  auto intern = [&](const std::string& label) {
    if (std::find(instance.nodes.begin(), instance.nodes.end(), label) ==
        instance.nodes.end()) {
      instance.nodes.push_back(label);
    }
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::replace(line.begin(), line.end(), '=', ' ');
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;
    if (first == "K" || first == "k") {
      if (!(fields >> instance.k) || instance.k < 0) {
        throw parse_error("line " + std::to_string(lineno) + ": bad K value");
      }
      k_seen = true;
      continue;
    }
    std::string second;
    if (!(fields >> second)) {
      throw parse_error("line " + std::to_string(lineno) + ": expected 'from to'");
    }
    std::string rest;
    if (fields >> rest) {
      throw parse_error("line " + std::to_string(lineno) + ": trailing tokens");
    }
    if (first == second) {
      throw parse_error("line " + std::to_string(lineno) + ": self-loop arc");
    }
    intern(first);
    intern(second);
    instance.arcs.emplace_back(std::move(first), std::move(second));
  }
  if (!k_seen) throw parse_error("missing 'K <int>' line");
  return instance;
}

}  // namespace circrank
