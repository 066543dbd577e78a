#pragma once

// Partial orders induced by acyclic arc sets: i precedes j exactly when a
// directed path runs from i to j.  The strong partial order of a vote graph
// is the transitive closure of its strong arc set A*; it is the unique
// aggregate preference relation produced by removing any strong maximum
// circulation.

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "circrank/strong_circulation.hpp"
#include "circrank/vote_graph.hpp"

namespace circrank {

class PartialOrder {
 public:
  PartialOrder() = default;
  PartialOrder(std::vector<std::string> ground, ArcSet relation)
      : ground_(std::move(ground)), relation_(std::move(relation)) {}

  const std::vector<std::string>& ground() const { return ground_; }
  const ArcSet& relation() const { return relation_; }

  bool contains(Arc pair) const { return arc_set_contains(relation_, pair); }
  bool empty() const { return relation_.empty(); }

  friend bool operator==(const PartialOrder&, const PartialOrder&) = default;

 private:
  std::vector<std::string> ground_;
  ArcSet relation_;  // sorted, transitively closed, antisymmetric
};

/// Transitive closure of an acyclic arc set over `ground` (indices refer to
/// positions in `ground`).  Throws std::invalid_argument when the input has
/// a directed cycle, since the result could not be antisymmetric.
inline PartialOrder transitive_closure(std::vector<std::string> ground,
                                       const ArcSet& arcs) {
  const int n = static_cast<int>(ground.size());
  if (!is_acyclic(n, arcs)) {
    throw std::invalid_argument("transitive closure of a cyclic arc set");
  }
  std::vector<std::vector<int>> out(n);
  for (const Arc& a : arcs) out[a.tail].push_back(a.head);

  ArcSet relation;
  std::vector<char> seen(n);
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    std::fill(seen.begin(), seen.end(), 0);
    stack.assign(out[s].begin(), out[s].end());
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (seen[v]) continue;
      seen[v] = 1;
      relation.push_back({s, v});
      for (int w : out[v]) {
        if (!seen[w]) stack.push_back(w);
      }
    }
  }
  std::sort(relation.begin(), relation.end());
  return PartialOrder(std::move(ground), std::move(relation));
}

inline PartialOrder transitive_closure(const VoteGraph& g, const ArcSet& arcs) {
  return transitive_closure(g.labels(), arcs);
}

/// All pairs (i, j) with i above j in `p` but j above i in `q`, reported in
/// p's orientation and sorted.  Empty means the orders are non-conflicting.
inline ArcSet conflicts(const PartialOrder& p, const PartialOrder& q) {
  if (p.ground() != q.ground()) {
    throw std::invalid_argument("partial orders over different ground sets");
  }
  ArcSet out;
  for (const Arc& a : p.relation()) {
    if (q.contains({a.head, a.tail})) out.push_back(a);
  }
  return out;
}

/// The strong partial order A^SP: transitive closure of the strong arc set,
/// computed via the single-solve perturbation route.
inline PartialOrder strong_partial_order(const VoteGraph& g) {
  StrongResult strong = perturbation(g);
  return transitive_closure(g.labels(), strong.strong_arcs);
}

/// DOT export with nodes and edges in label order; pairs present in `base`
/// are drawn solid, pairs added by the closure dashed.
inline std::string to_dot(const PartialOrder& order, const ArcSet& base) {
  auto quoted = [](const std::string& s) {
    std::string q = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') q += '\\';
      q += c;
    }
    return q + "\"";
  };
  std::vector<int> node_order(order.ground().size());
  for (std::size_t i = 0; i < node_order.size(); ++i) node_order[i] = static_cast<int>(i);
  std::sort(node_order.begin(), node_order.end(), [&](int a, int b) {
    return order.ground()[a] < order.ground()[b];
  });
  std::vector<Arc> edges = order.relation();
  std::sort(edges.begin(), edges.end(), [&](const Arc& a, const Arc& b) {
    const auto ka = std::make_pair(order.ground()[a.tail], order.ground()[a.head]);
    const auto kb = std::make_pair(order.ground()[b.tail], order.ground()[b.head]);
    return ka < kb;
  });
  std::ostringstream os;
  os << "digraph partial_order {\n";
  for (int v : node_order) os << "  " << quoted(order.ground()[v]) << ";\n";
  for (const Arc& e : edges) {
    os << "  " << quoted(order.ground()[e.tail]) << " -> "
       << quoted(order.ground()[e.head]);
    if (!arc_set_contains(base, e)) os << " [style=dashed]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace circrank
