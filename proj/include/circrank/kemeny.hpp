#pragma once

// Kemeny aggregation and its convex relaxation.
//
// The exact solver scores every linear order by the total weight of votes
// it contradicts (arcs pointing from a lower-ranked to a higher-ranked
// alternative) and keeps the minimizers; only the induced order matters for
// the 0-1 loss, so searching permutations is equivalent to searching
// integer score vectors.  The relaxed problem replaces the 0-1 loss with
// the hinge loss sum q_ij * max{y_j - y_i + 1, 0}; it is the linear
// programming dual of the maximum circulation problem, so its optimum
// equals the maximum circulation value and optimal scores drop out of the
// flow duals.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "circrank/mcnf.hpp"
#include "circrank/minmax.hpp"
#include "circrank/rational.hpp"
#include "circrank/vote_graph.hpp"

namespace circrank {

struct KemenyResult {
  Rational removed_weight;
  /// Every order attaining the minimum, most preferred alternative first,
  /// in lexicographic dense-index order.
  std::vector<std::vector<std::string>> best_orders;
};

inline KemenyResult kemeny_exact(const VoteGraph& g, int max_n = 9) {
  const int n = g.node_count();
  if (n > max_n) {
    throw size_limit_error("instance too large for factorial Kemeny search (" +
                           std::to_string(n) + " > " + std::to_string(max_n) + ")");
  }
  KemenyResult result;
  if (n == 0) {
    result.best_orders.push_back({});
    return result;
  }
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> position(n);
  bool first = true;
  do {
    for (int k = 0; k < n; ++k) position[perm[k]] = k;
    Rational weight;
    for (std::size_t i = 0; i < g.arc_count(); ++i) {
      const Arc a = g.arcs()[i];
      if (position[a.tail] > position[a.head]) weight += g.capacity(i);
    }
    if (first || weight < result.removed_weight) {
      first = false;
      result.removed_weight = weight;
      result.best_orders.clear();
    }
    if (weight == result.removed_weight) {
      std::vector<std::string> order;
      order.reserve(n);
      for (int v : perm) order.push_back(g.label(v));
      result.best_orders.push_back(std::move(order));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return result;
}

struct RelaxKemResult {
  std::vector<Rational> scores;  // per node, shifted so the minimum is 0
  Rational objective;
};

inline RelaxKemResult relax_kem(const VoteGraph& g) {
  MaxCirculation solved = max_circulation_with_duals(g);
  RelaxKemResult result;
  result.scores = std::move(solved.duals);
  if (!result.scores.empty()) {
    Rational low = *std::min_element(result.scores.begin(), result.scores.end());
    for (Rational& y : result.scores) y -= low;  // order-preserving shift
  }
  for (std::size_t i = 0; i < g.arc_count(); ++i) {
    const Arc a = g.arcs()[i];
    Rational slack = result.scores[a.head] - result.scores[a.tail] + Rational(1);
    if (slack > Rational(0)) result.objective += g.capacity(i) * slack;
  }
  // Strong duality: the hinge-loss optimum must equal the circulation value.
  if (result.objective != solved.circulation.value) {
    throw internal_error("relaxed Kemeny objective differs from the flow value");
  }
  return result;
}

struct LowerBoundCheck {
  Rational kemeny_weight;
  Rational minmax_weight;
  bool relation_holds = false;  // kemeny <= minmax
};

/// Brute-forces both objectives; Kemeny removals need not form a
/// circulation, so its optimum can only be smaller.
inline LowerBoundCheck kemeny_lower_bound_check(
    const VoteGraph& g, int max_n = 9, std::uint64_t limit = std::uint64_t{1} << 24) {
  LowerBoundCheck check;
  check.kemeny_weight = kemeny_exact(g, max_n).removed_weight;
  check.minmax_weight = Rational(minmax_exact(g, limit).weight);
  check.relation_holds = check.kemeny_weight <= check.minmax_weight;
  return check;
}

}  // namespace circrank
