#pragma once

// Strong maximum circulations.
//
// A maximum circulation removes as much cyclic vote weight as possible; a
// *strong* maximum circulation is one that leaves the largest possible set
// of arcs below capacity.  That remaining arc set A* is unique, acyclic,
// and equals { (i,j) : x_ij < q_ij in some maximum circulation }.  Two
// routes compute it here:
//
//  * reference_algorithm(): solves one maximum circulation per arc with the
//    arc's bound tightened, admits the arc to A* when the optimum is
//    unchanged, and averages the witness flows into a strong maximum
//    circulation.
//
//  * perturbation(): a single min-cost flow on a network with two copies of
//    each arc -- a wide copy of capacity q_ij - eps at full utility and a
//    thin copy of capacity eps at utility 1 - 1/(m+1).  An optimal flow
//    maximizes total circulation first and the number of unused thin copies
//    second, so A* = { (i,j) : thin copy unused }.  The network duals give
//    a certificate that the result satisfies strong complementary
//    slackness.  eps = 1/((m+1) * LCD) keeps everything integral after
//    scaling: wide capacity (m+1)*LCD*q_ij - 1 at cost -(m+1), thin
//    capacity 1 at cost -m.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "circrank/mcnf.hpp"
#include "circrank/rational.hpp"
#include "circrank/vote_graph.hpp"

namespace circrank {

struct StrongResult {
  ArcSet strong_arcs;                          // A*, sorted
  std::vector<Rational> circulation;           // x*, parallel to g.arcs()
  std::optional<std::vector<Rational>> duals;  // y', perturbation route only
  Rational max_value;                          // optimum of the circulation LP
};

enum class CsCase { zero, interior, saturated };

struct CsConditionStatus {
  Arc arc;
  CsCase kind = CsCase::zero;
  Rational reduced_value;  // 1 - y_tail + y_head
  bool ok = false;
};

struct CsViolation {
  Arc arc;
  int condition = 0;  // 1: zero-flow, 2: interior, 3: saturated
};

struct Certificate {
  std::vector<Rational> circulation;
  std::vector<Rational> duals;
  std::vector<CsConditionStatus> conditions;  // per arc, in arc order
  ArcSet strong_arcs;                         // A(q - x)
  bool pass = false;
  std::optional<CsViolation> first_violation;
};

/// Classifies every arc against the strong complementary slackness
/// conditions for the pair (x, y):
///   x_ij = 0        requires 1 - y_i + y_j <= 0
///   0 < x_ij < q_ij requires 1 - y_i + y_j  = 0
///   x_ij = q_ij     requires 1 - y_i + y_j  > 0
/// All comparisons are exact.  A passing verdict proves x is a strong
/// maximum circulation.  Infeasibility of x (bound or conservation
/// violation) is a std::domain_error, distinct from a failing verdict.
inline Certificate check_strong_cs(const VoteGraph& g, const std::vector<Rational>& x,
                                   const std::vector<Rational>& y) {
  if (x.size() != g.arc_count()) {
    throw std::invalid_argument("circulation does not match arc count");
  }
  if (y.size() != static_cast<std::size_t>(g.node_count())) {
    throw std::invalid_argument("duals do not match node count");
  }
  std::vector<Rational> balance(g.node_count());
  for (std::size_t i = 0; i < g.arc_count(); ++i) {
    if (x[i] < Rational(0) || x[i] > g.capacity(i)) {
      throw std::domain_error("infeasible circulation: flow outside [0, q]");
    }
    balance[g.arcs()[i].tail] += x[i];
    balance[g.arcs()[i].head] -= x[i];
  }
  for (const Rational& b : balance) {
    if (!b.is_zero()) {
      throw std::domain_error("infeasible circulation: conservation violated");
    }
  }

  Certificate cert;
  cert.circulation = x;
  cert.duals = y;
  cert.pass = true;
  for (std::size_t i = 0; i < g.arc_count(); ++i) {
    const Arc arc = g.arcs()[i];
    CsConditionStatus status;
    status.arc = arc;
    status.reduced_value = Rational(1) - y[arc.tail] + y[arc.head];
    int condition;
    if (x[i].is_zero()) {
      status.kind = CsCase::zero;
      status.ok = status.reduced_value <= Rational(0);
      condition = 1;
    } else if (x[i] == g.capacity(i)) {
      status.kind = CsCase::saturated;
      status.ok = status.reduced_value > Rational(0);
      condition = 3;
    } else {
      status.kind = CsCase::interior;
      status.ok = status.reduced_value.is_zero();
      condition = 2;
    }
    if (!status.ok && cert.pass) {
      cert.pass = false;
      cert.first_violation = CsViolation{arc, condition};
    }
    cert.conditions.push_back(std::move(status));
  }
  cert.strong_arcs = remaining_arcs(g, x);
  return cert;
}

/// Convex combination of maximum circulations.  Weights must be strictly
/// positive and sum to exactly one.  When the witnesses cover every strong
/// arc the result is a strong maximum circulation.
inline std::vector<Rational> strong_circulation_from_witnesses(
    const std::vector<std::vector<Rational>>& witnesses,
    const std::vector<Rational>& weights) {
  if (witnesses.size() != weights.size()) {
    throw std::invalid_argument("one weight per witness required");
  }
  if (witnesses.empty()) throw std::invalid_argument("no witnesses given");
  Rational total;
  for (const Rational& w : weights) {
    if (!(w > Rational(0))) throw std::invalid_argument("non-positive weight");
    total += w;
  }
  if (total != Rational(1)) throw std::invalid_argument("weights must sum to 1");
  const std::size_t m = witnesses.front().size();
  std::vector<Rational> combined(m);
  for (std::size_t k = 0; k < witnesses.size(); ++k) {
    if (witnesses[k].size() != m) {
      throw std::invalid_argument("witness flow vectors differ in length");
    }
    for (std::size_t i = 0; i < m; ++i) combined[i] += weights[k] * witnesses[k][i];
  }
  return combined;
}

namespace strong_detail {

inline void verify_result(const VoteGraph& g, const StrongResult& r) {
  if (remaining_arcs(g, r.circulation) != r.strong_arcs) {
    throw internal_error("strong circulation does not realize the strong arc set");
  }
  if (!is_acyclic(g.node_count(), r.strong_arcs)) {
    throw internal_error("strong arc set contains a cycle");
  }
}

}  // namespace strong_detail

/// Per-arc route: one base solve plus one tightened solve for every arc the
/// base flow saturates.  Arcs already below capacity in the base flow
/// witness their own strongness, so no extra solve is spent on them.
inline StrongResult reference_algorithm(const VoteGraph& g) {
  const std::size_t m = g.arc_count();
  StrongResult result;
  if (m == 0) {
    result.circulation.assign(m, Rational(0));
    if (g.node_count() > 0) result.duals = std::nullopt;
    return result;
  }

  Circulation base = max_circulation(g);
  result.max_value = base.value;

  // Tighten by one whole unit for integral data, by eps = 1/((m+1)*LCD)
  // otherwise; any circulation is a multiple of 1/LCD, so either bound
  // excludes exactly the flows that saturate the arc.
  Rational tighten(1);
  if (!g.integral()) {
    long long lcd = common_denominator(g.capacities());
    tighten = Rational(1, detail::narrow128(detail::int128(m + 1) * lcd));
  }

  std::vector<std::vector<Rational>> witnesses;
  std::vector<std::size_t> witness_of;  // per strong arc, index into witnesses
  witnesses.push_back(base.flow);
  for (std::size_t i = 0; i < m; ++i) {
    if (base.flow[i] < g.capacity(i)) {
      result.strong_arcs.push_back(g.arcs()[i]);
      witness_of.push_back(0);
      continue;
    }
    Circulation capped =
        max_circulation_with_cap(g, g.arcs()[i], g.capacity(i) - tighten);
    if (capped.value == result.max_value) {
      result.strong_arcs.push_back(g.arcs()[i]);
      witness_of.push_back(witnesses.size());
      witnesses.push_back(std::move(capped.flow));
    }
  }

  if (result.strong_arcs.empty()) {
    // Eulerian graph: x = q is the unique maximum circulation.
    result.circulation = base.flow;
  } else {
    std::vector<std::vector<Rational>> flows;
    std::vector<Rational> weights;
    Rational uniform(1, static_cast<long long>(witness_of.size()));
    for (std::size_t w : witness_of) {
      flows.push_back(witnesses[w]);
      weights.push_back(uniform);
    }
    result.circulation = strong_circulation_from_witnesses(flows, weights);
  }
  strong_detail::verify_result(g, result);
  return result;
}

/// Single-solve route.  Also certifies its own output: the returned duals
/// always satisfy strong complementary slackness with the returned flow.
inline StrongResult perturbation(const VoteGraph& g) {
  const std::size_t m = g.arc_count();
  const int n = g.node_count();
  StrongResult result;
  if (m == 0) {
    result.circulation.clear();
    result.duals = std::vector<Rational>(n, Rational(0));
    return result;
  }

  const long long factor = static_cast<long long>(m) + 1;
  const long long lcd = common_denominator(g.capacities());
  const long long scale = detail::narrow128(detail::int128(factor) * lcd);

  FlowNetwork net;
  net.node_count = n;
  net.arcs.reserve(2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    const Arc arc = g.arcs()[i];
    long long cap = mcnf_detail::scaled_capacity(g.capacity(i), scale);
    net.arcs.push_back({arc.tail, arc.head, cap - 1, -factor});  // wide copy
    net.arcs.push_back({arc.tail, arc.head, 1, -(factor - 1)});  // thin copy
  }
  FlowSolution sol = solve_min_cost(net);
  DualSolution duals = extract_duals(net, sol);

  result.circulation.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    result.circulation.emplace_back(sol.flow[2 * i] + sol.flow[2 * i + 1], scale);
    result.max_value += result.circulation.back();
    if (sol.flow[2 * i + 1] == 0) result.strong_arcs.push_back(g.arcs()[i]);
  }
  std::vector<Rational> y;
  y.reserve(n);
  for (long long d : duals.potential) y.emplace_back(d, factor);
  result.duals = std::move(y);

  strong_detail::verify_result(g, result);
  Certificate cert = check_strong_cs(g, result.circulation, *result.duals);
  if (!cert.pass) {
    throw internal_error("perturbation duals fail strong complementary slackness");
  }
  return result;
}

}  // namespace circrank
