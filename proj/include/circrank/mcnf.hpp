#pragma once

// Exact minimum-cost network flow over integer capacities and integer
// costs, plus the maximum-circulation wrappers used by the aggregation
// methods.  The solver is successive shortest paths with node potentials:
// negative-cost arcs are saturated up front (so the initial residual graph
// has no negative reduced costs) and the resulting node imbalances are
// drained along shortest residual paths.  The contract is exact integral
// optimality; no floating point is involved anywhere.
//
// Dual convention.  extract_duals() returns, per node, the shortest-path
// distance from an artificial source that has a zero-cost arc to every
// node, computed in the residual graph of an optimal flow.  With these
// values y every residual arc (u, v) of cost c satisfies c + y_u - y_v >= 0
// (the triangle inequality), i.e. -y is a classical min-cost potential
// vector.  This orientation is chosen so that for a maximum-circulation
// instance (all costs -1) the three optimality conditions on an arc (i, j)
// read directly in terms of 1 - y_i + y_j:
//
//   x_ij = 0          =>  1 - y_i + y_j <= 0
//   0 < x_ij < q_ij   =>  1 - y_i + y_j  = 0
//   x_ij = q_ij       =>  1 - y_i + y_j >= 0   (> 0 when the duals are
//                                               strong certificates)

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "circrank/rational.hpp"
#include "circrank/vote_graph.hpp"

namespace circrank {

class infeasible_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FlowArc {
  int tail = 0;
  int head = 0;
  long long capacity = 0;
  long long cost = 0;
};

struct FlowNetwork {
  int node_count = 0;
  std::vector<FlowArc> arcs;
  std::vector<long long> supply;  // b_i, outflow minus inflow; empty means all zero
};

struct FlowSolution {
  std::vector<long long> flow;  // parallel to FlowNetwork::arcs
  long long objective = 0;
};

struct DualSolution {
  std::vector<long long> potential;  // y_i, see the convention note above
};

namespace mcnf_detail {

constexpr long long kInfCost = std::numeric_limits<long long>::max() / 4;

inline void validate_network(const FlowNetwork& net) {
  if (net.node_count < 0) throw std::invalid_argument("negative node count");
  if (!net.supply.empty() &&
      net.supply.size() != static_cast<std::size_t>(net.node_count)) {
    throw std::invalid_argument("supply vector does not match node count");
  }
  for (const FlowArc& a : net.arcs) {
    if (a.tail < 0 || a.tail >= net.node_count || a.head < 0 ||
        a.head >= net.node_count) {
      throw std::invalid_argument("arc endpoint out of range");
    }
    if (a.capacity < 0) throw std::invalid_argument("negative arc capacity");
  }
}

inline void validate_solution(const FlowNetwork& net, const FlowSolution& sol) {
  if (sol.flow.size() != net.arcs.size()) {
    throw std::invalid_argument("flow vector does not match arc count");
  }
  std::vector<detail::int128> balance(net.node_count, 0);
  for (std::size_t i = 0; i < net.arcs.size(); ++i) {
    const FlowArc& a = net.arcs[i];
    if (sol.flow[i] < 0 || sol.flow[i] > a.capacity) {
      throw std::invalid_argument("flow outside arc bounds");
    }
    balance[a.tail] += sol.flow[i];
    balance[a.head] -= sol.flow[i];
  }
  for (int v = 0; v < net.node_count; ++v) {
    long long b = net.supply.empty() ? 0 : net.supply[v];
    if (balance[v] != b) throw std::invalid_argument("flow violates conservation");
  }
}

}  // namespace mcnf_detail

/// Shortest-path distances from an artificial zero-cost source in the
/// residual graph of `sol` (Bellman-Ford).  Throws internal_error when the
/// residual graph has a negative cycle, which would mean `sol` is not
/// optimal for `net`.
inline DualSolution extract_duals(const FlowNetwork& net, const FlowSolution& sol) {
  mcnf_detail::validate_network(net);
  mcnf_detail::validate_solution(net, sol);
  const int n = net.node_count;
  if (n == 0) return {};
  std::vector<long long> dist(n, 0);  // source arcs of length 0 to every node
  for (int round = 0; round < n; ++round) {
    bool changed = false;
    for (std::size_t i = 0; i < net.arcs.size(); ++i) {
      const FlowArc& a = net.arcs[i];
      if (sol.flow[i] < a.capacity && dist[a.tail] + a.cost < dist[a.head]) {
        dist[a.head] = dist[a.tail] + a.cost;
        changed = true;
      }
      if (sol.flow[i] > 0 && dist[a.head] - a.cost < dist[a.tail]) {
        dist[a.tail] = dist[a.head] - a.cost;
        changed = true;
      }
    }
    if (!changed) return {std::move(dist)};
  }
  throw internal_error("negative-cost residual cycle: flow is not optimal");
}

/// Exact min-cost flow.  Requires a feasible instance; throws
/// infeasible_error otherwise.  The returned flow is integral and its
/// optimality is re-verified internally via the residual graph.
inline FlowSolution solve_min_cost(const FlowNetwork& net) {
  mcnf_detail::validate_network(net);
  const int n = net.node_count;
  const std::size_t m = net.arcs.size();

  detail::int128 supply_sum = 0;
  std::vector<long long> excess(n, 0);
  if (!net.supply.empty()) {
    for (int v = 0; v < n; ++v) {
      supply_sum += net.supply[v];
      excess[v] = net.supply[v];
    }
  }
  if (supply_sum != 0) throw infeasible_error("node supplies do not sum to zero");

  std::vector<long long> flow(m, 0);
  // Saturating every negative-cost arc leaves only nonnegative residual
  // costs, so zero potentials are valid to start with.
  for (std::size_t i = 0; i < m; ++i) {
    const FlowArc& a = net.arcs[i];
    if (a.cost < 0 && a.capacity > 0) {
      flow[i] = a.capacity;
      excess[a.tail] -= a.capacity;
      excess[a.head] += a.capacity;
    }
  }

  std::vector<std::vector<std::size_t>> out(n);  // residual arc ids: 2i fwd, 2i+1 bwd
  for (std::size_t i = 0; i < m; ++i) {
    out[net.arcs[i].tail].push_back(2 * i);
    out[net.arcs[i].head].push_back(2 * i + 1);
  }

  std::vector<long long> pi(n, 0), dist(n);
  std::vector<std::size_t> parent(n);
  std::vector<char> settled(n);
  using Item = std::pair<long long, int>;

  while (true) {
    int deficit = -1;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    std::fill(dist.begin(), dist.end(), mcnf_detail::kInfCost);
    std::fill(settled.begin(), settled.end(), 0);
    bool any_excess = false;
    for (int v = 0; v < n; ++v) {
      if (excess[v] > 0) {
        any_excess = true;
        dist[v] = 0;
        queue.push({0, v});
      }
    }
    if (!any_excess) break;

    while (!queue.empty()) {
      auto [d, u] = queue.top();
      queue.pop();
      if (settled[u]) continue;
      settled[u] = 1;
      if (excess[u] < 0) {
        deficit = u;
        break;
      }
      for (std::size_t rid : out[u]) {
        std::size_t i = rid / 2;
        const FlowArc& a = net.arcs[i];
        bool forward = rid % 2 == 0;
        long long residual = forward ? a.capacity - flow[i] : flow[i];
        if (residual <= 0) continue;
        int v = forward ? a.head : a.tail;
        long long cost = forward ? a.cost : -a.cost;
        long long nd = d + cost + pi[u] - pi[v];
        if (nd < dist[v]) {
          dist[v] = nd;
          parent[v] = rid;
          queue.push({nd, v});
        }
      }
    }
    if (deficit < 0) throw infeasible_error("no augmenting path to a deficit node");

    for (int v = 0; v < n; ++v) pi[v] += std::min(dist[v], dist[deficit]);

    // Walk back to the excess node this path started from.
    long long bottleneck = mcnf_detail::kInfCost;
    int v = deficit;
    while (dist[v] != 0 || excess[v] <= 0) {
      std::size_t rid = parent[v];
      std::size_t i = rid / 2;
      bool forward = rid % 2 == 0;
      long long residual = forward ? net.arcs[i].capacity - flow[i] : flow[i];
      bottleneck = std::min(bottleneck, residual);
      v = forward ? net.arcs[i].tail : net.arcs[i].head;
    }
    long long delta = std::min({bottleneck, excess[v], -excess[deficit]});
    excess[v] -= delta;
    excess[deficit] += delta;
    int w = deficit;
    while (w != v) {
      std::size_t rid = parent[w];
      std::size_t i = rid / 2;
      if (rid % 2 == 0) {
        flow[i] += delta;
        w = net.arcs[i].tail;
      } else {
        flow[i] -= delta;
        w = net.arcs[i].head;
      }
    }
  }

  detail::int128 objective = 0;
  for (std::size_t i = 0; i < m; ++i) {
    objective += detail::int128(net.arcs[i].cost) * flow[i];
  }
  FlowSolution sol{std::move(flow), detail::narrow128(objective)};
  extract_duals(net, sol);  // optimality self-check
  return sol;
}

/// Plain-text arc-list dump for bug reports: one `arc tail head cap cost`
/// line per arc after a `mcnf <n> <m>` header and nonzero `supply` lines.
inline std::string dump_network(const FlowNetwork& net) {
  std::ostringstream os;
  os << "mcnf " << net.node_count << ' ' << net.arcs.size() << '\n';
  for (std::size_t v = 0; v < net.supply.size(); ++v) {
    if (net.supply[v] != 0) os << "supply " << v << ' ' << net.supply[v] << '\n';
  }
  for (const FlowArc& a : net.arcs) {
    os << "arc " << a.tail << ' ' << a.head << ' ' << a.capacity << ' ' << a.cost
       << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Maximum circulation on a vote graph.  The rational capacities are scaled
// to integers by their least common denominator, solved with cost -1 per
// unit, and unscaled back, so results are exact.

struct Circulation {
  std::vector<Rational> flow;  // parallel to VoteGraph::arcs()
  Rational value;
};

struct MaxCirculation {
  Circulation circulation;
  std::vector<Rational> duals;  // y_i per node, exact
};

namespace mcnf_detail {

inline long long scaled_capacity(const Rational& cap, long long scale) {
  Rational scaled = cap * Rational(scale);
  return scaled.as_integer();
}

inline FlowNetwork circulation_network(const VoteGraph& g, long long scale) {
  FlowNetwork net;
  net.node_count = g.node_count();
  net.arcs.reserve(g.arc_count());
  for (std::size_t i = 0; i < g.arc_count(); ++i) {
    net.arcs.push_back({g.arcs()[i].tail, g.arcs()[i].head,
                        scaled_capacity(g.capacity(i), scale), -1});
  }
  return net;
}

inline Circulation unscale(const std::vector<long long>& flow, long long scale) {
  Circulation c;
  c.flow.reserve(flow.size());
  for (long long f : flow) {
    c.flow.emplace_back(f, scale);
    c.value += c.flow.back();
  }
  return c;
}

}  // namespace mcnf_detail

/// Solves the maximum circulation problem and also returns optimal duals.
inline MaxCirculation max_circulation_with_duals(const VoteGraph& g) {
  const long long scale = common_denominator(g.capacities());
  FlowNetwork net = mcnf_detail::circulation_network(g, scale);
  FlowSolution sol = solve_min_cost(net);
  DualSolution duals = extract_duals(net, sol);
  MaxCirculation result;
  result.circulation = mcnf_detail::unscale(sol.flow, scale);
  result.duals.assign(duals.potential.begin(), duals.potential.end());
  // Observation: removing a maximum circulation always leaves an acyclic
  // remainder; anything else is a solver defect.
  if (!is_acyclic(g.node_count(), remaining_arcs(g, result.circulation.flow))) {
    throw internal_error("maximum circulation left a cyclic remainder");
  }
  return result;
}

inline Circulation max_circulation(const VoteGraph& g) {
  return max_circulation_with_duals(g).circulation;
}

/// Maximum circulation subject to one tightened bound x_arc <= cap.
/// The result need not be maximal, so no acyclicity claim is made here.
inline Circulation max_circulation_with_cap(const VoteGraph& g, Arc arc,
                                            const Rational& cap) {
  std::optional<std::size_t> idx = g.arc_index(arc);
  if (!idx) throw std::invalid_argument("capped arc is not in the graph");
  if (cap < Rational(0) || cap > g.capacity(*idx)) {
    throw std::invalid_argument("cap outside [0, q] for the capped arc");
  }
  long long scale = checked_lcm(common_denominator(g.capacities()), cap.den());
  FlowNetwork net = mcnf_detail::circulation_network(g, scale);
  net.arcs[*idx].capacity = mcnf_detail::scaled_capacity(cap, scale);
  FlowSolution sol = solve_min_cost(net);
  return mcnf_detail::unscale(sol.flow, scale);
}

}  // namespace circrank
