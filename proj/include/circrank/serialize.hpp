#pragma once

// JSON views of the core result types.  Rationals are always emitted as
// strings ("3", "1/2"), never as floating point, and every object and
// array is ordered by label so identical inputs serialize byte-identically.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "circrank/kemeny.hpp"
#include "circrank/minmax.hpp"
#include "circrank/partial_order.hpp"
#include "circrank/strong_circulation.hpp"
#include "circrank/vote_graph.hpp"

namespace circrank {

using json = nlohmann::ordered_json;

namespace serialize_detail {

inline std::vector<std::size_t> arcs_by_label(const VoteGraph& g) {
  std::vector<std::size_t> order(g.arc_count());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto ka = std::make_pair(g.label(g.arcs()[a].tail), g.label(g.arcs()[a].head));
    const auto kb = std::make_pair(g.label(g.arcs()[b].tail), g.label(g.arcs()[b].head));
    return ka < kb;
  });
  return order;
}

inline json arc_pairs(const VoteGraph& g, const ArcSet& arcs) {
  std::vector<std::pair<std::string, std::string>> pairs;
  pairs.reserve(arcs.size());
  for (const Arc& a : arcs) pairs.emplace_back(g.label(a.tail), g.label(a.head));
  std::sort(pairs.begin(), pairs.end());
  json out = json::array();
  for (const auto& [from, to] : pairs) out.push_back(json::array({from, to}));
  return out;
}

}  // namespace serialize_detail

inline json circulation_json(const VoteGraph& g, const std::vector<Rational>& flow) {
  json out = json::object();
  for (std::size_t i : serialize_detail::arcs_by_label(g)) {
    const Arc a = g.arcs()[i];
    out[g.label(a.tail) + "->" + g.label(a.head)] = flow[i].str();
  }
  return out;
}

inline json duals_json(const VoteGraph& g, const std::vector<Rational>& y) {
  std::vector<int> nodes(g.node_count());
  for (int v = 0; v < g.node_count(); ++v) nodes[v] = v;
  std::sort(nodes.begin(), nodes.end(),
            [&](int a, int b) { return g.label(a) < g.label(b); });
  json out = json::object();
  for (int v : nodes) out[g.label(v)] = y[v].str();
  return out;
}

inline json certificate_json(const VoteGraph& g, const Certificate& cert) {
  json out;
  out["circulation"] = circulation_json(g, cert.circulation);
  out["duals"] = duals_json(g, cert.duals);
  out["strong_arcs"] = serialize_detail::arc_pairs(g, cert.strong_arcs);
  out["verdict"] = cert.pass ? "pass" : "fail";
  if (cert.first_violation) {
    out["first_violation"] = {
        {"arc", json::array({g.label(cert.first_violation->arc.tail),
                             g.label(cert.first_violation->arc.head)})},
        {"condition", cert.first_violation->condition}};
  }
  return out;
}

inline json order_json(const PartialOrder& order) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const Arc& a : order.relation()) {
    pairs.emplace_back(order.ground()[a.tail], order.ground()[a.head]);
  }
  std::sort(pairs.begin(), pairs.end());
  json arr = json::array();
  for (const auto& [from, to] : pairs) arr.push_back(json::array({from, to}));
  return json{{"order", arr}};
}

inline json kemeny_json(const KemenyResult& kemeny, const VoteGraph& g,
                        const RelaxKemResult& relaxed) {
  json orders = json::array();
  for (const auto& order : kemeny.best_orders) orders.push_back(order);
  json scores = duals_json(g, relaxed.scores);
  return json{{"kemeny", {{"weight", kemeny.removed_weight.str()}, {"orders", orders}}},
              {"relax_kem", {{"objective", relaxed.objective.str()}, {"scores", scores}}}};
}

inline json minmax_json(const VoteGraph& g, const MinMaxResult& result) {
  json circulations = json::array();
  for (const auto& x : result.circulations) {
    std::vector<Rational> flow(x.begin(), x.end());
    circulations.push_back(circulation_json(g, flow));
  }
  json conflicts = json::array();
  for (const auto& c : result.conflict_report) {
    json pairs = serialize_detail::arc_pairs(g, c.pairs);
    conflicts.push_back({{"circulations", json::array({c.first, c.second})},
                         {"pairs", pairs}});
  }
  return json{{"weight", result.weight},
              {"circulations", circulations},
              {"conflicts", conflicts}};
}

}  // namespace circrank
