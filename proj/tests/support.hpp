#pragma once

// Shared fixtures: the three small graphs exercised throughout the suite.

#include <algorithm>
#include <initializer_list>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "circrank/circrank.hpp"

namespace support {

using circrank::Arc;
using circrank::ArcSet;
using circrank::Rational;
using circrank::VoteGraph;

// Four alternatives, five unit arcs, two overlapping 3-cycles through the
// shared arc (3,1).  Maximum circulation value 3; strong arcs are the four
// arcs off the shared one.
inline VoteGraph four_node_two_cycles() {
  return VoteGraph::from_pairwise({{"1", "2", Rational(1)},
                                   {"2", "3", Rational(1)},
                                   {"4", "3", Rational(1)},
                                   {"1", "4", Rational(1)},
                                   {"3", "1", Rational(1)}});
}

// Three alternatives with a chord: caps 2 on (1,2), (2,3), (1,3) and 1 on
// (3,1).  The unique maximum circulation pushes one unit around 1-2-3-1,
// leaving (1,3) strong despite carrying zero flow everywhere.
inline VoteGraph three_node_chord() {
  return VoteGraph::from_pairwise({{"1", "2", Rational(2)},
                                   {"2", "3", Rational(2)},
                                   {"1", "3", Rational(2)},
                                   {"3", "1", Rational(1)}});
}

// Eight alternatives, twelve unit arcs; the minimum maximal circulations
// are not unique and induce conflicting orders.
inline VoteGraph eight_node_conflict() {
  std::vector<circrank::PairwiseRecord> records;
  for (auto [u, v] : std::vector<std::pair<int, int>>{{1, 2}, {2, 3}, {2, 5},
                                                      {3, 4}, {4, 1}, {4, 7},
                                                      {5, 6}, {6, 1}, {6, 5},
                                                      {7, 8}, {8, 3}, {8, 7}}) {
    records.push_back({std::to_string(u), std::to_string(v), Rational(1)});
  }
  return VoteGraph::from_pairwise(records);
}

inline ArcSet arcs(const VoteGraph& g,
                   std::initializer_list<std::pair<const char*, const char*>> pairs) {
  ArcSet out;
  for (const auto& [a, b] : pairs) out.push_back({g.index_of(a), g.index_of(b)});
  std::sort(out.begin(), out.end());
  return out;
}

using LabelPairs = std::set<std::pair<std::string, std::string>>;

inline LabelPairs label_pairs(const std::vector<std::string>& labels, const ArcSet& set) {
  LabelPairs out;
  for (const Arc& a : set) out.insert({labels[a.tail], labels[a.head]});
  return out;
}

inline LabelPairs label_pairs(const VoteGraph& g, const ArcSet& set) {
  return label_pairs(g.labels(), set);
}

inline LabelPairs label_pairs(const circrank::PartialOrder& order) {
  return label_pairs(order.ground(), order.relation());
}

}  // namespace support
