#pragma once

// Capacitated vote graphs.  An arc (i, j) with capacity q_ij records q_ij
// units of expressed preference for alternative i over alternative j.
// Alternatives carry arbitrary string labels externally and are mapped to
// dense indices in order of first mention, so all derived output is
// deterministic for a given input.

#include <algorithm>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "circrank/rational.hpp"

namespace circrank {

/// Raised when an input file cannot be parsed.
class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an instance exceeds a configured brute-force limit.
class size_limit_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an internal consistency check fails; indicates a solver bug,
/// never bad input.
class internal_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Arc {
  int tail = 0;
  int head = 0;
  friend bool operator==(const Arc&, const Arc&) = default;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// A set of ordered node pairs, kept sorted by (tail, head).
using ArcSet = std::vector<Arc>;

inline bool arc_set_contains(const ArcSet& set, Arc a) {
  return std::binary_search(set.begin(), set.end(), a);
}

struct PairwiseRecord {
  std::string from;
  std::string to;
  Rational count;
};

struct Ballot {
  Rational count;
  std::vector<std::string> ranking;  // most preferred first
};

class VoteGraph {
 public:
  VoteGraph() = default;

  /// Sums per-pair counts into arc capacities.  Rejects self-loops and
  /// non-positive counts.  `extra_labels` registers nodes that should exist
  /// even if no record mentions them.
  static VoteGraph from_pairwise(const std::vector<PairwiseRecord>& records,
                                 const std::vector<std::string>& extra_labels = {}) {
    VoteGraph g;
    for (const std::string& label : extra_labels) g.intern(label);
    std::map<std::pair<int, int>, Rational> sums;
    for (const PairwiseRecord& rec : records) {
      if (rec.from == rec.to) {
        throw std::invalid_argument("self-loop vote record for '" + rec.from + "'");
      }
      if (!(rec.count > Rational(0))) {
        throw std::invalid_argument("non-positive vote count for (" + rec.from +
                                    ", " + rec.to + ")");
      }
      int tail = g.intern(rec.from);
      int head = g.intern(rec.to);
      sums[{tail, head}] += rec.count;
    }
    for (const auto& [key, cap] : sums) {
      g.arcs_.push_back({key.first, key.second});
      g.caps_.push_back(cap);
    }
    return g;
  }

  /// Expands each ballot into one pairwise record per ordered pair of
  /// listed alternatives, weighted by the ballot count.
  static VoteGraph from_ranked_ballots(const std::vector<Ballot>& ballots) {
    std::vector<PairwiseRecord> records;
    std::vector<std::string> mentioned;
    for (const Ballot& b : ballots) {
      std::set<std::string> seen;
      for (const std::string& alt : b.ranking) {
        if (!seen.insert(alt).second) {
          throw std::invalid_argument("duplicate alternative '" + alt +
                                      "' within one ballot");
        }
      }
      if (!(b.count > Rational(0))) {
        throw std::invalid_argument("non-positive ballot count");
      }
      for (std::size_t i = 0; i < b.ranking.size(); ++i) {
        mentioned.push_back(b.ranking[i]);
        for (std::size_t j = i + 1; j < b.ranking.size(); ++j) {
          records.push_back({b.ranking[i], b.ranking[j], b.count});
        }
      }
    }
    return from_pairwise(records, mentioned);
  }

  int node_count() const { return static_cast<int>(labels_.size()); }
  std::size_t arc_count() const { return arcs_.size(); }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int node) const { return labels_.at(node); }

  /// Dense index of a label, or -1 when absent.
  int index_of(std::string_view label) const {
    auto it = index_.find(label);
    return it == index_.end() ? -1 : it->second;
  }

  /// Arcs sorted by (tail, head); capacities() is parallel to this.
  const std::vector<Arc>& arcs() const { return arcs_; }
  const std::vector<Rational>& capacities() const { return caps_; }

  std::optional<std::size_t> arc_index(Arc a) const {
    auto it = std::lower_bound(arcs_.begin(), arcs_.end(), a);
    if (it == arcs_.end() || *it != a) return std::nullopt;
    return static_cast<std::size_t>(it - arcs_.begin());
  }

  const Rational& capacity(std::size_t arc) const { return caps_.at(arc); }

  bool integral() const {
    return std::all_of(caps_.begin(), caps_.end(),
                       [](const Rational& c) { return c.is_integer(); });
  }

  Rational total_weight() const {
    Rational total;
    for (const Rational& c : caps_) total += c;
    return total;
  }

  /// Graphs are equal when they describe the same labelled vote data,
  /// regardless of label insertion order.
  friend bool operator==(const VoteGraph& a, const VoteGraph& b) {
    if (a.label_set() != b.label_set()) return false;
    return a.capacity_map() == b.capacity_map();
  }

 private:
  int intern(const std::string& label) {
    auto [it, inserted] = index_.try_emplace(label, node_count());
    if (inserted) labels_.push_back(label);
    return it->second;
  }

  std::set<std::string> label_set() const {
    return {labels_.begin(), labels_.end()};
  }

  std::map<std::pair<std::string, std::string>, Rational> capacity_map() const {
    std::map<std::pair<std::string, std::string>, Rational> m;
    for (std::size_t i = 0; i < arcs_.size(); ++i) {
      m[{labels_[arcs_[i].tail], labels_[arcs_[i].head]}] = caps_[i];
    }
    return m;
  }

  std::vector<std::string> labels_;
  std::map<std::string, int, std::less<>> index_;
  std::vector<Arc> arcs_;
  std::vector<Rational> caps_;
};

/// True when the arc set contains no directed cycle (Kahn's algorithm).
inline bool is_acyclic(int node_count, const ArcSet& arcs) {
  std::vector<int> indegree(node_count, 0);
  std::vector<std::vector<int>> out(node_count);
  for (const Arc& a : arcs) {
    ++indegree[a.head];
    out[a.tail].push_back(a.head);
  }
  std::vector<int> ready;
  for (int v = 0; v < node_count; ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  int removed = 0;
  while (!ready.empty()) {
    int v = ready.back();
    ready.pop_back();
    ++removed;
    for (int w : out[v]) {
      if (--indegree[w] == 0) ready.push_back(w);
    }
  }
  return removed == node_count;
}

inline bool is_acyclic(const VoteGraph& g) {
  return is_acyclic(g.node_count(), g.arcs());
}

/// True when weighted out-degree equals weighted in-degree at every node.
inline bool is_eulerian(const VoteGraph& g) {
  std::vector<Rational> balance(g.node_count());
  for (std::size_t i = 0; i < g.arc_count(); ++i) {
    balance[g.arcs()[i].tail] += g.capacity(i);
    balance[g.arcs()[i].head] -= g.capacity(i);
  }
  return std::all_of(balance.begin(), balance.end(),
                     [](const Rational& b) { return b.is_zero(); });
}

/// A(q - x): arcs whose flow is strictly below capacity.
inline ArcSet remaining_arcs(const VoteGraph& g, const std::vector<Rational>& flow) {
  if (flow.size() != g.arc_count()) {
    throw std::invalid_argument("flow vector does not match arc count");
  }
  ArcSet out;
  for (std::size_t i = 0; i < g.arc_count(); ++i) {
    if (flow[i] < g.capacity(i)) out.push_back(g.arcs()[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// File formats.
//
// Pairwise CSV: a `from,to,count` header followed by one record per line;
// counts are decimal or p/q literals.  Lines starting with '#' are comments.
//
// Ballot files: `COUNT: A > B > C` per line, whitespace-insensitive, with
// '#' comments.

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.emplace_back(s.substr(start));
      return parts;
    }
    parts.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace detail

inline VoteGraph read_pairwise_csv(std::istream& in) {
  std::string line;
  bool header_seen = false;
  std::vector<PairwiseRecord> records;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string text = detail::trim(line);
    if (text.empty() || text[0] == '#') continue;
    if (!header_seen) {
      std::string lowered = text;
      std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                     [](unsigned char c) { return std::tolower(c); });
      lowered.erase(std::remove_if(lowered.begin(), lowered.end(),
                                   [](unsigned char c) { return std::isspace(c); }),
                    lowered.end());
      if (lowered != "from,to,count") {
        throw parse_error("line " + std::to_string(lineno) +
                          ": expected 'from,to,count' header");
      }
      header_seen = true;
      continue;
    }
    std::vector<std::string> fields = detail::split(text, ',');
    if (fields.size() != 3) {
      throw parse_error("line " + std::to_string(lineno) +
                        ": expected 3 comma-separated fields");
    }
    PairwiseRecord rec;
    rec.from = detail::trim(fields[0]);
    rec.to = detail::trim(fields[1]);
    if (rec.from.empty() || rec.to.empty()) {
      throw parse_error("line " + std::to_string(lineno) + ": empty node label");
    }
    try {
      rec.count = Rational::parse(detail::trim(fields[2]));
    } catch (const std::invalid_argument& e) {
      throw parse_error("line " + std::to_string(lineno) + ": " + e.what());
    }
    records.push_back(std::move(rec));
  }
  try {
    return VoteGraph::from_pairwise(records);
  } catch (const std::invalid_argument& e) {
    throw parse_error(e.what());
  }
}

/// Emits arcs sorted by (from, to) label so output is diff-stable.
/// Capacities round-trip exactly.  Nodes without incident arcs are not
/// representable in this format.
inline void write_pairwise_csv(const VoteGraph& g, std::ostream& out) {
  std::vector<std::size_t> order(g.arc_count());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto ka = std::make_pair(g.label(g.arcs()[a].tail), g.label(g.arcs()[a].head));
    const auto kb = std::make_pair(g.label(g.arcs()[b].tail), g.label(g.arcs()[b].head));
    return ka < kb;
  });
  out << "from,to,count\n";
  for (std::size_t i : order) {
    out << g.label(g.arcs()[i].tail) << ',' << g.label(g.arcs()[i].head) << ','
        << g.capacity(i).str() << '\n';
  }
}

inline VoteGraph read_ballot_file(std::istream& in) {
  std::vector<Ballot> ballots;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string text = detail::trim(line);
    if (text.empty()) continue;
    std::size_t colon = text.find(':');
    if (colon == std::string::npos) {
      throw parse_error("line " + std::to_string(lineno) +
                        ": expected 'COUNT: A > B > ...'");
    }
    Ballot ballot;
    try {
      ballot.count = Rational::parse(detail::trim(text.substr(0, colon)));
    } catch (const std::invalid_argument& e) {
      throw parse_error("line " + std::to_string(lineno) + ": " + e.what());
    }
    for (const std::string& part : detail::split(text.substr(colon + 1), '>')) {
      std::string alt = detail::trim(part);
      if (alt.empty()) {
        throw parse_error("line " + std::to_string(lineno) + ": empty alternative");
      }
      ballot.ranking.push_back(std::move(alt));
    }
    ballots.push_back(std::move(ballot));
  }
  try {
    return VoteGraph::from_ranked_ballots(ballots);
  } catch (const std::invalid_argument& e) {
    throw parse_error(e.what());
  }
}

}  // namespace circrank
