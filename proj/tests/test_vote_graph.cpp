#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "circrank/oracle.hpp"
#include "circrank/vote_graph.hpp"
#include "support.hpp"

using namespace circrank;

TEST_CASE("from_pairwise builds the labelled capacitated graph") {
  VoteGraph g = support::four_node_two_cycles();
  CHECK(g.node_count() == 4);
  CHECK(g.arc_count() == 5);
  for (std::size_t i = 0; i < g.arc_count(); ++i) CHECK(g.capacity(i) == Rational(1));

  CHECK(VoteGraph::from_pairwise({}).node_count() == 0);

  VoteGraph repeated = VoteGraph::from_pairwise(
      {{"1", "2", Rational(1)}, {"1", "2", Rational(2)}});
  CHECK(repeated.arc_count() == 1);
  CHECK(repeated.capacity(0) == Rational(3));
}

TEST_CASE("from_pairwise rejects bad records") {
  CHECK_THROWS_AS(VoteGraph::from_pairwise({{"a", "a", Rational(1)}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(VoteGraph::from_pairwise({{"a", "b", Rational(0)}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(VoteGraph::from_pairwise({{"a", "b", Rational(-1, 2)}}),
                  std::invalid_argument);
}

TEST_CASE("from_ranked_ballots expands ordered pairs") {
  VoteGraph g = VoteGraph::from_ranked_ballots({{Rational(1), {"a", "b", "c"}}});
  CHECK(g.arc_count() == 3);
  CHECK(support::label_pairs(g, g.arcs()) ==
        support::LabelPairs{{"a", "b"}, {"a", "c"}, {"b", "c"}});

  VoteGraph opposing = VoteGraph::from_ranked_ballots(
      {{Rational(2), {"a", "b"}}, {Rational(1), {"b", "a"}}});
  CHECK(opposing.capacity(*opposing.arc_index(
            {opposing.index_of("a"), opposing.index_of("b")})) == Rational(2));
  CHECK(opposing.capacity(*opposing.arc_index(
            {opposing.index_of("b"), opposing.index_of("a")})) == Rational(1));

  VoteGraph singleton = VoteGraph::from_ranked_ballots({{Rational(1), {"a"}}});
  CHECK(singleton.node_count() == 1);
  CHECK(singleton.arc_count() == 0);

  CHECK_THROWS_AS(VoteGraph::from_ranked_ballots({{Rational(1), {"a", "b", "a"}}}),
                  std::invalid_argument);
}

TEST_CASE("ballot expansion weight adds up to count * pairs") {
  oracle_detail::SplitMix64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Ballot> ballots;
    Rational expected;
    int count = 1 + static_cast<int>(rng.below(4));
    for (int b = 0; b < count; ++b) {
      Ballot ballot;
      ballot.count = Rational(1 + static_cast<long long>(rng.below(5)));
      int len = 1 + static_cast<int>(rng.below(5));
      for (int k = 0; k < len; ++k) {
        ballot.ranking.push_back("alt" + std::to_string(rng.below(26)));
      }
      std::sort(ballot.ranking.begin(), ballot.ranking.end());
      ballot.ranking.erase(std::unique(ballot.ranking.begin(), ballot.ranking.end()),
                           ballot.ranking.end());
      long long pairs = static_cast<long long>(ballot.ranking.size()) *
                        (ballot.ranking.size() - 1) / 2;
      expected += ballot.count * Rational(pairs);
      ballots.push_back(std::move(ballot));
    }
    CHECK(VoteGraph::from_ranked_ballots(ballots).total_weight() == expected);
  }
}

TEST_CASE("acyclicity predicate") {
  CHECK_FALSE(is_acyclic(support::four_node_two_cycles()));
  VoteGraph path = VoteGraph::from_pairwise({{"1", "2", Rational(1)},
                                             {"2", "3", Rational(1)}});
  CHECK(is_acyclic(path));
  VoteGraph two_cycle = VoteGraph::from_pairwise({{"1", "2", Rational(1)},
                                                  {"2", "1", Rational(1)}});
  CHECK_FALSE(is_acyclic(two_cycle));
  CHECK(is_acyclic(0, {}));
}

TEST_CASE("eulerian predicate compares weighted degrees") {
  VoteGraph cycle = VoteGraph::from_pairwise({{"1", "2", Rational(1)},
                                              {"2", "3", Rational(1)},
                                              {"3", "1", Rational(1)}});
  CHECK(is_eulerian(cycle));
  CHECK_FALSE(is_eulerian(support::four_node_two_cycles()));
  CHECK(is_eulerian(VoteGraph{}));
  // Balance is weighted: unequal caps on a 2-cycle break it.
  VoteGraph lopsided = VoteGraph::from_pairwise({{"1", "2", Rational(2)},
                                                 {"2", "1", Rational(1)}});
  CHECK_FALSE(is_eulerian(lopsided));
}

TEST_CASE("an eulerian graph's full capacity vector is a circulation") {
  VoteGraph g = VoteGraph::from_pairwise({{"1", "2", Rational(1, 2)},
                                          {"2", "3", Rational(1, 2)},
                                          {"3", "1", Rational(1, 2)},
                                          {"1", "3", Rational(3)},
                                          {"3", "1", Rational(3)}});
  REQUIRE(is_eulerian(g));
  std::vector<Rational> balance(g.node_count());
  for (std::size_t i = 0; i < g.arc_count(); ++i) {
    balance[g.arcs()[i].tail] += g.capacity(i);
    balance[g.arcs()[i].head] -= g.capacity(i);
  }
  for (const Rational& b : balance) CHECK(b.is_zero());
  CHECK(remaining_arcs(g, g.capacities()).empty());
}

TEST_CASE("pairwise csv round-trips capacities exactly") {
  std::istringstream in(
      "from,to,count\n"
      "# capacities may be rational\n"
      "x,y,2/3\n"
      "y,z,1.5\n"
      "z,x,4\n");
  VoteGraph g = read_pairwise_csv(in);
  CHECK(g.capacity(*g.arc_index({g.index_of("x"), g.index_of("y")})) == Rational(2, 3));

  std::ostringstream out;
  write_pairwise_csv(g, out);
  std::istringstream again(out.str());
  CHECK(read_pairwise_csv(again) == g);
}

TEST_CASE("csv round-trip holds on random graphs") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    VoteGraph g = random_vote_graph(seed);
    if (g.arc_count() == 0) continue;  // isolated nodes are not representable
    std::ostringstream out;
    write_pairwise_csv(g, out);
    std::ostringstream out2;
    std::istringstream back(out.str());
    VoteGraph parsed = read_pairwise_csv(back);
    write_pairwise_csv(parsed, out2);
    CHECK(out.str() == out2.str());
    CHECK(parsed.total_weight() == g.total_weight());
  }
}

TEST_CASE("csv parser rejects malformed input") {
  std::istringstream missing_header("a,b,1\n");
  CHECK_THROWS_AS(read_pairwise_csv(missing_header), parse_error);
  std::istringstream short_row("from,to,count\na,b\n");
  CHECK_THROWS_AS(read_pairwise_csv(short_row), parse_error);
  std::istringstream bad_count("from,to,count\na,b,zero\n");
  CHECK_THROWS_AS(read_pairwise_csv(bad_count), parse_error);
  std::istringstream self_loop("from,to,count\na,a,1\n");
  CHECK_THROWS_AS(read_pairwise_csv(self_loop), parse_error);
}

TEST_CASE("ballot files parse counts and rankings") {
  std::istringstream in(
      "# two ballots\n"
      "2: alpha > beta > gamma\n"
      "1:beta>alpha\n"
      "\n"
      "1: delta  # a singleton ranking\n");
  VoteGraph g = read_ballot_file(in);
  CHECK(g.node_count() == 4);
  CHECK(g.capacity(*g.arc_index({g.index_of("alpha"), g.index_of("beta")})) ==
        Rational(2));
  CHECK(g.capacity(*g.arc_index({g.index_of("beta"), g.index_of("alpha")})) ==
        Rational(1));

  std::istringstream no_colon("2 alpha > beta\n");
  CHECK_THROWS_AS(read_ballot_file(no_colon), parse_error);
  std::istringstream dup("1: a > b > a\n");
  CHECK_THROWS_AS(read_ballot_file(dup), parse_error);
}
