#include <catch2/catch_amalgamated.hpp>

#include "circrank/oracle.hpp"
#include "circrank/strong_circulation.hpp"
#include "support.hpp"

using namespace circrank;

namespace {

const support::LabelPairs kFourNodeStrong{{"1", "2"}, {"2", "3"}, {"1", "4"}, {"4", "3"}};

std::vector<Rational> flow_by_labels(
    const VoteGraph& g,
    const std::vector<std::pair<std::pair<const char*, const char*>, Rational>>& entries) {
  std::vector<Rational> flow(g.arc_count());
  for (const auto& [arc, value] : entries) {
    flow[*g.arc_index({g.index_of(arc.first), g.index_of(arc.second)})] = value;
  }
  return flow;
}

}  // namespace

TEST_CASE("per-arc route on the two-cycle graph") {
  VoteGraph g = support::four_node_two_cycles();
  StrongResult r = reference_algorithm(g);
  CHECK(r.max_value == Rational(3));
  CHECK(support::label_pairs(g, r.strong_arcs) == kFourNodeStrong);
  CHECK_FALSE(r.duals.has_value());
  // The averaged witnesses carry 1/2 on each strong arc, 1 on the shared arc.
  for (std::size_t i = 0; i < g.arc_count(); ++i) {
    bool strong = arc_set_contains(r.strong_arcs, g.arcs()[i]);
    CHECK(r.circulation[i] == (strong ? Rational(1, 2) : Rational(1)));
  }
}

TEST_CASE("per-arc route keeps a zero-flow strong arc") {
  VoteGraph g = support::three_node_chord();
  StrongResult r = reference_algorithm(g);
  CHECK(support::label_pairs(g, r.strong_arcs) ==
        support::LabelPairs{{"1", "2"}, {"1", "3"}, {"2", "3"}});
  CHECK(r.max_value == Rational(3));
}

TEST_CASE("eulerian graphs have no strong arcs and keep every vote") {
  VoteGraph g = VoteGraph::from_pairwise(
      {{"1", "2", Rational(2)}, {"2", "1", Rational(2)}});
  for (const StrongResult& r : {reference_algorithm(g), perturbation(g)}) {
    CHECK(r.strong_arcs.empty());
    CHECK(r.circulation == g.capacities());
    CHECK(r.max_value == Rational(4));
  }
}

TEST_CASE("perturbation route matches the per-arc route and certifies itself") {
  VoteGraph g = support::four_node_two_cycles();
  StrongResult r = perturbation(g);
  CHECK(support::label_pairs(g, r.strong_arcs) == kFourNodeStrong);
  CHECK(r.max_value == Rational(3));
  REQUIRE(r.duals.has_value());
  Certificate cert = check_strong_cs(g, r.circulation, *r.duals);
  CHECK(cert.pass);
  CHECK(cert.strong_arcs == r.strong_arcs);
}

TEST_CASE("both routes agree with the oracle on random instances") {
  EnumerationBudget roomy{std::uint64_t{1} << 62};
  for (std::uint64_t seed = 300; seed < 420; ++seed) {
    VoteGraph g = random_vote_graph(seed);
    StrongResult a = reference_algorithm(g);
    StrongResult b = perturbation(g);
    CAPTURE(seed);
    CHECK(a.strong_arcs == b.strong_arcs);
    CHECK(a.max_value == b.max_value);
    CHECK(a.strong_arcs == oracle_strong_arcs(g, roomy));
    CHECK(is_acyclic(g.node_count(), a.strong_arcs));
    CHECK((a.strong_arcs.empty()) == is_eulerian(g));
  }
}

TEST_CASE("routes agree on fractional capacities too") {
  VoteGraph g = VoteGraph::from_pairwise({{"1", "2", Rational(1, 2)},
                                          {"2", "3", Rational(3, 2)},
                                          {"3", "1", Rational(1, 2)},
                                          {"2", "1", Rational(1)},
                                          {"3", "2", Rational(1, 3)}});
  StrongResult a = reference_algorithm(g);
  StrongResult b = perturbation(g);
  CHECK(a.strong_arcs == b.strong_arcs);
  CHECK(a.max_value == b.max_value);
  CHECK(a.strong_arcs == oracle_strong_arcs(g));
  Certificate cert = check_strong_cs(g, b.circulation, *b.duals);
  CHECK(cert.pass);
}

TEST_CASE("every maximum circulation leaves a subset of the strong arcs") {
  for (std::uint64_t seed = 500; seed < 540; ++seed) {
    VoteGraph g = random_vote_graph(seed);
    StrongResult strong = perturbation(g);
    Circulation base = max_circulation(g);
    ArcSet left = remaining_arcs(g, base.flow);
    CHECK(std::includes(strong.strong_arcs.begin(), strong.strong_arcs.end(),
                        left.begin(), left.end()));
    CHECK(left.size() <= strong.strong_arcs.size());
    // Tightened solves that still reach the optimum are maximum
    // circulations as well; check a few of them.
    for (std::size_t i = 0; i < g.arc_count() && i < 4; ++i) {
      if (!g.capacity(i).is_integer() || g.capacity(i) < Rational(1)) continue;
      Circulation capped =
          max_circulation_with_cap(g, g.arcs()[i], g.capacity(i) - Rational(1));
      if (capped.value != base.value) continue;
      ArcSet rest = remaining_arcs(g, capped.flow);
      CHECK(std::includes(strong.strong_arcs.begin(), strong.strong_arcs.end(),
                          rest.begin(), rest.end()));
    }
  }
}

TEST_CASE("strong complementary slackness verdicts") {
  VoteGraph g = support::four_node_two_cycles();
  StrongResult strong = perturbation(g);

  SECTION("the zero circulation fails condition 1 on the first arc") {
    std::vector<Rational> zero(g.arc_count(), Rational(0));
    std::vector<Rational> flat(g.node_count(), Rational(0));
    Certificate cert = check_strong_cs(g, zero, flat);
    CHECK_FALSE(cert.pass);
    REQUIRE(cert.first_violation.has_value());
    CHECK(cert.first_violation->condition == 1);
    CHECK(g.label(cert.first_violation->arc.tail) == "1");
    CHECK(g.label(cert.first_violation->arc.head) == "2");
    // Every arc is classified, and every one of them violates.
    CHECK(cert.conditions.size() == g.arc_count());
    for (const CsConditionStatus& s : cert.conditions) CHECK_FALSE(s.ok);
  }

  SECTION("a non-strong maximum circulation fails against valid duals") {
    // Saturate the single cycle 1-2-3-1: a maximum circulation, not strong.
    std::vector<Rational> one_cycle = flow_by_labels(g, {{{"1", "2"}, Rational(1)},
                                                         {{"2", "3"}, Rational(1)},
                                                         {{"3", "1"}, Rational(1)}});
    Certificate cert = check_strong_cs(g, one_cycle, *strong.duals);
    CHECK_FALSE(cert.pass);
  }

  SECTION("per-arc classification distinguishes the three cases") {
    Certificate cert = check_strong_cs(g, strong.circulation, *strong.duals);
    REQUIRE(cert.pass);
    int interior = 0, saturated = 0;
    for (const CsConditionStatus& s : cert.conditions) {
      if (s.kind == CsCase::interior) {
        ++interior;
        CHECK(s.reduced_value.is_zero());
      }
      if (s.kind == CsCase::saturated) {
        ++saturated;
        CHECK(s.reduced_value > Rational(0));
      }
    }
    CHECK(interior == 4);
    CHECK(saturated == 1);
  }

  SECTION("infeasible flows are rejected, not failed") {
    std::vector<Rational> over(g.arc_count(), Rational(2));
    std::vector<Rational> flat(g.node_count(), Rational(0));
    CHECK_THROWS_AS(check_strong_cs(g, over, flat), std::domain_error);
    // Balanced bounds but broken conservation.
    std::vector<Rational> lopsided = flow_by_labels(g, {{{"1", "2"}, Rational(1)}});
    CHECK_THROWS_AS(check_strong_cs(g, lopsided, flat), std::domain_error);
  }
}

TEST_CASE("witness combination") {
  VoteGraph g = support::four_node_two_cycles();
  std::vector<Rational> first = flow_by_labels(g, {{{"1", "2"}, Rational(1)},
                                                   {{"2", "3"}, Rational(1)},
                                                   {{"3", "1"}, Rational(1)}});
  std::vector<Rational> second = flow_by_labels(g, {{{"1", "4"}, Rational(1)},
                                                    {{"4", "3"}, Rational(1)},
                                                    {{"3", "1"}, Rational(1)}});

  SECTION("equal weights reproduce the averaged strong circulation") {
    std::vector<Rational> combined = strong_circulation_from_witnesses(
        {first, second}, {Rational(1, 2), Rational(1, 2)});
    CHECK(combined == reference_algorithm(g).circulation);
    CHECK(support::label_pairs(g, remaining_arcs(g, combined)) == kFourNodeStrong);
  }

  SECTION("a single witness with weight one is returned unchanged") {
    CHECK(strong_circulation_from_witnesses({first}, {Rational(1)}) == first);
  }

  SECTION("weights must be positive and sum to one") {
    CHECK_THROWS_AS(strong_circulation_from_witnesses({first, second},
                                                      {Rational(1), Rational(1)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(strong_circulation_from_witnesses(
                        {first, second}, {Rational(3, 2), Rational(-1, 2)}),
                    std::invalid_argument);
  }
}

TEST_CASE("witness combination covers the eight-node conflict graph") {
  VoteGraph g = support::eight_node_conflict();
  // Two maximum circulations: cycles {1-2-5-6-1, 3-4-7-8-3} and
  // {1-2-3-4-1, 5-6-5, 7-8-7}.
  std::vector<Rational> first = flow_by_labels(
      g, {{{"1", "2"}, Rational(1)}, {{"2", "5"}, Rational(1)},
          {{"5", "6"}, Rational(1)}, {{"6", "1"}, Rational(1)},
          {{"3", "4"}, Rational(1)}, {{"4", "7"}, Rational(1)},
          {{"7", "8"}, Rational(1)}, {{"8", "3"}, Rational(1)}});
  std::vector<Rational> second = flow_by_labels(
      g, {{{"1", "2"}, Rational(1)}, {{"2", "3"}, Rational(1)},
          {{"3", "4"}, Rational(1)}, {{"4", "1"}, Rational(1)},
          {{"5", "6"}, Rational(1)}, {{"6", "5"}, Rational(1)},
          {{"7", "8"}, Rational(1)}, {{"8", "7"}, Rational(1)}});
  std::vector<Rational> combined = strong_circulation_from_witnesses(
      {first, second}, {Rational(1, 2), Rational(1, 2)});
  CHECK(support::label_pairs(g, remaining_arcs(g, combined)) ==
        support::LabelPairs{{"2", "3"}, {"2", "5"}, {"4", "1"}, {"4", "7"},
                            {"6", "1"}, {"6", "5"}, {"8", "3"}, {"8", "7"}});
  CHECK(remaining_arcs(g, combined) == perturbation(g).strong_arcs);
}

TEST_CASE("empty graphs produce empty results") {
  VoteGraph g;
  StrongResult a = reference_algorithm(g);
  StrongResult b = perturbation(g);
  CHECK(a.strong_arcs.empty());
  CHECK(b.strong_arcs.empty());
  CHECK(a.max_value == Rational(0));
  CHECK(b.max_value == Rational(0));
}
