#include "crnsr/graph.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <tuple>

using namespace crnsr;

namespace {

using EdgeTuple = std::tuple<std::string, std::string, int, std::string, Orientation>;

std::vector<EdgeTuple> edge_tuples(const SRGraph& g) {
  std::vector<EdgeTuple> out;
  for (const auto& e : g.edges()) {
    out.emplace_back(g.species_names()[e.species], g.reaction_names()[e.reaction], e.sign, e.label.str(),
                     e.orientation);
  }
  std::sort(out.begin(), out.end());
  return out;
}

constexpr auto U = Orientation::Undirected;
constexpr auto RS = Orientation::ReactionToSpecies;

}  // namespace

TEST_CASE("SR graph of the reversible two-reaction network") {
  const SRGraph g = build_sr(oracle::fixture("abc_reversible"));
  CHECK(g.kind() == GraphKind::SR);
  const std::vector<EdgeTuple> expected{{"A", "R1", -1, "1", U}, {"A", "R2", -1, "1", U}, {"B", "R1", -1, "1", U},
                                        {"B", "R2", 1, "1", U},  {"C", "R1", 1, "1", U}};
  CHECK(edge_tuples(g) == expected);
}

TEST_CASE("DSR graph differs only in the product of the irreversible reaction") {
  const SRGraph sr = build_sr(oracle::fixture("abc_irreversible"));
  const SRGraph dsr = build_dsr(oracle::fixture("abc_irreversible"));
  const std::vector<EdgeTuple> expected{{"A", "R1", -1, "1", U}, {"A", "R2", -1, "1", U}, {"B", "R1", -1, "1", U},
                                        {"B", "R2", 1, "1", RS}, {"C", "R1", 1, "1", U}};
  CHECK(edge_tuples(dsr) == expected);
  CHECK(edge_tuples(sr) == edge_tuples(build_sr(oracle::fixture("abc_reversible"))));

  const SRGraph rev_dsr = build_dsr(oracle::fixture("abc_reversible"));
  CHECK(edge_tuples(rev_dsr) == edge_tuples(build_sr(oracle::fixture("abc_reversible"))));

  const SRGraph single = build_dsr(parse_network("A -> B"));
  const std::vector<EdgeTuple> single_expected{{"A", "R1", -1, "1", U}, {"B", "R1", 1, "1", RS}};
  CHECK(edge_tuples(single) == single_expected);
}

TEST_CASE("ring network graph") {
  const SRGraph g = build_sr(oracle::ring_network(1));
  CHECK(g.edges().size() == 8);
  const auto a1 = *g.find_vertex("A1");
  const auto r3 = *g.find_vertex("R3");
  bool found = false;
  for (auto e : g.incident(a1)) {
    if (g.opposite(e, a1) == r3) {
      CHECK(g.edge(e).label.value() == Rational(2));
      found = true;
    }
  }
  CHECK(found);
  CHECK(max_degrees(g) == DegreeSummary{2, 3});
  CHECK(g.is_simple());
  CHECK(signed_incidence(g) == stoichiometric_matrix(oracle::ring_network(1)));
}

TEST_CASE("flips") {
  const SRGraph g = build_sr(oracle::ring_network(1));
  CHECK(r_flip(r_flip(g, 1), 1) == g);
  CHECK(s_flip(s_flip(g, 3), 3) == g);

  const SRGraph f = r_flip(g, 2);
  std::size_t changed = 0;
  for (std::size_t e = 0; e < g.edges().size(); ++e) changed += g.edge(e).sign != f.edge(e).sign ? 1 : 0;
  CHECK(changed == 2);

  const SRGraph h = s_flip(g, 1);  // A2 has degree 2
  changed = 0;
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    changed += g.edge(e).sign != h.edge(e).sign ? 1 : 0;
    CHECK(g.edge(e).label == h.edge(e).label);
    CHECK(g.edge(e).orientation == h.edge(e).orientation);
  }
  CHECK(changed == 2);

  CHECK_THROWS_AS(r_flip(g, 3), std::out_of_range);
  CHECK_THROWS_AS(s_flip(g, 5), std::out_of_range);
}

TEST_CASE("components and validation") {
  const SRGraph two = build_sr(parse_network("A <-> B\nC <-> D"));
  const auto comp = connected_components(two);
  CHECK(std::set<std::size_t>(comp.begin(), comp.end()).size() == 2);

  CHECK_THROWS_AS(SRGraph(GraphKind::SR, {"A"}, {"R1"}, {{0, 0, 1, Rational(1), RS}}), GraphError);
  CHECK_THROWS_AS(SRGraph(GraphKind::SR, {"A"}, {"R1"}, {{0, 1, 1, Rational(1), U}}), GraphError);
  CHECK_THROWS_AS(SRGraph(GraphKind::SR, {"A"}, {"R1"}, {{0, 0, 2, Rational(1), U}}), GraphError);
  CHECK_THROWS_AS(SRGraph(GraphKind::SR, {"A"}, {"A"}, {}), GraphError);
  CHECK_THROWS_AS(EdgeLabel(Rational(0)), GraphError);

  const SRGraph multi(GraphKind::SR, {"A"}, {"R1"}, {{0, 0, 1, Rational(1), U}, {0, 0, -1, Rational(1), U}});
  CHECK_FALSE(multi.is_simple());
  CHECK_THROWS_AS(multi.require_simple(), GraphError);
  const SRGraph inf(GraphKind::SR, {"A"}, {"R1"}, {{0, 0, 1, EdgeLabel::infinity(), U}});
  CHECK_FALSE(inf.is_simple());
  CHECK(EdgeLabel::infinity().str() == "inf");
}
