// Acceptance battery: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "crnsr/cycles.hpp"
#include "crnsr/numerics.hpp"
#include "crnsr/sorting.hpp"
#include "crnsr/verdicts.hpp"
#include "support/oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

using namespace crnsr;
using oracle::rmat;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  // Records the first failure only.
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

struct Criterion {
  int id;
  const char* title;
  double budget_seconds;  // 0 means no runtime bound
  std::function<Outcome()> run;
};

// Reference matrices for the first ring network.
const RationalMatrix kRing1T = rmat({{-1, 0, 2}, {-1, 1, 0}, {0, 1, -1}, {1, 0, 0}, {0, -1, 0}});
const RationalMatrix kRing1TPrime = rmat({{1, -2, 2, 0, 0}, {1, -1, 2, 0, 0}, {1, -1, 1, 0, 0}});
const Eigen::MatrixXi kRing1SignV = (Eigen::MatrixXi(3, 5) << 1, 1, 0, -1, 0,  //
                                     0, 1, 1, 0, -1,                            //
                                     -1, 0, 1, 0, 0)
                                        .finished();
const Eigen::MatrixXi kRing1SignJ = (Eigen::MatrixXi(3, 3) << -1, 1, 1,  //
                                     1, -1, 1,                         //
                                     1, 1, -1)
                                        .finished();

const RationalMatrix kDependentT1 = rmat({{1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, 0, 1}});
const RationalMatrix kDependentT2 = rmat({{-1, 0, 1}, {1, -1, 0}, {0, 1, -1}});
const RationalMatrix kExtendedT1 = rmat({{1, 0, 0, 0}, {0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
const RationalMatrix kExtendedT2 = rmat({{-1, 0, 1, 1}, {1, -1, 0, 0}, {0, 1, -1, 0}, {0, 0, 0, -1}});

// "+" means >= -tol, "-" means <= tol, "0" means exactly zero.
bool matches_pattern(const Eigen::MatrixXd& m, const Eigen::MatrixXi& pattern, double tol) {
  if (m.rows() != pattern.rows() || m.cols() != pattern.cols()) return false;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const int p = pattern(r, c);
      if (p == 0 && m(r, c) != 0.0) return false;
      if (p > 0 && m(r, c) < -tol) return false;
      if (p < 0 && m(r, c) > tol) return false;
    }
  }
  return true;
}

bool columns_match_up_to_sign(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    if (a.col(j) != b.col(j) && RationalMatrix(a.col(j)) != RationalMatrix(-b.col(j))) return false;
  }
  return true;
}

std::string str(const std::string& a, long v) { return a + std::to_string(v); }

Outcome ring_cycles() {
  Outcome out;
  for (int n = 1; n <= 6; ++n) {
    const CycleSet cs = enumerate_cycles(build_sr(oracle::ring_network(n)));
    out.require(cs.cycles.size() == 1, str("cycle count for n=", n));
    if (cs.cycles.size() != 1) continue;
    const Cycle& c = cs.cycles.front();
    out.require(c.is_e_cycle() == (n % 2 == 1), str("e-cycle classification for n=", n));
    out.require(!c.is_s_cycle(), str("unexpected s-cycle for n=", n));
  }
  if (out.ok) out.detail = "n=1..6: one cycle each, e-cycle iff n odd, no s-cycle";
  return out;
}

Outcome ring_injectivity() {
  Outcome out;
  for (int n = 1; n <= 6; ++n) {
    const auto r = injectivity_report(oracle::ring_network(n));
    const bool expect = n % 2 == 0;
    out.require(r.sr_verdict.applies() == expect, str("SR injectivity verdict for n=", n));
    out.require(r.dsr_verdict.applies() == expect, str("DSR injectivity verdict for n=", n));
    if (!expect) {
      out.require(r.sr_verdict.status == VerdictStatus::DoesNotApply, str("SR verdict not decided for n=", n));
      out.require(r.dsr_verdict.status == VerdictStatus::DoesNotApply, str("DSR verdict not decided for n=", n));
    }
  }
  if (out.ok) out.detail = "even n: both apply; odd n: neither";
  return out;
}

Outcome ring_monotonicity() {
  Outcome out;
  for (int n = 1; n <= 6; ++n) {
    const ReactionNetwork net = oracle::ring_network(n);
    const auto m = monotonicity_report(net);
    const bool expect = n % 2 == 1;
    out.require(m.verdict.applies() == expect, str("monotonicity verdict for n=", n));
    out.require(matrix_rank(stoichiometric_matrix(net)) == n + 2, str("rank for n=", n));
    out.require(m.cone.has_value() == expect, str("cone presence for n=", n));
  }
  const auto m1 = monotonicity_report(oracle::ring_network(1));
  out.require(m1.cone && columns_match_up_to_sign(m1.cone->generators(), kRing1T),
              "cone generators differ from the reference T beyond column signs");
  if (out.ok) out.detail = "odd n: applies with rank n+2; even n: does not; T reproduced";
  return out;
}

Outcome ring1_sign_structure() {
  Outcome out;
  const ReactionNetwork net = oracle::ring_network(1);
  const RationalMatrix gamma = stoichiometric_matrix(net);
  const auto m = monotonicity_report(net);
  out.require(m.cone.has_value(), "no cone issued");
  if (!out.ok) return out;
  out.require(RationalMatrix(kRing1TPrime * kRing1T) == RationalMatrix::Identity(3, 3),
              "reference T' is not a left inverse of T");
  out.require(jacobian_sign_pattern(net).signs == kRing1SignV, "structural sign pattern differs from reference");

  const Eigen::MatrixXd t = to_double(kRing1T);
  const Eigen::MatrixXd tp_gamma = to_double(RationalMatrix(kRing1TPrime * gamma));
  std::mt19937_64 rng(41);
  std::size_t states = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const MassActionModel model(net, sample_kinetics(net, seed));
    for (int s = 0; s < 10; ++s, ++states) {
      const Eigen::VectorXd x = random_positive_state(net.species_count(), rng);
      const Eigen::MatrixXd v = model.rate_jacobian(x);
      out.require(matches_pattern(v, kRing1SignV, 1e-12), "sgn(V) mismatch");
      out.require(matches_pattern(tp_gamma * v * t, kRing1SignJ, 1e-12), "sgn(J) mismatch with reference T'");
      out.require(matches_pattern(recoordinatized_jacobian(model, gamma, *m.cone, x), kRing1SignJ, 1e-12),
                  "sgn(J) mismatch with the verdict cone");
    }
  }
  if (out.ok) out.detail = str("sgn(V), sgn(J) match at ", static_cast<long>(states)) + " states";
  return out;
}

Outcome figure_graphs() {
  Outcome out;
  using Tuple = std::tuple<std::string, std::string, int, std::string, Orientation>;
  auto tuples = [](const SRGraph& g) {
    std::vector<Tuple> v;
    for (const auto& e : g.edges()) {
      v.emplace_back(g.species_names()[e.species], g.reaction_names()[e.reaction], e.sign, e.label.str(),
                     e.orientation);
    }
    std::sort(v.begin(), v.end());
    return v;
  };
  constexpr auto U = Orientation::Undirected;
  const std::vector<Tuple> sr_expected{{"A", "R1", -1, "1", U}, {"A", "R2", -1, "1", U}, {"B", "R1", -1, "1", U},
                                       {"B", "R2", 1, "1", U},  {"C", "R1", 1, "1", U}};
  std::vector<Tuple> dsr_expected = sr_expected;
  std::get<4>(dsr_expected[3]) = Orientation::ReactionToSpecies;

  const SRGraph sr = build_sr(oracle::fixture("abc_reversible"));
  const SRGraph dsr = build_dsr(oracle::fixture("abc_irreversible"));
  out.require(tuples(sr) == sr_expected, "SR edge set differs");
  out.require(tuples(dsr) == dsr_expected, "DSR edge set differs");
  const auto one_way = std::count_if(dsr.edges().begin(), dsr.edges().end(),
                                     [](const Edge& e) { return e.orientation != Orientation::Undirected; });
  out.require(one_way == 1, "expected exactly one one-way edge");
  for (const SRGraph* g : {&sr, &dsr}) {
    const CycleSet cs = enumerate_cycles(*g);
    out.require(cs.cycles.size() == 1 && cs.cycles.front().is_o_cycle(), "expected a single o-cycle");
  }
  if (out.ok) out.detail = "5 edges, one R-to-S edge, unique o-cycle";
  return out;
}

Outcome interconversion() {
  Outcome out;
  const ReactionNetwork net = oracle::fixture("interconversion");
  const SRGraph g = build_sr(net);
  out.require(max_degrees(g).reaction == 2, "max R-degree is not 2");
  const CycleSet cs = enumerate_cycles(g);
  out.require(std::none_of(cs.cycles.begin(), cs.cycles.end(), [](const Cycle& c) { return c.is_o_cycle(); }),
              "o-cycle present");
  const SortOutcome s = s_sort(g);
  out.require(s.sorted(), "s_sort failed");
  if (s.sorted()) {
    out.require(is_s_sorted(apply_signing(stoichiometric_matrix(net), s.signing())), "signing does not S-sort");
  }
  if (out.ok) out.detail = str("R-degree 2, ", static_cast<long>(cs.cycles.size())) + " cycles all even, S-sorted";
  return out;
}

Outcome dependent() {
  Outcome out;
  const ReactionNetwork net = oracle::fixture("dependent");
  const RationalMatrix gamma = stoichiometric_matrix(net);
  out.require(is_r_sorted(gamma), "not R-sorted as given");
  out.require(matrix_rank(gamma) == 2, "rank is not 2");
  const auto f = check_factorization(gamma, kDependentT1, kDependentT2);
  out.require(f.ok, "factorization rejected: " + f.diagnostic);
  out.require(column_space_contains(kDependentT1, gamma), "Im(Gamma) not inside Im(T)");
  const ConeBasis cone = ConeBasis::from_generators(kDependentT1);
  const auto c = cooperativity_check(net, sample_kinetics(net, 17), cone, 100, 18, 1e-12);
  out.require(c.passed && c.samples == 100, "cooperativity check failed");
  if (out.ok) {
    std::ostringstream s;
    s << "rank 2, factorization ok, 100 samples cooperative (min off-diagonal " << c.min_off_diagonal << ")";
    out.detail = s.str();
  }
  return out;
}

Outcome dependent_extended() {
  Outcome out;
  const ReactionNetwork net = oracle::fixture("dependent_extended");
  const RationalMatrix gamma = stoichiometric_matrix(net);
  out.require(matrix_rank(gamma) == 3, "rank is not 3");
  const SRGraph g = build_sr(net);
  const CycleSet cs = enumerate_cycles(g);
  const auto e = std::count_if(cs.cycles.begin(), cs.cycles.end(), [](const Cycle& c) { return c.is_e_cycle(); });
  const auto o = static_cast<long>(cs.cycles.size()) - e;
  out.require(e > 0 && o > 0, "census lacks e- or o-cycles");
  out.require(!r_sort(g).sorted(), "r_sort unexpectedly succeeded");
  out.require(!s_sort(g).sorted(), "s_sort unexpectedly succeeded");
  const auto f = check_factorization(gamma, kExtendedT1, kExtendedT2);
  out.require(f.ok, "factorization rejected: " + f.diagnostic);
  if (out.ok) out.detail = str("rank 3, ", e) + str(" e-cycles, ", o) + " o-cycles, both sorts fail";
  return out;
}

Outcome order_preservation() {
  Outcome out;
  const ReactionNetwork net = oracle::ring_network(1);
  const auto m = monotonicity_report(net);
  out.require(m.cone.has_value(), "no cone issued");
  if (!out.ok) return out;
  std::size_t pairs = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto r = order_preservation_test(net, sample_kinetics(net, seed), *m.cone, FlowConfig::closed(), 50,
                                           10.0, seed + 2);
    pairs += r.pairs;
    worst = std::min(worst, r.worst_normalized);
    out.require(r.passed && r.violations == 0, str("violations for seed ", static_cast<long>(seed)));
  }
  out.require(pairs == 250, "pair count");
  if (out.ok) {
    std::ostringstream s;
    s << pairs << " pairs, no violations (worst normalized " << worst << ")";
    out.detail = s.str();
  }
  return out;
}

Outcome outflow_equilibria() {
  Outcome out;
  const ReactionNetwork net = oracle::ring_network(2);
  std::ostringstream s;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const FlowConfig flow = sample_outflow(net.species_count(), seed + 4);
    const auto r = equilibria_search(net, sample_kinetics(net, seed), flow, 100, seed + 5);
    out.require(r.roots.size() == 1, str("distinct roots for seed ", static_cast<long>(seed)) + ": " +
                                         std::to_string(r.roots.size()));
    s << (seed == 1 ? "" : " ") << r.converged << "/100";
  }
  if (out.ok) out.detail = "one root per seed; converged starts " + s.str();
  return out;
}

Outcome property_suites() {
  Outcome out;
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const SRGraph g = oracle::random_low_degree_graph(rng);
    const SortOutcome r = r_sort(g);
    const CycleSet cs = enumerate_cycles(g);
    const bool o_cycle =
        std::any_of(cs.cycles.begin(), cs.cycles.end(), [](const Cycle& c) { return c.is_o_cycle(); });
    out.require(r.sorted() == !o_cycle, str("sortability vs o-cycle, trial ", trial));
    out.require(r.sorted() == oracle::r_sortable_brute(signed_incidence(g)), str("brute-force oracle, trial ", trial));
    if (r.sorted()) {
      out.require(is_r_sorted(signed_incidence(apply_signing(g, r.signing()))), str("signing invalid, trial ", trial));
    }
  }
  std::size_t checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const SRGraph g = oracle::random_graph(rng);
    const CycleSet cs = enumerate_cycles(g);
    std::set<std::vector<std::size_t>> got;
    for (const auto& c : cs.cycles) {
      auto key = c.edges;
      std::sort(key.begin(), key.end());
      got.insert(key);
      auto edges = c.edges;
      for (std::size_t k = 0; k < edges.size(); ++k, ++checked) {
        std::rotate(edges.begin(), edges.begin() + 1, edges.end());
        auto rev = edges;
        std::reverse(rev.begin(), rev.end());
        out.require(path_parity(g, edges) == c.parity && path_parity(g, rev) == c.parity,
                    str("parity not invariant, trial ", trial));
        out.require(stoich_value(g, edges) == c.stoich && stoich_value(g, rev) == c.stoich,
                    str("stoich not invariant, trial ", trial));
      }
    }
    out.require(!cs.truncated && got == oracle::cycle_edge_sets(g), str("enumeration differs from DFS, trial ", trial));
  }
  if (out.ok) out.detail = str("200 low-degree graphs, 100 random graphs, ", static_cast<long>(checked)) + " rotations";
  return out;
}

Outcome gradient_check() {
  Outcome out;
  std::mt19937_64 rng(77);
  double worst = 0.0;
  for (const char* name : {"sys1", "abc_irreversible", "dependent_extended"}) {
    const ReactionNetwork net = oracle::fixture(name);
    for (int s = 0; s < 100; ++s) {
      const MassActionModel model(net, sample_kinetics(net, static_cast<std::uint64_t>(s)));
      const Eigen::VectorXd x = random_positive_state(net.species_count(), rng);
      const Eigen::MatrixXd v = model.rate_jacobian(x);
      const double rel = (v - oracle::fd_rate_jacobian(model, x)).norm() / std::max(v.norm(), 1e-300);
      worst = std::max(worst, rel);
    }
    out.require(worst <= 1e-6, std::string("relative error too large on ") + name);
  }
  std::ostringstream s;
  s << "300 states, worst relative error " << worst;
  if (out.ok) out.detail = s.str();
  else out.detail += " (" + s.str() + ")";
  return out;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "ring networks: single cycle, parity by n", 1.0, ring_cycles},
      {2, "ring networks: injectivity verdicts", 0.0, ring_injectivity},
      {3, "ring networks: monotonicity verdicts and cone", 0.0, ring_monotonicity},
      {4, "ring n=1: sign structure of V and J", 1.0, ring1_sign_structure},
      {5, "two-reaction SR/DSR graphs", 0.0, figure_graphs},
      {6, "interconversion network: S-sortable", 0.0, interconversion},
      {7, "dependent network: factorization and cooperativity", 0.0, dependent},
      {8, "extended dependent network: mixed cycles, unsortable", 0.0, dependent_extended},
      {9, "order preservation on ring n=1", 30.0, order_preservation},
      {10, "unique equilibrium on ring n=2 with outflow", 60.0, outflow_equilibria},
      {11, "property suites", 60.0, property_suites},
      {12, "rate Jacobian gradient check", 0.0, gradient_check},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0 && secs > c.budget_seconds) {
      o.ok = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(c.budget_seconds)) + " s budget)";
    }
    if (!o.ok) ++failures;
    std::printf("[%s] %2d %s (%.3f s): %s\n", o.ok ? "PASS" : "FAIL", c.id, c.title, secs, o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
