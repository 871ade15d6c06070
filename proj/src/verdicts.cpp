#include "crnsr/verdicts.hpp"

#include <algorithm>
#include <set>

namespace crnsr {

namespace {

constexpr const char* kN1CStatement = "kinetics are N1C";
constexpr const char* kN1CDetail =
    "assumed for the rate functions; structural prerequisite verified (no species on both sides of a reaction)";

const char* const kInjectiveConclusion =
    "With outflows (dx/dt = x_in + Gamma v(x) - Q(x), each q_i strictly increasing) the vector field is "
    "injective, so there is at most one equilibrium. Without flow (dx/dt = Gamma v(x)) no stoichiometry "
    "class contains more than one nondegenerate positive equilibrium; an equilibrium counts as degenerate "
    "when it has a zero eigenvalue whose eigenvector lies in the stoichiometric subspace.";

const char* const kMonotoneConclusion =
    "On each invariant stoichiometry class (closed, or CFSTR with q >= 0) the flow preserves the partial "
    "order induced by the cone spanned by the columns of T. In coordinates y = T'x the restricted system is "
    "cooperative, which excludes stable periodic orbits through the open positive orthant.";

Hypothesis n1c_hypothesis() { return {kN1CStatement, true, kN1CDetail}; }

TheoremVerdict injectivity_verdict(const SRGraph& g, const ConditionStarResult& cs, bool directed) {
  TheoremVerdict v;
  v.id = directed ? "dsr-injectivity" : "sr-injectivity";
  v.title = directed ? "Injectivity from the DSR graph (Condition (*) on directed cycles)"
                     : "Injectivity from the SR graph (Condition (*))";
  v.conservative_intersection = cs.conservative_intersection;
  v.hypotheses.push_back(n1c_hypothesis());

  const bool complete = !cs.cycles.truncated;
  v.hypotheses.push_back({"cycle enumeration complete", complete,
                          complete ? std::to_string(cs.cycles.cycles.size()) + " cycles"
                                   : "cycle cap reached; remaining hypotheses undecided"});
  if (!complete) {
    v.status = VerdictStatus::Inconclusive;
    v.conclusion = "Undecided: raise the cycle cap.";
    return v;
  }

  const auto& cycles = cs.cycles.cycles;
  Hypothesis all_s{"every e-cycle is an s-cycle", true, ""};
  Hypothesis no_pair{"no two e-cycles have S-to-R intersection", true, ""};
  if (cs.non_s_witness) {
    const auto& c = cycles[*cs.non_s_witness];
    all_s.passed = false;
    all_s.detail = "e-cycle " + cycle_key(g, c) + " has stoich " + to_string(c.stoich);
    v.witnesses.push_back(cycle_key(g, c));
    no_pair.detail = "not evaluated";
    no_pair.passed = false;
  } else if (cs.intersecting_witness) {
    const auto& a = cycles[cs.intersecting_witness->first];
    const auto& b = cycles[cs.intersecting_witness->second];
    no_pair.passed = false;
    no_pair.detail = cycle_key(g, a) + " and " + cycle_key(g, b);
    v.witnesses.push_back(cycle_key(g, a));
    v.witnesses.push_back(cycle_key(g, b));
  }
  const auto e_count = std::count_if(cycles.begin(), cycles.end(), [](const Cycle& c) { return c.is_e_cycle(); });
  if (all_s.detail.empty()) all_s.detail = std::to_string(e_count) + " e-cycles checked";
  if (no_pair.detail.empty()) no_pair.detail = std::to_string(e_count) + " e-cycles checked pairwise";
  v.hypotheses.push_back(all_s);
  v.hypotheses.push_back(no_pair);

  if (cs.status == ConditionStatus::Holds) {
    v.status = VerdictStatus::Applies;
    v.conclusion = kInjectiveConclusion;
  } else {
    v.status = VerdictStatus::DoesNotApply;
    v.conclusion = "No conclusion about multiple equilibria.";
  }
  if (directed) {
    v.notes.push_back(
        "S-to-R intersection is tested on undirected edge sets of the directed cycles; this stand-in for the "
        "orientation-aware definition can only report failure more often, never less.");
  }
  return v;
}

struct MonotonicityInputs {
  const RationalMatrix& gamma;
  const SRGraph& sr;
  const CycleSet& cycles;
  const SortOutcome& r_sorting;
};

MonotonicityReport monotonicity_from(const MonotonicityInputs& in) {
  MonotonicityReport report;
  TheoremVerdict& v = report.verdict;
  v.id = "cone-monotonicity";
  v.title = "Simplicial-cone monotonicity (S-degree <= 2, all cycles even, independent reaction vectors)";
  v.hypotheses.push_back(n1c_hypothesis());

  const auto degrees = max_degrees(in.sr);
  const bool degree_ok = degrees.species <= 2;
  v.hypotheses.push_back({"S-degree <= 2", degree_ok, "maximum S-degree " + std::to_string(degrees.species)});

  Hypothesis all_e{"all cycles are e-cycles", true, ""};
  bool undecided = false;
  auto o_cycle = std::find_if(in.cycles.cycles.begin(), in.cycles.cycles.end(),
                              [](const Cycle& c) { return c.is_o_cycle(); });
  if (o_cycle != in.cycles.cycles.end()) {
    all_e.passed = false;
    all_e.detail = "o-cycle " + cycle_key(in.sr, *o_cycle);
    v.witnesses.push_back(cycle_key(in.sr, *o_cycle));
  } else if (in.cycles.truncated) {
    all_e.passed = false;
    all_e.detail = "cycle cap reached before an o-cycle was found; undecided";
    undecided = true;
  } else {
    all_e.detail = std::to_string(in.cycles.cycles.size()) + " cycles, none odd";
  }
  v.hypotheses.push_back(all_e);

  const Eigen::Index rank = matrix_rank(in.gamma);
  const bool independent = rank == in.gamma.cols();
  v.hypotheses.push_back({"reaction vectors linearly independent", independent,
                          "rank " + std::to_string(rank) + " of " + std::to_string(in.gamma.cols()) + " columns"});

  const bool decided_fail = !degree_ok || !independent || (!all_e.passed && !undecided);
  if (decided_fail) {
    v.status = VerdictStatus::DoesNotApply;
    v.conclusion = "Criterion inapplicable; this is not evidence that the system is non-monotone.";
    if (in.r_sorting.sorted() && !independent) {
      v.notes.push_back(
          "The stoichiometric matrix is R-sortable but its reaction vectors are dependent. Independence is not "
          "known to be necessary for monotonicity, so a cone may still be preserved.");
    } else if (in.r_sorting.sorted() && !degree_ok) {
      v.notes.push_back(
          "An R-sorting signing exists, but outside the S-degree <= 2 regime no dynamical conclusion is drawn "
          "from sorting alone.");
    }
    return report;
  }
  if (undecided) {
    v.status = VerdictStatus::Inconclusive;
    v.conclusion = "Undecided: raise the cycle cap.";
    return report;
  }
  if (!in.r_sorting.sorted()) {
    // Unreachable for S-degree <= 2 graphs without o-cycles.
    throw std::logic_error("R-sorting failed although every cone-criterion hypothesis holds");
  }
  report.cone = ConeBasis::from_sorting(in.gamma, in.r_sorting.signing());
  v.status = VerdictStatus::Applies;
  v.conclusion = kMonotoneConclusion;
  return report;
}

InjectivityReport injectivity_from(const SRGraph& sr, const SRGraph& dsr, std::size_t cap) {
  InjectivityReport r{condition_star(sr, cap), condition_star(dsr, cap), {}, {}};
  r.sr_verdict = injectivity_verdict(sr, r.sr, false);
  r.dsr_verdict = injectivity_verdict(dsr, r.dsr, true);
  return r;
}

}  // namespace

ConeBasis ConeBasis::from_sorting(const RationalMatrix& gamma, const Signing& d) {
  if (d.over != VertexKind::Reaction) throw std::invalid_argument("cone generators need an R-signing");
  RationalMatrix t = apply_signing(gamma, d);
  auto t_inv = crnsr::left_inverse(t);
  if (!t_inv) throw std::invalid_argument("reaction vectors are linearly dependent");
  return ConeBasis(std::move(t), std::move(*t_inv), d);
}

ConeBasis ConeBasis::from_generators(RationalMatrix generators) {
  auto t_inv = crnsr::left_inverse(generators);
  if (!t_inv) throw std::invalid_argument("cone generators are linearly dependent");
  return ConeBasis(std::move(generators), std::move(*t_inv), std::nullopt);
}

InjectivityReport injectivity_report(const ReactionNetwork& net, const AnalysisOptions& options) {
  return injectivity_from(build_sr(net), build_dsr(net), options.cycle_cap);
}

MonotonicityReport monotonicity_report(const ReactionNetwork& net, const AnalysisOptions& options) {
  const RationalMatrix gamma = stoichiometric_matrix(net);
  const SRGraph sr = build_sr(net);
  const CycleSet cycles = enumerate_cycles(sr, options.cycle_cap);
  const SortOutcome sorting = r_sort(sr);
  return monotonicity_from({gamma, sr, cycles, sorting});
}

bool AnalysisReport::inconclusive() const {
  return injectivity.sr_verdict.status == VerdictStatus::Inconclusive ||
         injectivity.dsr_verdict.status == VerdictStatus::Inconclusive ||
         monotonicity.verdict.status == VerdictStatus::Inconclusive;
}

AnalysisReport analyze(const ReactionNetwork& net, const AnalysisOptions& options) {
  RationalMatrix gamma = stoichiometric_matrix(net);
  SRGraph sr = build_sr(net);
  SRGraph dsr = build_dsr(net);

  GraphStatistics stats;
  stats.species = sr.species_count();
  stats.reactions = sr.reaction_count();
  stats.edges = sr.edges().size();
  stats.one_way_edges = static_cast<std::size_t>(std::count_if(
      dsr.edges().begin(), dsr.edges().end(), [](const Edge& e) { return e.orientation != Orientation::Undirected; }));
  stats.degrees = max_degrees(sr);
  {
    const auto comp = connected_components(sr);
    stats.components = std::set<std::size_t>(comp.begin(), comp.end()).size();
  }

  InjectivityReport injectivity = injectivity_from(sr, dsr, options.cycle_cap);
  SortOutcome r_sorting = r_sort(sr);
  SortOutcome s_sorting = s_sort(sr);
  MonotonicityReport monotonicity = monotonicity_from({gamma, sr, injectivity.sr.cycles, r_sorting});

  std::vector<std::string> reactions;
  for (std::size_t j = 0; j < net.reaction_count(); ++j) reactions.push_back(render_reaction(net, j));

  const Eigen::Index rank = matrix_rank(gamma);
  RationalMatrix conserved = conserved_vectors(gamma);
  const bool sorted_as_given = is_r_sorted(gamma);
  return AnalysisReport{net.species_names(),
                        std::move(reactions),
                        std::move(gamma),
                        rank,
                        std::move(conserved),
                        std::move(sr),
                        std::move(dsr),
                        stats,
                        sorted_as_given,
                        std::move(r_sorting),
                        std::move(s_sorting),
                        std::move(injectivity),
                        std::move(monotonicity)};
}

}  // namespace crnsr
