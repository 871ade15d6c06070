#include "crnsr/report_io.hpp"

#include <iomanip>
#include <sstream>

namespace crnsr {

namespace {

const char* orientation_name(Orientation o) {
  switch (o) {
    case Orientation::SpeciesToReaction:
      return "S-to-R";
    case Orientation::ReactionToSpecies:
      return "R-to-S";
    case Orientation::Undirected:
      break;
  }
  return "undirected";
}

const char* traversal_name(Traversal t) {
  switch (t) {
    case Traversal::Forward:
      return "forward";
    case Traversal::Backward:
      return "backward";
    case Traversal::Both:
      break;
  }
  return "both";
}

Json vector_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

std::string signed_int(int v) { return v > 0 ? "+" + std::to_string(v) : std::to_string(v); }

std::string short_path_text(const SRGraph& g, const ShortPath& p) {
  return g.name(p.from) + "-" + g.name(p.via) + "-" + g.name(p.to);
}

std::string cycle_line(const SRGraph& g, const Cycle& c) {
  std::ostringstream s;
  s << cycle_key(g, c) << "  sign " << signed_int(c.sign) << ", parity " << signed_int(c.parity) << ", stoich "
    << to_string(c.stoich) << ", " << (c.is_e_cycle() ? "e-cycle" : "o-cycle")
    << (c.is_s_cycle() ? ", s-cycle" : "");
  return s.str();
}

std::string signing_text(const SRGraph& g, const Signing& d) {
  std::string out;
  for (std::size_t k = 0; k < d.entries.size(); ++k) {
    if (k > 0) out += ' ';
    out += g.name({d.over, k}) + "=" + (d.entries[k] > 0 ? "+1" : "-1");
  }
  return out;
}

void sort_text(std::ostream& out, const SRGraph& g, const char* label, const SortOutcome& s) {
  out << label << ": ";
  if (s.sorted()) {
    out << "signing " << signing_text(g, s.signing());
  } else if (s.witness().kind == SortWitness::Kind::OCycle) {
    out << "impossible, o-cycle " << cycle_key(g, *s.witness().cycle);
  } else {
    out << "impossible, odd constraint walk";
    for (const auto& p : s.witness().walk) out << ' ' << short_path_text(g, p);
  }
  out << (s.degree_two_regime ? " (degree <= 2 regime)" : " (general regime)") << '\n';
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

}  // namespace

const char* to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Applies:
      return "applies";
    case VerdictStatus::DoesNotApply:
      return "does-not-apply";
    case VerdictStatus::Inconclusive:
      break;
  }
  return "inconclusive";
}

const char* to_string(ConditionStatus s) {
  switch (s) {
    case ConditionStatus::Holds:
      return "holds";
    case ConditionStatus::Fails:
      return "fails";
    case ConditionStatus::Inconclusive:
      break;
  }
  return "inconclusive";
}

const char* to_string(ConservationReport::Status s) {
  switch (s) {
    case ConservationReport::Status::Conserved:
      return "conserved";
    case ConservationReport::Status::Violated:
      return "violated";
    case ConservationReport::Status::Skipped:
      break;
  }
  return "skipped";
}

Json matrix_json(const RationalMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json graph_json(const SRGraph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges()) {
    edges.push_back({{"species", g.species_names()[e.species]},
                     {"reaction", g.reaction_names()[e.reaction]},
                     {"sign", e.sign},
                     {"label", e.label.str()},
                     {"orientation", orientation_name(e.orientation)}});
  }
  return {{"schema_version", kSchemaVersion},
          {"kind", g.is_directed() ? "DSR" : "SR"},
          {"species", g.species_names()},
          {"reactions", g.reaction_names()},
          {"edges", std::move(edges)}};
}

Json cycle_json(const SRGraph& g, const Cycle& c) {
  Json vertices = Json::array();
  for (const auto& v : c.vertices) vertices.push_back(g.name(v));
  Json out{{"key", cycle_key(g, c)},
           {"vertices", std::move(vertices)},
           {"length", c.length()},
           {"sign", c.sign},
           {"parity", c.parity},
           {"stoich", to_string(c.stoich)},
           {"class", c.is_e_cycle() ? "e-cycle" : "o-cycle"},
           {"s_cycle", c.is_s_cycle()}};
  if (g.is_directed()) out["traversal"] = traversal_name(c.traversal);
  return out;
}

Json condition_star_json(const SRGraph& g, const ConditionStarResult& cs) {
  Json cycles = Json::array();
  for (const auto& c : cs.cycles.cycles) cycles.push_back(cycle_json(g, c));
  Json out{{"condition_star", to_string(cs.status)},
           {"cycle_count", cs.cycles.cycles.size()},
           {"truncated", cs.cycles.truncated},
           {"cycles", std::move(cycles)}};
  if (cs.non_s_witness) out["non_s_e_cycle"] = cycle_key(g, cs.cycles.cycles[*cs.non_s_witness]);
  if (cs.intersecting_witness) {
    out["s_to_r_pair"] = {cycle_key(g, cs.cycles.cycles[cs.intersecting_witness->first]),
                          cycle_key(g, cs.cycles.cycles[cs.intersecting_witness->second])};
  }
  if (cs.conservative_intersection) out["conservative_intersection"] = true;
  return out;
}

Json signing_json(const SRGraph& g, const Signing& d) {
  Json out = Json::object();
  for (std::size_t k = 0; k < d.entries.size(); ++k) out[g.name({d.over, k})] = d.entries[k];
  return out;
}

Json sort_outcome_json(const SRGraph& g, const SortOutcome& s) {
  Json out{{"sorted", s.sorted()}, {"degree_two_regime", s.degree_two_regime}};
  if (s.sorted()) {
    out["signing"] = signing_json(g, s.signing());
    return out;
  }
  const auto& w = s.witness();
  if (w.kind == SortWitness::Kind::OCycle) {
    out["witness"] = {{"kind", "o-cycle"}, {"cycle", cycle_key(g, *w.cycle)}};
  } else {
    Json walk = Json::array();
    for (const auto& p : w.walk) walk.push_back(short_path_text(g, p));
    out["witness"] = {{"kind", "constraint-walk"}, {"walk", std::move(walk)}};
  }
  return out;
}

Json verdict_json(const TheoremVerdict& v) {
  Json hyps = Json::array();
  for (const auto& h : v.hypotheses) {
    hyps.push_back({{"statement", h.statement}, {"passed", h.passed}, {"detail", h.detail}});
  }
  Json out{{"id", v.id},
           {"title", v.title},
           {"status", to_string(v.status)},
           {"hypotheses", std::move(hyps)},
           {"conclusion", v.conclusion},
           {"witnesses", v.witnesses}};
  if (v.conservative_intersection) out["conservative_intersection"] = true;
  if (!v.notes.empty()) out["notes"] = v.notes;
  return out;
}

Json report_json(const AnalysisReport& r) {
  const auto& st = r.statistics;
  Json mono = verdict_json(r.monotonicity.verdict);
  if (r.monotonicity.cone) {
    mono["cone"] = {{"generators", matrix_json(r.monotonicity.cone->generators())},
                    {"left_inverse", matrix_json(r.monotonicity.cone->left_inverse())}};
  }
  return {{"schema_version", kSchemaVersion},
          {"network", {{"species", r.species}, {"reactions", r.reactions}}},
          {"stoichiometric_matrix", matrix_json(r.stoichiometry)},
          {"rank", r.rank},
          {"conserved_vectors", matrix_json(RationalMatrix(r.conserved.transpose()))},
          {"graph",
           {{"species", st.species},
            {"reactions", st.reactions},
            {"edges", st.edges},
            {"one_way_edges", st.one_way_edges},
            {"max_species_degree", st.degrees.species},
            {"max_reaction_degree", st.degrees.reaction},
            {"components", st.components}}},
          {"sr", condition_star_json(r.sr, r.injectivity.sr)},
          {"dsr", condition_star_json(r.dsr, r.injectivity.dsr)},
          {"sorting",
           {{"r_sorted_as_given", r.r_sorted_as_given},
            {"r_sort", sort_outcome_json(r.sr, r.r_sorting)},
            {"s_sort", sort_outcome_json(r.sr, r.s_sorting)}}},
          {"verdicts", {verdict_json(r.injectivity.sr_verdict), verdict_json(r.injectivity.dsr_verdict), mono}}};
}

std::string render_text(const AnalysisReport& r) {
  std::ostringstream out;
  const auto& st = r.statistics;
  out << "Network: " << st.species << " species, " << st.reactions << " reactions\n";
  for (std::size_t j = 0; j < r.reactions.size(); ++j) out << "  R" << j + 1 << ": " << r.reactions[j] << '\n';

  out << "\nStoichiometric matrix (rank " << r.rank << "):\n";
  std::size_t width = 2;
  std::size_t name_width = 0;
  for (Eigen::Index i = 0; i < r.stoichiometry.rows(); ++i) {
    name_width = std::max(name_width, r.species[static_cast<std::size_t>(i)].size());
    for (Eigen::Index j = 0; j < r.stoichiometry.cols(); ++j) {
      width = std::max(width, to_string(r.stoichiometry(i, j)).size());
    }
  }
  for (Eigen::Index i = 0; i < r.stoichiometry.rows(); ++i) {
    std::string name = r.species[static_cast<std::size_t>(i)];
    name.resize(name_width, ' ');
    out << "  " << name << " ";
    for (Eigen::Index j = 0; j < r.stoichiometry.cols(); ++j) out << ' ' << pad(to_string(r.stoichiometry(i, j)), width);
    out << '\n';
  }
  out << "Conserved quantities: " << r.conserved.cols() << '\n';
  for (Eigen::Index k = 0; k < r.conserved.cols(); ++k) {
    out << "  w" << k + 1 << " = (";
    for (Eigen::Index i = 0; i < r.conserved.rows(); ++i) out << (i ? ", " : "") << to_string(r.conserved(i, k));
    out << ")\n";
  }

  out << "\nSR graph: " << st.edges << " edges, max S-degree " << st.degrees.species << ", max R-degree "
      << st.degrees.reaction << ", " << st.components << (st.components == 1 ? " component" : " components")
      << '\n';
  out << "DSR graph: " << st.one_way_edges << " one-way edges\n";

  const auto& cs = r.injectivity.sr;
  out << "\nSR cycles: " << cs.cycles.cycles.size() << (cs.cycles.truncated ? " (truncated)" : "") << '\n';
  for (const auto& c : cs.cycles.cycles) out << "  " << cycle_line(r.sr, c) << '\n';
  out << "Condition (*) on SR graph: " << to_string(cs.status) << '\n';
  out << "Condition (*) on DSR graph: " << to_string(r.injectivity.dsr.status) << " ("
      << r.injectivity.dsr.cycles.cycles.size() << " directed cycles)\n";

  out << "\nGamma R-sorted as given: " << (r.r_sorted_as_given ? "yes" : "no") << '\n';
  sort_text(out, r.sr, "R-sorting", r.r_sorting);
  sort_text(out, r.sr, "S-sorting", r.s_sorting);

  const TheoremVerdict* verdicts[] = {&r.injectivity.sr_verdict, &r.injectivity.dsr_verdict,
                                      &r.monotonicity.verdict};
  for (const TheoremVerdict* v : verdicts) {
    out << "\n[" << v->id << "] " << v->title << ": " << to_string(v->status) << '\n';
    for (const auto& h : v->hypotheses) {
      out << "  [" << (h.passed ? "pass" : "FAIL") << "] " << h.statement;
      if (!h.detail.empty()) out << " -- " << h.detail;
      out << '\n';
    }
    out << "  Conclusion: " << v->conclusion << '\n';
    for (const auto& n : v->notes) out << "  Note: " << n << '\n';
  }
  if (r.monotonicity.cone) {
    const auto& t = r.monotonicity.cone->generators();
    out << "\nCone generators T (columns):\n";
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
      out << " ";
      for (Eigen::Index j = 0; j < t.cols(); ++j) out << ' ' << pad(to_string(t(i, j)), width);
      out << '\n';
    }
  }
  return out.str();
}

Json battery_json(const CooperativityReport& r) {
  Json out{{"battery", "cooperativity"},
           {"passed", r.passed},
           {"samples", r.samples},
           {"min_off_diagonal", r.min_off_diagonal}};
  if (!r.passed) out["worst_state"] = vector_json(r.worst_state);
  return out;
}

Json battery_json(const OrderPreservationReport& r) {
  return {{"battery", "order-preservation"},
          {"passed", r.passed},
          {"pairs", r.pairs},
          {"violations", r.violations},
          {"worst_normalized_coordinate", r.worst_normalized},
          {"max_error_estimate", r.max_error_estimate}};
}

Json battery_json(const ConservationReport& r) {
  return {{"battery", "conservation"},
          {"status", to_string(r.status)},
          {"vectors", r.vectors},
          {"max_relative_deviation", r.max_relative_deviation}};
}

Json battery_json(const EquilibriaReport& r) {
  Json roots = Json::array();
  for (const auto& e : r.roots) roots.push_back({{"state", vector_json(e.state)}, {"residual", e.residual}});
  Json out{{"battery", "equilibria"},
           {"distinct", r.roots.size()},
           {"converged", r.converged},
           {"failed", r.failed},
           {"roots", std::move(roots)}};
  if (r.class_point) out["class_point"] = vector_json(*r.class_point);
  return out;
}

}  // namespace crnsr
