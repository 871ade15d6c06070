#ifndef CRNSR_REPORT_IO_HPP
#define CRNSR_REPORT_IO_HPP

#include "crnsr/cycles.hpp"
#include "crnsr/graph.hpp"
#include "crnsr/numerics.hpp"
#include "crnsr/sorting.hpp"
#include "crnsr/verdicts.hpp"

#include <json.hpp>

#include <string>

namespace crnsr {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json matrix_json(const RationalMatrix& m);
Json graph_json(const SRGraph& g);
Json cycle_json(const SRGraph& g, const Cycle& c);
/// Cycle census and the Condition (*) outcome with witness keys.
Json condition_star_json(const SRGraph& g, const ConditionStarResult& cs);
/// Vertex name -> +1 / -1.
Json signing_json(const SRGraph& g, const Signing& d);
Json sort_outcome_json(const SRGraph& g, const SortOutcome& s);
Json verdict_json(const TheoremVerdict& v);
Json report_json(const AnalysisReport& r);

std::string render_text(const AnalysisReport& r);

const char* to_string(VerdictStatus s);
const char* to_string(ConditionStatus s);
const char* to_string(ConservationReport::Status s);

Json battery_json(const CooperativityReport& r);
Json battery_json(const OrderPreservationReport& r);
Json battery_json(const ConservationReport& r);
Json battery_json(const EquilibriaReport& r);

}  // namespace crnsr

#endif  // CRNSR_REPORT_IO_HPP
