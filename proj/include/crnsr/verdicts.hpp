#ifndef CRNSR_VERDICTS_HPP
#define CRNSR_VERDICTS_HPP

#include "crnsr/cycles.hpp"
#include "crnsr/graph.hpp"
#include "crnsr/network.hpp"
#include "crnsr/sorting.hpp"

#include <optional>
#include <string>
#include <vector>

namespace crnsr {

enum class VerdictStatus { Applies, DoesNotApply, Inconclusive };

struct Hypothesis {
  std::string statement;
  bool passed = false;
  std::string detail;
};

/// Outcome of one structural criterion. status is Applies only if every
/// hypothesis passed.
struct TheoremVerdict {
  std::string id;
  std::string title;
  std::vector<Hypothesis> hypotheses;
  VerdictStatus status = VerdictStatus::DoesNotApply;
  std::string conclusion;
  std::vector<std::string> witnesses;
  bool conservative_intersection = false;
  std::vector<std::string> notes;

  bool applies() const { return status == VerdictStatus::Applies; }
};

/// Generators T of a simplicial cone (as columns) and the exact left inverse
/// T' = (T^T T)^{-1} T^T, so that x = T y and y = T' x.
class ConeBasis {
 public:
  /// Cone generated by gamma * D, as issued when a sorting signing exists.
  static ConeBasis from_sorting(const RationalMatrix& gamma, const Signing& d);
  /// Cone generated by arbitrary independent columns. Throws std::invalid_argument
  /// if the columns are dependent.
  static ConeBasis from_generators(RationalMatrix generators);

  const RationalMatrix& generators() const { return generators_; }
  const RationalMatrix& left_inverse() const { return left_inverse_; }
  const std::optional<Signing>& signing() const { return signing_; }
  bool from_verdict() const { return signing_.has_value(); }

 private:
  ConeBasis(RationalMatrix t, RationalMatrix t_inv, std::optional<Signing> d)
      : generators_(std::move(t)), left_inverse_(std::move(t_inv)), signing_(std::move(d)) {}

  RationalMatrix generators_;
  RationalMatrix left_inverse_;
  std::optional<Signing> signing_;
};

struct AnalysisOptions {
  std::size_t cycle_cap = kDefaultCycleCap;
};

struct InjectivityReport {
  ConditionStarResult sr;
  ConditionStarResult dsr;
  TheoremVerdict sr_verdict;
  TheoremVerdict dsr_verdict;
};

struct MonotonicityReport {
  TheoremVerdict verdict;
  std::optional<ConeBasis> cone;
};

InjectivityReport injectivity_report(const ReactionNetwork& net, const AnalysisOptions& options = {});
MonotonicityReport monotonicity_report(const ReactionNetwork& net, const AnalysisOptions& options = {});

struct GraphStatistics {
  std::size_t species = 0;
  std::size_t reactions = 0;
  std::size_t edges = 0;
  std::size_t one_way_edges = 0;  // DSR edges that are not undirected
  DegreeSummary degrees{0, 0};
  std::size_t components = 0;
};

struct AnalysisReport {
  std::vector<std::string> species;
  std::vector<std::string> reactions;  // rendered, e.g. "A + B <-> C"
  RationalMatrix stoichiometry;
  Eigen::Index rank = 0;
  RationalMatrix conserved;
  SRGraph sr;
  SRGraph dsr;
  GraphStatistics statistics;
  bool r_sorted_as_given = false;
  SortOutcome r_sorting;
  SortOutcome s_sorting;
  InjectivityReport injectivity;
  MonotonicityReport monotonicity;

  /// Some verdict could not be decided because cycle enumeration hit the cap.
  bool inconclusive() const;
};

/// Runs every structural check. Deterministic.
AnalysisReport analyze(const ReactionNetwork& net, const AnalysisOptions& options = {});

}  // namespace crnsr

#endif  // CRNSR_VERDICTS_HPP
