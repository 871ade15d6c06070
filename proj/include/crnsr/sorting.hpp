#ifndef CRNSR_SORTING_HPP
#define CRNSR_SORTING_HPP

#include "crnsr/cycles.hpp"
#include "crnsr/graph.hpp"
#include "crnsr/linalg.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace crnsr {

/// Diagonal signature over reactions (R-signing) or species (S-signing).
struct Signing {
  VertexKind over = VertexKind::Reaction;
  std::vector<int> entries;  // each +1 or -1

  friend bool operator==(const Signing&, const Signing&) = default;
};

/// A length-two path from `from` to `to` through `via`; `from` and `to` have
/// the same kind.
struct ShortPath {
  Vertex from;
  Vertex via;
  Vertex to;
  std::size_t first_edge;
  std::size_t second_edge;

  friend bool operator==(const ShortPath&, const ShortPath&) = default;
};

/// Why no signing exists: an o-cycle, or, when no o-cycle is available, a
/// closed walk of short paths whose parity product is -1.
struct SortWitness {
  enum class Kind { OCycle, ConstraintWalk };
  Kind kind;
  std::optional<Cycle> cycle;
  std::vector<ShortPath> walk;
};

struct SortOutcome {
  std::variant<Signing, SortWitness> result;
  /// Maximum degree of the flipped-through vertex class is at most 2
  /// (S-degree for R-sorting, R-degree for S-sorting).
  bool degree_two_regime = false;

  bool sorted() const { return std::holds_alternative<Signing>(result); }
  const Signing& signing() const { return std::get<Signing>(result); }
  const SortWitness& witness() const { return std::get<SortWitness>(result); }
};

/// Every pair of distinct columns has opposite signs on each shared row.
bool is_r_sorted(const RationalMatrix& m);
/// Every pair of distinct rows has opposite signs on each shared column.
bool is_s_sorted(const RationalMatrix& m);

/// Finds an R-signing after which every short R-to-R path is even, by parity
/// propagation from the lowest-index reaction of each component (fixed to +1).
SortOutcome r_sort(const SRGraph& g);
/// Dual of r_sort over species vertices.
SortOutcome s_sort(const SRGraph& g);

/// Product of short-path parities along a walk.
int walk_parity(const SRGraph& g, const std::vector<ShortPath>& walk);

/// Applies the flips a signing describes.
SRGraph apply_signing(const SRGraph& g, const Signing& d);
/// gamma * D for an R-signing, D * gamma for an S-signing.
RationalMatrix apply_signing(const RationalMatrix& gamma, const Signing& d);

struct FactorizationCheck {
  bool ok = false;
  std::string diagnostic;
};

/// Checks gamma == t1 * t2 exactly, that t1 has exactly one nonzero per row,
/// and that t2 is S-sorted, reporting the first failure. Throws
/// std::invalid_argument on incompatible dimensions.
FactorizationCheck check_factorization(const RationalMatrix& gamma, const RationalMatrix& t1,
                                       const RationalMatrix& t2);

}  // namespace crnsr

#endif  // CRNSR_SORTING_HPP
