#ifndef CRNSR_CYCLES_HPP
#define CRNSR_CYCLES_HPP

#include "crnsr/graph.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace crnsr {

inline constexpr std::size_t kDefaultCycleCap = 1'000'000;

/// Which traversal directions of a cycle are directed cycles of a DSR graph.
/// Cycles of SR graphs are always Both.
enum class Traversal { Forward, Backward, Both };

/// A simple cycle, stored in canonical form: it starts at its lowest flat
/// vertex id and continues towards the smaller of that vertex's two cycle
/// neighbours. vertices[k] and vertices[k+1 mod L] are joined by edges[k].
struct Cycle {
  std::vector<Vertex> vertices;
  std::vector<std::size_t> edges;
  int sign = 1;
  int parity = 1;
  Rational stoich;
  Traversal traversal = Traversal::Both;

  std::size_t length() const { return edges.size(); }
  bool is_e_cycle() const { return parity == 1; }
  bool is_o_cycle() const { return parity == -1; }
  bool is_s_cycle() const { return stoich == 0; }

  friend bool operator==(const Cycle&, const Cycle&) = default;
};

struct CycleClass {
  bool e_cycle;
  bool s_cycle;

  friend bool operator==(const CycleClass&, const CycleClass&) = default;
};

/// Cycles sorted by (length, vertex sequence); no duplicates.
struct CycleSet {
  std::vector<Cycle> cycles;
  bool truncated = false;
};

/// (-1)^{|E|/2} times the product of the signs. Throws std::invalid_argument for odd length.
int path_parity(std::span<const int> signs);
int path_parity(const SRGraph& g, std::span<const std::size_t> edges);

/// |prod of odd-position labels - prod of even-position labels| around a closed even edge sequence.
Rational stoich_value(const SRGraph& g, std::span<const std::size_t> edges);

/// Builds the canonical cycle through the given closed vertex sequence.
/// Throws GraphError if consecutive vertices are not adjacent or a vertex repeats.
Cycle make_cycle(const SRGraph& g, const std::vector<Vertex>& vertices);

/// All simple cycles. For DSR graphs these are the cycles of the underlying
/// graph that can be traversed as directed cycles in at least one direction,
/// undirected edges being usable either way. Stops and flags truncation once
/// more than `cap` cycles are found. Throws GraphError for infinite labels or
/// parallel edges.
CycleSet enumerate_cycles(const SRGraph& g, std::size_t cap = kDefaultCycleCap);

CycleClass classify_cycle(const Cycle& c);

/// True iff the intersection of the two cycles (shared vertices and shared
/// edges) is nonempty and each of its connected components is a simple path
/// joining a species vertex to a reaction vertex.
bool s_to_r_intersection(const SRGraph& g, const Cycle& a, const Cycle& b);

/// Canonical text key, e.g. "A-R1-B-R2".
std::string cycle_key(const SRGraph& g, const Cycle& c);

enum class ConditionStatus { Holds, Fails, Inconclusive };

struct ConditionStarResult {
  ConditionStatus status = ConditionStatus::Holds;
  CycleSet cycles;
  /// Index into cycles of an e-cycle that is not an s-cycle.
  std::optional<std::size_t> non_s_witness;
  /// Indices of two e-cycles with S-to-R intersection.
  std::optional<std::pair<std::size_t, std::size_t>> intersecting_witness;
  /// Set for DSR graphs: intersections are tested on undirected edge sets,
  /// which can report failure where a finer orientation-aware test would not.
  bool conservative_intersection = false;
};

ConditionStarResult condition_star(const SRGraph& g, std::size_t cap = kDefaultCycleCap);
/// Same, reusing an existing enumeration of g.
ConditionStarResult condition_star(const SRGraph& g, CycleSet cycles);

}  // namespace crnsr

#endif  // CRNSR_CYCLES_HPP
