#ifndef CRNSR_GRAPH_HPP
#define CRNSR_GRAPH_HPP

#include "crnsr/linalg.hpp"
#include "crnsr/network.hpp"

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace crnsr {

enum class VertexKind { Species, Reaction };

struct Vertex {
  VertexKind kind;
  std::size_t index;

  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

/// Values match the orientation function of a DSR graph: -1 is S-to-R only,
/// 0 undirected, +1 R-to-S only.
enum class Orientation : int { SpeciesToReaction = -1, Undirected = 0, ReactionToSpecies = 1 };

/// Positive rational edge label, or the formal label infinity.
class EdgeLabel {
 public:
  EdgeLabel(Rational value);  // NOLINT: implicit from a stoichiometry
  static EdgeLabel infinity();

  bool is_infinite() const { return infinite_; }
  /// Throws std::logic_error for the infinite label.
  const Rational& value() const;
  std::string str() const;

  friend bool operator==(const EdgeLabel&, const EdgeLabel&) = default;

 private:
  EdgeLabel() = default;
  Rational value_;
  bool infinite_ = false;
};

struct Edge {
  std::size_t species;
  std::size_t reaction;
  int sign;  // +1 or -1
  EdgeLabel label;
  Orientation orientation = Orientation::Undirected;

  friend bool operator==(const Edge&, const Edge&) = default;
};

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class GraphKind { SR, DSR };

/// Signed, labelled bipartite multigraph on species and reaction vertices.
/// SR graphs carry only undirected edges; DSR graphs add orientations.
/// Immutable; flips return new graphs.
class SRGraph {
 public:
  SRGraph(GraphKind kind, std::vector<std::string> species_names, std::vector<std::string> reaction_names,
          std::vector<Edge> edges);

  GraphKind kind() const { return kind_; }
  bool is_directed() const { return kind_ == GraphKind::DSR; }
  const std::vector<std::string>& species_names() const { return species_names_; }
  const std::vector<std::string>& reaction_names() const { return reaction_names_; }
  std::size_t species_count() const { return species_names_.size(); }
  std::size_t reaction_count() const { return reaction_names_.size(); }
  std::size_t vertex_count() const { return species_count() + reaction_count(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t id) const { return edges_.at(id); }

  /// Edge ids incident on v, in increasing order.
  const std::vector<std::size_t>& incident(Vertex v) const;
  std::size_t degree(Vertex v) const { return incident(v).size(); }
  /// The endpoint of edge `e` other than `v`.
  Vertex opposite(std::size_t e, Vertex v) const;
  const std::string& name(Vertex v) const;
  std::optional<Vertex> find_vertex(std::string_view name) const;

  /// Dense id: species first, then reactions.
  std::size_t flat_id(Vertex v) const {
    return v.kind == VertexKind::Species ? v.index : species_count() + v.index;
  }
  Vertex from_flat_id(std::size_t id) const {
    return id < species_count() ? Vertex{VertexKind::Species, id}
                                : Vertex{VertexKind::Reaction, id - species_count()};
  }

  /// No parallel edges and no infinite labels.
  bool is_simple() const;
  /// Throws GraphError unless is_simple().
  void require_simple() const;

  /// Copy with edge `e` sign-negated at each id in `edge_ids`.
  SRGraph with_negated(const std::vector<std::size_t>& edge_ids) const;

  friend bool operator==(const SRGraph& a, const SRGraph& b) {
    return a.kind_ == b.kind_ && a.species_names_ == b.species_names_ &&
           a.reaction_names_ == b.reaction_names_ && a.edges_ == b.edges_;
  }

 private:
  GraphKind kind_;
  std::vector<std::string> species_names_;
  std::vector<std::string> reaction_names_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> species_incidence_;
  std::vector<std::vector<std::size_t>> reaction_incidence_;
};

SRGraph build_sr(const ReactionNetwork& net);
SRGraph build_dsr(const ReactionNetwork& net);

/// Negates every edge at reaction vertex `reaction`. Throws std::out_of_range for an unknown vertex.
SRGraph r_flip(const SRGraph& g, std::size_t reaction);
/// Negates every edge at species vertex `species`. Throws std::out_of_range for an unknown vertex.
SRGraph s_flip(const SRGraph& g, std::size_t species);

struct DegreeSummary {
  std::size_t species;   // maximum S-vertex degree
  std::size_t reaction;  // maximum R-vertex degree

  friend bool operator==(const DegreeSummary&, const DegreeSummary&) = default;
};

DegreeSummary max_degrees(const SRGraph& g);

/// Connected component id per flat vertex id, numbered by lowest member.
std::vector<std::size_t> connected_components(const SRGraph& g);

/// The stoichiometric matrix the graph encodes: sign * label at (species, reaction).
RationalMatrix signed_incidence(const SRGraph& g);

/// Graphviz text. Species are circles, reactions boxes, negative edges
/// dashed, labels printed; DSR graphs are emitted as digraphs whose
/// undirected edges carry dir=none.
std::string export_dot(const SRGraph& g);

}  // namespace crnsr

#endif  // CRNSR_GRAPH_HPP
