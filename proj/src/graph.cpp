#include "crnsr/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace crnsr {

EdgeLabel::EdgeLabel(Rational value) : value_(std::move(value)) {
  if (value_ <= 0) throw GraphError("edge labels must be positive");
}

EdgeLabel EdgeLabel::infinity() {
  EdgeLabel l;
  l.infinite_ = true;
  return l;
}

const Rational& EdgeLabel::value() const {
  if (infinite_) throw std::logic_error("infinite edge label has no finite value");
  return value_;
}

std::string EdgeLabel::str() const { return infinite_ ? "inf" : to_string(value_); }

SRGraph::SRGraph(GraphKind kind, std::vector<std::string> species_names, std::vector<std::string> reaction_names,
                 std::vector<Edge> edges)
    : kind_(kind),
      species_names_(std::move(species_names)),
      reaction_names_(std::move(reaction_names)),
      edges_(std::move(edges)),
      species_incidence_(species_names_.size()),
      reaction_incidence_(reaction_names_.size()) {
  std::set<std::string> names;
  for (const auto* list : {&species_names_, &reaction_names_}) {
    for (const auto& n : *list) {
      if (!names.insert(n).second) throw GraphError("duplicate vertex name '" + n + "'");
    }
  }
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto& edge = edges_[e];
    if (edge.species >= species_names_.size() || edge.reaction >= reaction_names_.size()) {
      throw GraphError("edge endpoint out of range");
    }
    if (edge.sign != 1 && edge.sign != -1) throw GraphError("edge sign must be +1 or -1");
    if (kind_ == GraphKind::SR && edge.orientation != Orientation::Undirected) {
      throw GraphError("SR graphs have undirected edges only");
    }
    species_incidence_[edge.species].push_back(e);
    reaction_incidence_[edge.reaction].push_back(e);
  }
}

const std::vector<std::size_t>& SRGraph::incident(Vertex v) const {
  return v.kind == VertexKind::Species ? species_incidence_.at(v.index) : reaction_incidence_.at(v.index);
}

Vertex SRGraph::opposite(std::size_t e, Vertex v) const {
  const auto& edge = edges_.at(e);
  return v.kind == VertexKind::Species ? Vertex{VertexKind::Reaction, edge.reaction}
                                       : Vertex{VertexKind::Species, edge.species};
}

const std::string& SRGraph::name(Vertex v) const {
  return v.kind == VertexKind::Species ? species_names_.at(v.index) : reaction_names_.at(v.index);
}

std::optional<Vertex> SRGraph::find_vertex(std::string_view name) const {
  for (std::size_t i = 0; i < species_names_.size(); ++i) {
    if (species_names_[i] == name) return Vertex{VertexKind::Species, i};
  }
  for (std::size_t j = 0; j < reaction_names_.size(); ++j) {
    if (reaction_names_[j] == name) return Vertex{VertexKind::Reaction, j};
  }
  return std::nullopt;
}

bool SRGraph::is_simple() const {
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& e : edges_) {
    if (e.label.is_infinite()) return false;
    if (!pairs.emplace(e.species, e.reaction).second) return false;
  }
  return true;
}

void SRGraph::require_simple() const {
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& e : edges_) {
    if (e.label.is_infinite()) {
      throw GraphError("edge {" + species_names_[e.species] + ", " + reaction_names_[e.reaction] +
                       "} has label infinity, which cycle analysis does not support");
    }
    if (!pairs.emplace(e.species, e.reaction).second) {
      throw GraphError("parallel edges between " + species_names_[e.species] + " and " +
                       reaction_names_[e.reaction]);
    }
  }
}

SRGraph SRGraph::with_negated(const std::vector<std::size_t>& edge_ids) const {
  auto edges = edges_;
  for (auto e : edge_ids) edges.at(e).sign = -edges.at(e).sign;
  return SRGraph(kind_, species_names_, reaction_names_, std::move(edges));
}

namespace {

SRGraph build(const ReactionNetwork& net, GraphKind kind) {
  const RationalMatrix gamma = stoichiometric_matrix(net);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < net.species_count(); ++i) {
    for (std::size_t j = 0; j < net.reaction_count(); ++j) {
      const Rational& g = gamma(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (g == 0) continue;
      Orientation o = Orientation::Undirected;
      if (kind == GraphKind::DSR && !net.reactions()[j].is_influenced_by(i)) {
        o = Orientation::ReactionToSpecies;
      }
      edges.push_back({i, j, sign(g), EdgeLabel(abs(g)), o});
    }
  }
  return SRGraph(kind, net.species_names(), net.reaction_names(), std::move(edges));
}

}  // namespace

SRGraph build_sr(const ReactionNetwork& net) { return build(net, GraphKind::SR); }
SRGraph build_dsr(const ReactionNetwork& net) { return build(net, GraphKind::DSR); }

SRGraph r_flip(const SRGraph& g, std::size_t reaction) {
  if (reaction >= g.reaction_count()) throw std::out_of_range("unknown reaction vertex");
  return g.with_negated(g.incident({VertexKind::Reaction, reaction}));
}

SRGraph s_flip(const SRGraph& g, std::size_t species) {
  if (species >= g.species_count()) throw std::out_of_range("unknown species vertex");
  return g.with_negated(g.incident({VertexKind::Species, species}));
}

DegreeSummary max_degrees(const SRGraph& g) {
  DegreeSummary d{0, 0};
  for (std::size_t i = 0; i < g.species_count(); ++i) {
    d.species = std::max(d.species, g.degree({VertexKind::Species, i}));
  }
  for (std::size_t j = 0; j < g.reaction_count(); ++j) {
    d.reaction = std::max(d.reaction, g.degree({VertexKind::Reaction, j}));
  }
  return d;
}

std::vector<std::size_t> connected_components(const SRGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : g.edges()) {
    auto a = find(e.species);
    auto b = find(g.species_count() + e.reaction);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> out(n);
  for (std::size_t v = 0; v < n; ++v) out[v] = find(v);
  return out;
}

RationalMatrix signed_incidence(const SRGraph& g) {
  RationalMatrix m = RationalMatrix::Zero(static_cast<Eigen::Index>(g.species_count()),
                                          static_cast<Eigen::Index>(g.reaction_count()));
  for (const auto& e : g.edges()) {
    m(static_cast<Eigen::Index>(e.species), static_cast<Eigen::Index>(e.reaction)) +=
        Rational(e.sign) * e.label.value();
  }
  return m;
}

std::string export_dot(const SRGraph& g) {
  const bool directed = g.is_directed();
  std::ostringstream out;
  out << (directed ? "digraph DSR {\n" : "graph SR {\n");
  out << "  node [shape=circle];";
  for (const auto& n : g.species_names()) out << " \"" << n << "\";";
  out << "\n  node [shape=box];";
  for (const auto& n : g.reaction_names()) out << " \"" << n << "\";";
  out << '\n';
  const char* connector = directed ? " -> " : " -- ";
  for (const auto& e : g.edges()) {
    const auto& s = g.species_names()[e.species];
    const auto& r = g.reaction_names()[e.reaction];
    const bool r_to_s = e.orientation == Orientation::ReactionToSpecies;
    out << "  \"" << (r_to_s ? r : s) << '"' << connector << '"' << (r_to_s ? s : r) << "\" [";
    out << "style=" << (e.sign < 0 ? "dashed" : "solid") << ", label=\"" << e.label.str() << '"';
    if (directed && e.orientation == Orientation::Undirected) out << ", dir=none";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace crnsr
