#include "crnsr/sorting.hpp"

#include <algorithm>
#include <deque>

namespace crnsr {

namespace {

bool columns_opposed(const RationalMatrix& m, Eigen::Index a, Eigen::Index b) {
  for (Eigen::Index k = 0; k < m.rows(); ++k) {
    if (sign(m(k, a)) * sign(m(k, b)) > 0) return false;
  }
  return true;
}

struct Constraint {
  std::size_t to;
  int relation;  // required D[from] * D[to]
  ShortPath path;
};

ShortPath reversed(const ShortPath& p) { return {p.to, p.via, p.from, p.second_edge, p.first_edge}; }

VertexKind other(VertexKind k) {
  return k == VertexKind::Reaction ? VertexKind::Species : VertexKind::Reaction;
}

SortOutcome sort_over(const SRGraph& g, VertexKind node_kind) {
  for (const auto& e : g.edges()) {
    if (e.label.is_infinite()) throw GraphError("sorting is undefined for graphs with infinite labels");
  }
  const VertexKind via_kind = other(node_kind);
  const std::size_t nodes = node_kind == VertexKind::Reaction ? g.reaction_count() : g.species_count();
  const std::size_t vias = via_kind == VertexKind::Reaction ? g.reaction_count() : g.species_count();

  SortOutcome outcome;
  outcome.degree_two_regime = true;
  std::vector<std::vector<Constraint>> adj(nodes);
  for (std::size_t x = 0; x < vias; ++x) {
    const Vertex via{via_kind, x};
    const auto& inc = g.incident(via);
    if (inc.size() > 2) outcome.degree_two_regime = false;
    for (std::size_t a = 0; a < inc.size(); ++a) {
      for (std::size_t b = a + 1; b < inc.size(); ++b) {
        const Vertex u = g.opposite(inc[a], via);
        const Vertex v = g.opposite(inc[b], via);
        // an even short path needs opposite signs after flipping, so D_u D_v = -s1 s2
        const int relation = -g.edge(inc[a]).sign * g.edge(inc[b]).sign;
        const ShortPath p{u, via, v, inc[a], inc[b]};
        adj[u.index].push_back({v.index, relation, p});
        if (u.index != v.index) adj[v.index].push_back({u.index, relation, reversed(p)});
      }
    }
  }

  std::vector<int> d(nodes, 0);
  std::vector<std::optional<ShortPath>> parent(nodes);
  std::optional<ShortPath> conflict;
  for (std::size_t root = 0; root < nodes && !conflict; ++root) {
    if (d[root] != 0) continue;
    d[root] = 1;
    std::deque<std::size_t> queue{root};
    while (!queue.empty() && !conflict) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (const auto& c : adj[u]) {
        const int want = c.relation * d[u];
        if (d[c.to] == 0) {
          d[c.to] = want;
          parent[c.to] = c.path;
          queue.push_back(c.to);
        } else if (d[c.to] != want) {
          conflict = c.path;
          break;
        }
      }
    }
  }

  if (!conflict) {
    outcome.result = Signing{node_kind, std::move(d)};
    return outcome;
  }

  SortWitness witness;
  if (g.is_simple()) {
    const CycleSet cycles = enumerate_cycles(g, 100'000);
    auto it = std::find_if(cycles.cycles.begin(), cycles.cycles.end(),
                           [](const Cycle& c) { return c.is_o_cycle(); });
    if (it != cycles.cycles.end()) {
      witness.kind = SortWitness::Kind::OCycle;
      witness.cycle = *it;
      outcome.result = std::move(witness);
      return outcome;
    }
  }

  auto chain = [&](std::size_t v) {
    std::vector<ShortPath> out;
    while (parent[v]) {
      out.push_back(*parent[v]);
      v = parent[v]->from.index;
    }
    std::reverse(out.begin(), out.end());
    return out;
  };
  const auto to_u = chain(conflict->from.index);
  const auto to_v = chain(conflict->to.index);
  std::size_t common = 0;
  while (common < to_u.size() && common < to_v.size() && to_u[common] == to_v[common]) ++common;
  witness.kind = SortWitness::Kind::ConstraintWalk;
  witness.walk.assign(to_u.begin() + static_cast<std::ptrdiff_t>(common), to_u.end());
  witness.walk.push_back(*conflict);
  for (std::size_t k = to_v.size(); k > common; --k) witness.walk.push_back(reversed(to_v[k - 1]));
  outcome.result = std::move(witness);
  return outcome;
}

}  // namespace

bool is_r_sorted(const RationalMatrix& m) {
  for (Eigen::Index a = 0; a < m.cols(); ++a) {
    for (Eigen::Index b = a + 1; b < m.cols(); ++b) {
      if (!columns_opposed(m, a, b)) return false;
    }
  }
  return true;
}

bool is_s_sorted(const RationalMatrix& m) { return is_r_sorted(m.transpose()); }

SortOutcome r_sort(const SRGraph& g) { return sort_over(g, VertexKind::Reaction); }
SortOutcome s_sort(const SRGraph& g) { return sort_over(g, VertexKind::Species); }

int walk_parity(const SRGraph& g, const std::vector<ShortPath>& walk) {
  int parity = 1;
  for (const auto& p : walk) parity *= -g.edge(p.first_edge).sign * g.edge(p.second_edge).sign;
  return parity;
}

SRGraph apply_signing(const SRGraph& g, const Signing& d) {
  const std::size_t expected = d.over == VertexKind::Reaction ? g.reaction_count() : g.species_count();
  if (d.entries.size() != expected) throw std::invalid_argument("signing size does not match the graph");
  std::vector<std::size_t> negate;
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    const auto& edge = g.edge(e);
    const std::size_t at = d.over == VertexKind::Reaction ? edge.reaction : edge.species;
    if (d.entries[at] < 0) negate.push_back(e);
  }
  return g.with_negated(negate);
}

RationalMatrix apply_signing(const RationalMatrix& gamma, const Signing& d) {
  RationalMatrix out = gamma;
  if (d.over == VertexKind::Reaction) {
    if (static_cast<Eigen::Index>(d.entries.size()) != gamma.cols()) {
      throw std::invalid_argument("signing size does not match the column count");
    }
    for (Eigen::Index j = 0; j < out.cols(); ++j) {
      if (d.entries[static_cast<std::size_t>(j)] < 0) out.col(j) = -out.col(j);
    }
  } else {
    if (static_cast<Eigen::Index>(d.entries.size()) != gamma.rows()) {
      throw std::invalid_argument("signing size does not match the row count");
    }
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      if (d.entries[static_cast<std::size_t>(i)] < 0) out.row(i) = -out.row(i);
    }
  }
  return out;
}

FactorizationCheck check_factorization(const RationalMatrix& gamma, const RationalMatrix& t1,
                                       const RationalMatrix& t2) {
  if (t1.rows() != gamma.rows() || t2.cols() != gamma.cols() || t1.cols() != t2.rows()) {
    throw std::invalid_argument("factor dimensions are incompatible with the stoichiometric matrix");
  }
  if (RationalMatrix(t1 * t2) != gamma) return {false, "product T1*T2 differs from the stoichiometric matrix"};
  for (Eigen::Index i = 0; i < t1.rows(); ++i) {
    Eigen::Index nonzero = 0;
    for (Eigen::Index k = 0; k < t1.cols(); ++k) nonzero += t1(i, k) != 0 ? 1 : 0;
    if (nonzero != 1) {
      return {false, "row " + std::to_string(i + 1) + " of T1 has " + std::to_string(nonzero) +
                         " nonzero entries (exactly one required)"};
    }
  }
  if (!is_s_sorted(t2)) return {false, "T2 is not S-sorted"};
  return {true, "ok"};
}

}  // namespace crnsr
