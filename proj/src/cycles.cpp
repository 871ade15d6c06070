#include "crnsr/cycles.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace crnsr {

int path_parity(std::span<const int> signs) {
  if (signs.size() % 2 != 0) throw std::invalid_argument("parity is defined for even-length paths only");
  int product = 1;
  for (int s : signs) product *= s;
  return ((signs.size() / 2) % 2 == 0 ? 1 : -1) * product;
}

int path_parity(const SRGraph& g, std::span<const std::size_t> edges) {
  std::vector<int> signs;
  signs.reserve(edges.size());
  for (auto e : edges) signs.push_back(g.edge(e).sign);
  return path_parity(signs);
}

Rational stoich_value(const SRGraph& g, std::span<const std::size_t> edges) {
  if (edges.size() % 2 != 0) throw std::invalid_argument("stoich is defined for even cycles only");
  Rational odd = 1;
  Rational even = 1;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    (k % 2 == 0 ? odd : even) *= g.edge(edges[k]).label.value();
  }
  return abs(odd - even);
}

namespace {

bool traversable(const SRGraph& g, const Cycle& c, bool forward) {
  const std::size_t len = c.length();
  for (std::size_t k = 0; k < len; ++k) {
    const Vertex from = forward ? c.vertices[k] : c.vertices[(k + 1) % len];
    switch (g.edge(c.edges[k]).orientation) {
      case Orientation::Undirected:
        break;
      case Orientation::ReactionToSpecies:
        if (from.kind != VertexKind::Reaction) return false;
        break;
      case Orientation::SpeciesToReaction:
        if (from.kind != VertexKind::Species) return false;
        break;
    }
  }
  return true;
}

// Fills sign, parity, stoich and traversal. Returns false if a DSR cycle
// cannot be traversed in either direction.
bool finalize(const SRGraph& g, Cycle& c) {
  c.sign = 1;
  for (auto e : c.edges) c.sign *= g.edge(e).sign;
  c.parity = path_parity(g, c.edges);
  c.stoich = stoich_value(g, c.edges);
  if (!g.is_directed()) {
    c.traversal = Traversal::Both;
    return true;
  }
  const bool fwd = traversable(g, c, true);
  const bool bwd = traversable(g, c, false);
  if (fwd && bwd) {
    c.traversal = Traversal::Both;
  } else if (fwd) {
    c.traversal = Traversal::Forward;
  } else if (bwd) {
    c.traversal = Traversal::Backward;
  } else {
    return false;
  }
  return true;
}

std::optional<std::size_t> edge_between(const SRGraph& g, Vertex a, Vertex b) {
  for (auto e : g.incident(a)) {
    if (g.opposite(e, a) == b) return e;
  }
  return std::nullopt;
}

bool cycle_less(const SRGraph& g, const Cycle& a, const Cycle& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  return std::lexicographical_compare(
      a.vertices.begin(), a.vertices.end(), b.vertices.begin(), b.vertices.end(),
      [&](const Vertex& x, const Vertex& y) { return g.flat_id(x) < g.flat_id(y); });
}

}  // namespace

Cycle make_cycle(const SRGraph& g, const std::vector<Vertex>& vertices) {
  const std::size_t len = vertices.size();
  if (len < 4 || len % 2 != 0) throw GraphError("a cycle needs an even number (>= 4) of vertices");
  std::set<Vertex> seen(vertices.begin(), vertices.end());
  if (seen.size() != len) throw GraphError("cycle repeats a vertex");

  std::size_t start = 0;
  for (std::size_t k = 1; k < len; ++k) {
    if (g.flat_id(vertices[k]) < g.flat_id(vertices[start])) start = k;
  }
  const Vertex next = vertices[(start + 1) % len];
  const Vertex prev = vertices[(start + len - 1) % len];
  const bool forward = g.flat_id(next) < g.flat_id(prev);

  Cycle c;
  for (std::size_t k = 0; k < len; ++k) {
    const std::size_t idx = forward ? (start + k) % len : (start + len - k) % len;
    c.vertices.push_back(vertices[idx]);
  }
  for (std::size_t k = 0; k < len; ++k) {
    auto e = edge_between(g, c.vertices[k], c.vertices[(k + 1) % len]);
    if (!e) throw GraphError("vertices " + g.name(c.vertices[k]) + " and " + g.name(c.vertices[(k + 1) % len]) +
                             " are not adjacent");
    c.edges.push_back(*e);
  }
  if (!finalize(g, c)) throw GraphError("cycle is not a directed cycle of the DSR graph");
  return c;
}

CycleSet enumerate_cycles(const SRGraph& g, std::size_t cap) {
  if (cap == 0) throw std::invalid_argument("cycle cap must be at least 1");
  g.require_simple();

  const std::size_t n = g.vertex_count();
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n);
  for (std::size_t v = 0; v < n; ++v) {
    const Vertex vx = g.from_flat_id(v);
    for (auto e : g.incident(vx)) adj[v].emplace_back(g.flat_id(g.opposite(e, vx)), e);
  }

  CycleSet out;
  std::vector<char> on_path(n, 0);
  std::vector<std::size_t> path;        // flat vertex ids
  std::vector<std::size_t> path_edges;  // edge ids

  // Paths from `root` through higher-numbered vertices only; a cycle is
  // recorded in the direction where the second vertex is below the last one.
  auto search = [&](auto&& self, std::size_t root, std::size_t v) -> void {
    for (const auto& [w, e] : adj[v]) {
      if (out.truncated) return;
      if (w == root) {
        if (path_edges.size() >= 2 && path[1] < v) {
          Cycle c;
          for (auto p : path) c.vertices.push_back(g.from_flat_id(p));
          c.edges = path_edges;
          c.edges.push_back(e);
          if (finalize(g, c)) {
            if (out.cycles.size() == cap) {
              out.truncated = true;
              return;
            }
            out.cycles.push_back(std::move(c));
          }
        }
      } else if (w > root && !on_path[w]) {
        on_path[w] = 1;
        path.push_back(w);
        path_edges.push_back(e);
        self(self, root, w);
        path.pop_back();
        path_edges.pop_back();
        on_path[w] = 0;
      }
    }
  };

  for (std::size_t root = 0; root < n && !out.truncated; ++root) {
    on_path[root] = 1;
    path.assign(1, root);
    path_edges.clear();
    search(search, root, root);
    on_path[root] = 0;
  }
  std::sort(out.cycles.begin(), out.cycles.end(),
            [&](const Cycle& a, const Cycle& b) { return cycle_less(g, a, b); });
  return out;
}

CycleClass classify_cycle(const Cycle& c) { return {c.is_e_cycle(), c.is_s_cycle()}; }

bool s_to_r_intersection(const SRGraph& g, const Cycle& a, const Cycle& b) {
  std::set<std::size_t> shared_vertices;
  {
    std::set<std::size_t> va;
    for (const auto& v : a.vertices) va.insert(g.flat_id(v));
    for (const auto& v : b.vertices) {
      if (va.count(g.flat_id(v))) shared_vertices.insert(g.flat_id(v));
    }
  }
  if (shared_vertices.empty()) return false;
  std::vector<std::size_t> shared_edges;
  {
    std::set<std::size_t> ea(a.edges.begin(), a.edges.end());
    for (auto e : b.edges) {
      if (ea.count(e)) shared_edges.push_back(e);
    }
  }

  std::map<std::size_t, std::size_t> parent;
  std::map<std::size_t, std::size_t> degree;
  for (auto v : shared_vertices) {
    parent[v] = v;
    degree[v] = 0;
  }
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto e : shared_edges) {
    const auto s = g.flat_id({VertexKind::Species, g.edge(e).species});
    const auto r = g.flat_id({VertexKind::Reaction, g.edge(e).reaction});
    ++degree[s];
    ++degree[r];
    parent[find(s)] = find(r);
  }
  std::map<std::size_t, std::size_t> vertex_count;
  std::map<std::size_t, std::size_t> edge_count;
  std::map<std::size_t, std::size_t> max_degree;
  for (auto v : shared_vertices) {
    const auto root = find(v);
    ++vertex_count[root];
    max_degree[root] = std::max(max_degree[root], degree[v]);
  }
  for (auto e : shared_edges) ++edge_count[find(g.flat_id({VertexKind::Species, g.edge(e).species}))];

  for (const auto& [root, nv] : vertex_count) {
    const std::size_t ne = edge_count[root];
    // a tree with maximum degree 2 is a path; odd length puts its ends in different classes
    const bool is_path = ne + 1 == nv && max_degree[root] <= 2;
    if (!is_path || ne % 2 == 0) return false;
  }
  return true;
}

std::string cycle_key(const SRGraph& g, const Cycle& c) {
  std::string key;
  for (std::size_t k = 0; k < c.vertices.size(); ++k) {
    if (k) key += '-';
    key += g.name(c.vertices[k]);
  }
  return key;
}

ConditionStarResult condition_star(const SRGraph& g, std::size_t cap) {
  return condition_star(g, enumerate_cycles(g, cap));
}

ConditionStarResult condition_star(const SRGraph& g, CycleSet cycles) {
  ConditionStarResult result;
  result.cycles = std::move(cycles);
  result.conservative_intersection = g.is_directed();
  if (result.cycles.truncated) {
    result.status = ConditionStatus::Inconclusive;
    return result;
  }
  std::vector<std::size_t> e_cycles;
  for (std::size_t k = 0; k < result.cycles.cycles.size(); ++k) {
    if (result.cycles.cycles[k].is_e_cycle()) e_cycles.push_back(k);
  }
  for (auto k : e_cycles) {
    if (!result.cycles.cycles[k].is_s_cycle()) {
      result.status = ConditionStatus::Fails;
      result.non_s_witness = k;
      return result;
    }
  }
  for (std::size_t x = 0; x < e_cycles.size(); ++x) {
    for (std::size_t y = x + 1; y < e_cycles.size(); ++y) {
      if (s_to_r_intersection(g, result.cycles.cycles[e_cycles[x]], result.cycles.cycles[e_cycles[y]])) {
        result.status = ConditionStatus::Fails;
        result.intersecting_witness = std::make_pair(e_cycles[x], e_cycles[y]);
        return result;
      }
    }
  }
  result.status = ConditionStatus::Holds;
  return result;
}

}  // namespace crnsr
