#ifndef CRNSR_TESTS_ORACLES_HPP
#define CRNSR_TESTS_ORACLES_HPP

// Independent reference implementations used only by the tests.

#include "crnsr/graph.hpp"
#include "crnsr/linalg.hpp"
#include "crnsr/network.hpp"
#include "crnsr/numerics.hpp"

#include <initializer_list>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace crnsr::oracle {

RationalMatrix rmat(std::initializer_list<std::initializer_list<long>> rows);

std::string read_file(const std::string& path);
ReactionNetwork fixture(const std::string& name);

/// A1..A_{n+2}, B1..B_{n+1}; A_i + A_{i+1} <-> B_i and A_{n+2} <-> 2 A1.
std::string ring_text(int n);
ReactionNetwork ring_network(int n);

/// Determinant by cofactor expansion.
Rational cofactor_det(const RationalMatrix& m);
/// Largest k with a nonzero k x k minor.
Eigen::Index rank_by_minors(const RationalMatrix& m);

/// Every pair of columns has opposite signs on each shared row (direct check).
bool columns_opposed(const RationalMatrix& m);
/// Tries all 2^m column signings.
bool r_sortable_brute(const RationalMatrix& m);

/// Edge-id sets of all simple cycles, found by unrestricted DFS from every
/// vertex. For directed graphs only edges traversable in the walking
/// direction are followed.
std::set<std::vector<std::size_t>> cycle_edge_sets(const SRGraph& g);

bool is_connected(const SRGraph& g);

/// Connected SR graph with every species of degree 1 or 2.
SRGraph random_low_degree_graph(std::mt19937_64& rng, std::size_t max_reactions = 6, std::size_t max_species = 8);
/// Random simple SR graph with at most `max_vertices` vertices.
SRGraph random_graph(std::mt19937_64& rng, std::size_t max_vertices = 12, double density = 0.35);
/// Random valid network; reversible and irreversible reactions, some explicit influences.
ReactionNetwork random_network(std::mt19937_64& rng, std::size_t max_species = 6, std::size_t max_reactions = 5);

/// Central differences of the rate vector, m x n.
Eigen::MatrixXd fd_rate_jacobian(const MassActionModel& model, const Eigen::VectorXd& x);

}  // namespace crnsr::oracle

#endif  // CRNSR_TESTS_ORACLES_HPP
