#ifndef CRNSR_NETWORK_HPP
#define CRNSR_NETWORK_HPP

#include "crnsr/linalg.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace crnsr {

struct Species {
  std::size_t id;
  std::string name;

  friend bool operator==(const Species&, const Species&) = default;
};

struct Term {
  std::size_t species;
  Rational coefficient;

  friend bool operator==(const Term&, const Term&) = default;
};

struct Reaction {
  std::vector<Term> left;
  std::vector<Term> right;
  bool reversible = true;
  /// Explicit set of species allowed to affect the rate, sorted by index.
  /// Empty optional means the default: every participant for reversible
  /// reactions, left-hand species for irreversible ones.
  std::optional<std::vector<std::size_t>> rate_influences;

  /// Effective influence set, sorted by species index.
  std::vector<std::size_t> influences() const;
  bool is_influenced_by(std::size_t species) const;

  friend bool operator==(const Reaction&, const Reaction&) = default;
};

class NetworkError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Immutable, validated reaction network. Construction enforces: unique
/// nonempty species names, positive coefficients, no species on both sides of
/// a reaction or twice on one side, every species in some reaction, explicit
/// influence sets drawn from the reaction's participants, at least one reaction.
class ReactionNetwork {
 public:
  ReactionNetwork(std::vector<std::string> species_names, std::vector<Reaction> reactions);

  const std::vector<Species>& species() const { return species_; }
  const std::vector<Reaction>& reactions() const { return reactions_; }
  std::size_t species_count() const { return species_.size(); }
  std::size_t reaction_count() const { return reactions_.size(); }
  std::optional<std::size_t> find_species(std::string_view name) const;
  std::vector<std::string> species_names() const;
  /// "R1", "R2", ... in reaction order.
  std::vector<std::string> reaction_names() const;

  friend bool operator==(const ReactionNetwork&, const ReactionNetwork&) = default;

 private:
  std::vector<Species> species_;
  std::vector<Reaction> reactions_;
};

/// Reads the line-oriented reaction format:
///
///   # comment
///   species: A1 A2 A3 B1 B2        (optional; fixes species order)
///   A1 + A2 <-> B1
///   A3 -> 2 A1 | influences: A3
///
/// Undeclared species are registered in order of first appearance, after any
/// declared ones. A side written as `0` is empty.
ReactionNetwork parse_network(std::string_view text);

/// Canonical text; parse_network(render_network(n)) == n.
std::string render_network(const ReactionNetwork& net);

/// Human-readable form of one reaction, e.g. "A + B <-> C".
std::string render_reaction(const ReactionNetwork& net, std::size_t reaction);

/// n x m matrix of net production coefficients (right minus left).
RationalMatrix stoichiometric_matrix(const ReactionNetwork& net);

/// Admissible signs of V(j,i) = dv_j/dx_i under N1C kinetics.
struct SignPattern {
  Eigen::MatrixXi signs;  // m x n, entries in {-1, 0, 1}

  int operator()(Eigen::Index reaction, Eigen::Index species) const { return signs(reaction, species); }
  friend bool operator==(const SignPattern& a, const SignPattern& b) { return a.signs == b.signs; }
};

SignPattern jacobian_sign_pattern(const ReactionNetwork& net);

/// Basis (as columns) of the conserved vectors w with w^T gamma = 0.
inline RationalMatrix conserved_vectors(const RationalMatrix& gamma) { return left_null_space(gamma); }

}  // namespace crnsr

#endif  // CRNSR_NETWORK_HPP
