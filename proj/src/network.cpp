#include "crnsr/network.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace crnsr {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                         message),
      line_(line),
      column_(column) {}

namespace {

std::vector<std::size_t> participants(const Reaction& r) {
  std::vector<std::size_t> out;
  for (const auto& t : r.left) out.push_back(t.species);
  for (const auto& t : r.right) out.push_back(t.species);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> default_influences(const Reaction& r) {
  if (r.reversible) return participants(r);
  std::vector<std::size_t> out;
  for (const auto& t : r.left) out.push_back(t.species);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<std::size_t> Reaction::influences() const {
  return rate_influences ? *rate_influences : default_influences(*this);
}

bool Reaction::is_influenced_by(std::size_t species) const {
  const auto inf = influences();
  return std::binary_search(inf.begin(), inf.end(), species);
}

ReactionNetwork::ReactionNetwork(std::vector<std::string> species_names, std::vector<Reaction> reactions)
    : reactions_(std::move(reactions)) {
  std::set<std::string> seen;
  for (std::size_t i = 0; i < species_names.size(); ++i) {
    if (species_names[i].empty()) throw NetworkError("empty species name");
    if (!seen.insert(species_names[i]).second) {
      throw NetworkError("duplicate species name '" + species_names[i] + "'");
    }
    species_.push_back({i, std::move(species_names[i])});
  }
  if (reactions_.empty()) throw NetworkError("network has no reactions");

  std::vector<bool> used(species_.size(), false);
  for (std::size_t j = 0; j < reactions_.size(); ++j) {
    auto& r = reactions_[j];
    const std::string where = "reaction R" + std::to_string(j + 1);
    std::set<std::size_t> left_set;
    std::set<std::size_t> right_set;
    auto check_side = [&](const std::vector<Term>& side, std::set<std::size_t>& set) {
      for (const auto& t : side) {
        if (t.species >= species_.size()) throw NetworkError(where + " references an unknown species");
        if (t.coefficient <= 0) {
          throw NetworkError(where + ": nonpositive coefficient for '" + species_[t.species].name + "'");
        }
        if (!set.insert(t.species).second) {
          throw NetworkError(where + ": species '" + species_[t.species].name +
                             "' repeated on one side (combine coefficients)");
        }
        used[t.species] = true;
      }
    };
    check_side(r.left, left_set);
    check_side(r.right, right_set);
    if (r.left.empty() && r.right.empty()) throw NetworkError(where + " is empty");
    for (auto s : left_set) {
      if (right_set.count(s)) {
        throw NetworkError(where + ": species '" + species_[s].name + "' occurs on both sides");
      }
    }
    if (r.rate_influences) {
      auto& inf = *r.rate_influences;
      std::sort(inf.begin(), inf.end());
      if (std::adjacent_find(inf.begin(), inf.end()) != inf.end()) {
        throw NetworkError(where + ": repeated species in influences");
      }
      for (auto s : inf) {
        if (!left_set.count(s) && !right_set.count(s)) {
          throw NetworkError(where + ": influence on a non-participating species (modulators are not modelled)");
        }
      }
      if (inf == default_influences(r)) r.rate_influences.reset();
    }
  }
  for (std::size_t i = 0; i < species_.size(); ++i) {
    if (!used[i]) throw NetworkError("species '" + species_[i].name + "' appears in no reaction");
  }
}

std::optional<std::size_t> ReactionNetwork::find_species(std::string_view name) const {
  for (const auto& s : species_) {
    if (s.name == name) return s.id;
  }
  return std::nullopt;
}

std::vector<std::string> ReactionNetwork::species_names() const {
  std::vector<std::string> out;
  for (const auto& s : species_) out.push_back(s.name);
  return out;
}

std::vector<std::string> ReactionNetwork::reaction_names() const {
  std::vector<std::string> out;
  for (std::size_t j = 0; j < reactions_.size(); ++j) out.push_back("R" + std::to_string(j + 1));
  return out;
}

// ---------------------------------------------------------------------------
// parser

namespace {

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

struct RawTerm {
  std::string name;
  Rational coefficient;
  std::size_t column;
};

struct RawReaction {
  std::vector<RawTerm> left;
  std::vector<RawTerm> right;
  bool reversible;
  std::optional<std::vector<std::pair<std::string, std::size_t>>> influences;
  std::size_t line;
};

class LineScanner {
 public:
  LineScanner(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool consume(std::string_view token) {
    skip_space();
    if (text_.substr(pos_).starts_with(token)) {
      pos_ += token.size();
      return true;
    }
    return false;
  }
  std::size_t column() const { return pos_ + 1; }
  std::size_t token_column() {
    skip_space();
    return column();
  }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(line_, column(), message); }
  [[noreturn]] void fail_at(std::size_t col, const std::string& message) const {
    throw ParseError(line_, col, message);
  }

  std::string name() {
    skip_space();
    if (pos_ >= text_.size() || !is_name_start(text_[pos_])) fail("expected a species name");
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::optional<Rational> number() {
    skip_space();
    const std::size_t start = pos_;
    std::size_t p = pos_;
    if (p < text_.size() && text_[p] == '-') ++p;
    const std::size_t digits_start = p;
    while (p < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[p])) || text_[p] == '.' ||
                                text_[p] == '/')) {
      ++p;
    }
    if (p == digits_start) return std::nullopt;
    try {
      Rational r = parse_rational(text_.substr(start, p - start));
      pos_ = p;
      return r;
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }

  std::vector<RawTerm> side() {
    std::vector<RawTerm> terms;
    skip_space();
    // a lone "0" denotes the empty complex
    if (pos_ < text_.size() && text_[pos_] == '0') {
      std::size_t q = pos_ + 1;
      const bool standalone = q >= text_.size() || !(std::isdigit(static_cast<unsigned char>(text_[q])) ||
                                                     text_[q] == '.' || text_[q] == '/');
      while (q < text_.size() && std::isspace(static_cast<unsigned char>(text_[q]))) ++q;
      const auto rest = text_.substr(std::min(q, text_.size()));
      if (standalone && (rest.empty() || rest.starts_with("<->") || rest.starts_with("->") || rest.starts_with("|"))) {
        pos_ += 1;
        return terms;
      }
    }
    while (true) {
      skip_space();
      const std::size_t col = token_column();
      Rational coefficient = 1;
      if (auto k = number()) {
        if (*k <= 0) fail_at(col, "nonpositive coefficient " + to_string(*k));
        coefficient = *k;
      }
      terms.push_back({name(), coefficient, col});
      skip_space();
      if (!consume("+")) break;
    }
    return terms;
  }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

void check_side_duplicates(const std::vector<RawTerm>& side, std::size_t line) {
  std::set<std::string> names;
  for (const auto& t : side) {
    if (!names.insert(t.name).second) {
      throw ParseError(line, t.column, "species '" + t.name + "' repeated on one side (combine coefficients)");
    }
  }
}

}  // namespace

ReactionNetwork parse_network(std::string_view text) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    throw ParseError(1, 1, "empty network description");
  }
  std::vector<std::string> names;
  std::map<std::string, std::size_t, std::less<>> index;
  auto register_species = [&](const std::string& name) {
    auto [it, inserted] = index.emplace(name, names.size());
    if (inserted) names.push_back(name);
    return it->second;
  };

  std::vector<RawReaction> raw;
  bool declared = false;
  std::size_t declaration_line = 0;
  std::vector<std::size_t> declaration_columns;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find('\n', start), text.size());
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    LineScanner sc(line, line_no);
    if (sc.at_end()) continue;

    if (sc.consume("species:")) {
      if (declared) sc.fail("duplicate species declaration");
      if (!raw.empty()) sc.fail("species declaration must precede reactions");
      declared = true;
      declaration_line = line_no;
      while (!sc.at_end()) {
        const std::size_t col = sc.token_column();
        const auto n = sc.name();
        if (index.count(n)) sc.fail_at(col, "species '" + n + "' declared twice");
        register_species(n);
        declaration_columns.push_back(col);
        sc.consume(",");
      }
      continue;
    }

    RawReaction r;
    r.line = line_no;
    r.left = sc.side();
    if (sc.consume("<->")) {
      r.reversible = true;
    } else if (sc.consume("->")) {
      r.reversible = false;
    } else {
      sc.fail("expected '->' or '<->'");
    }
    r.right = sc.side();
    if (r.left.empty() && r.right.empty()) sc.fail("reaction has no species");
    if (sc.consume("|")) {
      if (!sc.consume("influences:")) sc.fail("expected 'influences:' annotation");
      std::vector<std::pair<std::string, std::size_t>> inf;
      while (!sc.at_end()) {
        const std::size_t col = sc.token_column();
        inf.emplace_back(sc.name(), col);
        if (!sc.at_end() && !sc.consume(",")) sc.fail("expected ',' between influence names");
      }
      r.influences = std::move(inf);
    }
    if (!sc.at_end()) sc.fail("unexpected trailing text");

    check_side_duplicates(r.left, line_no);
    check_side_duplicates(r.right, line_no);
    for (const auto& t : r.left) {
      for (const auto& u : r.right) {
        if (t.name == u.name) {
          throw ParseError(line_no, u.column, "species '" + t.name + "' occurs on both sides");
        }
      }
    }
    raw.push_back(std::move(r));
  }
  if (raw.empty()) throw ParseError(line_no, 1, "no reactions found");

  std::vector<bool> used(names.size(), false);
  for (const auto& r : raw) {
    for (const auto* side : {&r.left, &r.right}) {
      for (const auto& t : *side) {
        const auto id = register_species(t.name);
        if (id < used.size()) used[id] = true;
      }
    }
  }
  for (std::size_t i = 0; i < used.size(); ++i) {
    if (!used[i]) {
      throw ParseError(declaration_line, declaration_columns[i],
                       "species '" + names[i] + "' appears in no reaction");
    }
  }

  std::vector<Reaction> reactions;
  for (const auto& r : raw) {
    Reaction out;
    out.reversible = r.reversible;
    for (const auto& t : r.left) out.left.push_back({index.at(t.name), t.coefficient});
    for (const auto& t : r.right) out.right.push_back({index.at(t.name), t.coefficient});
    if (r.influences) {
      std::vector<std::size_t> inf;
      for (const auto& [n, col] : *r.influences) {
        auto it = index.find(n);
        const bool participates =
            it != index.end() &&
            (std::any_of(r.left.begin(), r.left.end(), [&](const RawTerm& t) { return t.name == n; }) ||
             std::any_of(r.right.begin(), r.right.end(), [&](const RawTerm& t) { return t.name == n; }));
        if (!participates) {
          throw ParseError(r.line, col, "influence '" + n + "' does not participate in the reaction");
        }
        inf.push_back(it->second);
      }
      out.rate_influences = std::move(inf);
    }
    reactions.push_back(std::move(out));
  }
  try {
    return ReactionNetwork(std::move(names), std::move(reactions));
  } catch (const NetworkError& e) {
    throw ParseError(0, 0, e.what());
  }
}

namespace {

std::string render_side(const ReactionNetwork& net, const std::vector<Term>& side) {
  if (side.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < side.size(); ++k) {
    if (k) out += " + ";
    if (side[k].coefficient != 1) out += to_string(side[k].coefficient) + " ";
    out += net.species()[side[k].species].name;
  }
  return out;
}

}  // namespace

std::string render_reaction(const ReactionNetwork& net, std::size_t reaction) {
  const auto& r = net.reactions().at(reaction);
  return render_side(net, r.left) + (r.reversible ? " <-> " : " -> ") + render_side(net, r.right);
}

std::string render_network(const ReactionNetwork& net) {
  std::ostringstream out;
  out << "species:";
  for (const auto& s : net.species()) out << ' ' << s.name;
  out << '\n';
  for (std::size_t j = 0; j < net.reaction_count(); ++j) {
    out << render_reaction(net, j);
    const auto& r = net.reactions()[j];
    if (r.rate_influences) {
      out << " | influences:";
      for (std::size_t k = 0; k < r.rate_influences->size(); ++k) {
        out << (k ? ", " : " ") << net.species()[(*r.rate_influences)[k]].name;
      }
    }
    out << '\n';
  }
  return out.str();
}

RationalMatrix stoichiometric_matrix(const ReactionNetwork& net) {
  RationalMatrix gamma = RationalMatrix::Zero(static_cast<Eigen::Index>(net.species_count()),
                                              static_cast<Eigen::Index>(net.reaction_count()));
  for (std::size_t j = 0; j < net.reaction_count(); ++j) {
    const auto& r = net.reactions()[j];
    const auto col = static_cast<Eigen::Index>(j);
    for (const auto& t : r.left) gamma(static_cast<Eigen::Index>(t.species), col) -= t.coefficient;
    for (const auto& t : r.right) gamma(static_cast<Eigen::Index>(t.species), col) += t.coefficient;
  }
  return gamma;
}

SignPattern jacobian_sign_pattern(const ReactionNetwork& net) {
  const RationalMatrix gamma = stoichiometric_matrix(net);
  SignPattern p{Eigen::MatrixXi::Zero(static_cast<Eigen::Index>(net.reaction_count()),
                                      static_cast<Eigen::Index>(net.species_count()))};
  for (std::size_t j = 0; j < net.reaction_count(); ++j) {
    const auto& r = net.reactions()[j];
    for (auto i : r.influences()) {
      const auto ii = static_cast<Eigen::Index>(i);
      const auto jj = static_cast<Eigen::Index>(j);
      p.signs(jj, ii) = -sign(gamma(ii, jj));
    }
  }
  return p;
}

}  // namespace crnsr
