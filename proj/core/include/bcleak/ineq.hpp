#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bcleak/rational.hpp"

namespace bcleak {

enum class SymbolKind { entropy, mutual_information, leakage };

// H(A|C), I(A;B|C) or a leakage budget Lj. Groups are sorted, disjoint, and for
// mutual information the pair (A,B) is ordered so that A <= B.
struct InfoSymbol {
  SymbolKind kind = SymbolKind::entropy;
  std::vector<std::string> a;
  std::vector<std::string> b;
  std::vector<std::string> c;
  int leakage_index = 0;

  static InfoSymbol entropy(std::vector<std::string> a, std::vector<std::string> given = {});
  static InfoSymbol mutual_information(std::vector<std::string> a, std::vector<std::string> b,
                                       std::vector<std::string> given = {});
  static InfoSymbol leakage(int j);

  std::string to_string() const;
  auto operator<=>(const InfoSymbol&) const = default;
  bool operator==(const InfoSymbol&) const = default;
};

using RateExpr = std::map<std::string, Rational>;
using SymbolExpr = std::map<InfoSymbol, Rational>;

// Stored as lhs <= rhs or lhs < rhs.
struct Inequality {
  RateExpr lhs;
  SymbolExpr rhs;
  bool strict = false;
  std::string label;

  bool operator==(const Inequality&) const = default;
};

struct IneqSystem {
  std::vector<std::string> variables;
  std::vector<Inequality> inequalities;

  bool has_variable(std::string_view v) const;
  bool operator==(const IneqSystem&) const = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Grammar, one inequality per line:
//   [label:] <rate expr> (<=|<|>=|>) <symbol expr>
// Terms are [rational*]Name with Name a rate variable on the left and H(A,B|C),
// I(A;B|C), L1 or L2 on the right; a side may be the literal 0. `#` starts a comment.
// `vars: a, b, c` declares variables (fixing their order).
IneqSystem parse_system(std::string_view text);
std::string render_system(const IneqSystem& sys);
std::string render(const Inequality& q, const std::vector<std::string>& var_order = {});

// Chain-rule normal form: single-variable conditional entropies and CMIs, expanded in
// lexicographic order. Leakage symbols map to themselves.
SymbolExpr atoms(const InfoSymbol& s);
SymbolExpr atoms(const SymbolExpr& e);

void add_to(RateExpr& e, const std::string& name, const Rational& c);
void add_to(SymbolExpr& e, const InfoSymbol& s, const Rational& c);

}  // namespace bcleak
