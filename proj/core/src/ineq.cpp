#include "bcleak/ineq.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <sstream>

namespace bcleak {
namespace {

std::vector<std::string> sorted_unique(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool intersects(const std::vector<std::string>& x, const std::vector<std::string>& y) {
  for (const auto& s : x)
    if (std::binary_search(y.begin(), y.end(), s)) return true;
  return false;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ",") + x;
  return s;
}

bool ident_start(char ch) { return std::isalpha(static_cast<unsigned char>(ch)) || ch == '_'; }
bool ident_char(char ch) {
  return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '\'';
}

class LineParser {
 public:
  LineParser(std::string_view text, std::size_t line) : s_(text), line_(line) {}

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, pos_ + 1); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(std::string_view tok) {
    skip_ws();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }

  std::string identifier() {
    skip_ws();
    if (pos_ >= s_.size() || !ident_start(s_[pos_])) fail("expected a name");
    const std::size_t b = pos_;
    while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
    return std::string(s_.substr(b, pos_ - b));
  }

  // Optional "label:" prefix; restores position if absent.
  std::string label() {
    skip_ws();
    const std::size_t save = pos_;
    if (pos_ < s_.size() && ident_start(s_[pos_])) {
      std::string id = identifier();
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == ':') {
        ++pos_;
        return id;
      }
    }
    pos_ = save;
    return {};
  }

  std::optional<Rational> number() {
    skip_ws();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) return std::nullopt;
    const std::size_t b = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      const std::size_t d = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (d == pos_) fail("expected a denominator");
    }
    try {
      return parse_rational(s_.substr(b, pos_ - b));
    } catch (const std::invalid_argument& e) {
      pos_ = b;
      fail(e.what());
    }
  }

  std::vector<std::string> name_list() {
    std::vector<std::string> v{identifier()};
    while (accept(",")) v.push_back(identifier());
    return v;
  }

  InfoSymbol symbol() {
    skip_ws();
    const std::size_t b = pos_;
    std::string id = identifier();
    try {
      if (id == "H" && accept("(")) {
        auto a = name_list();
        std::vector<std::string> c;
        if (accept("|")) c = name_list();
        expect(")");
        return InfoSymbol::entropy(a, c);
      }
      if (id == "I" && accept("(")) {
        auto a = name_list();
        expect(";");
        auto bb = name_list();
        std::vector<std::string> c;
        if (accept("|")) c = name_list();
        expect(")");
        return InfoSymbol::mutual_information(a, bb, c);
      }
    } catch (const std::invalid_argument& e) {
      pos_ = b;
      fail(e.what());
    }
    if (id == "L1") return InfoSymbol::leakage(1);
    if (id == "L2") return InfoSymbol::leakage(2);
    pos_ = b;
    fail("unknown information symbol '" + id + "'");
  }

  template <class Expr, class Atom>
  Expr expression(Atom atom) {
    Expr e;
    bool first = true;
    bool any = false;
    while (true) {
      Rational sign = 1;
      if (accept("+")) {
      } else if (accept("-")) {
        sign = -1;
      } else if (!first) {
        break;
      }
      first = false;
      auto coef = number();
      if (coef) {
        if (accept("*")) {
          atom(e, sign * *coef);
        } else if (*coef == 0) {
          // literal zero side
        } else {
          fail("constant terms other than 0 are not allowed");
        }
      } else {
        atom(e, sign);
      }
      any = true;
    }
    if (!any) fail("expected an expression");
    return e;
  }

  std::size_t pos() const { return pos_; }

 private:
  std::string_view s_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

std::string render_coef_term(const Rational& c, const std::string& name, bool first) {
  std::string out;
  const bool neg = c < 0;
  const Rational mag = neg ? Rational(-c) : c;
  if (first)
    out += neg ? "-" : "";
  else
    out += neg ? " - " : " + ";
  if (mag != 1) out += to_string(mag) + "*";
  return out + name;
}

}  // namespace

InfoSymbol InfoSymbol::entropy(std::vector<std::string> a, std::vector<std::string> given) {
  InfoSymbol s;
  s.kind = SymbolKind::entropy;
  s.a = sorted_unique(std::move(a));
  s.c = sorted_unique(std::move(given));
  if (s.a.empty()) throw std::invalid_argument("entropy symbol with empty group");
  if (intersects(s.a, s.c)) throw std::invalid_argument("entropy symbol with overlapping groups");
  return s;
}

InfoSymbol InfoSymbol::mutual_information(std::vector<std::string> a, std::vector<std::string> b,
                                          std::vector<std::string> given) {
  InfoSymbol s;
  s.kind = SymbolKind::mutual_information;
  s.a = sorted_unique(std::move(a));
  s.b = sorted_unique(std::move(b));
  s.c = sorted_unique(std::move(given));
  if (s.a.empty() || s.b.empty()) throw std::invalid_argument("mutual information with empty group");
  if (intersects(s.a, s.b) || intersects(s.a, s.c) || intersects(s.b, s.c))
    throw std::invalid_argument("mutual information with overlapping groups");
  if (s.b < s.a) std::swap(s.a, s.b);
  return s;
}

InfoSymbol InfoSymbol::leakage(int j) {
  if (j != 1 && j != 2) throw std::invalid_argument("leakage index must be 1 or 2");
  InfoSymbol s;
  s.kind = SymbolKind::leakage;
  s.leakage_index = j;
  return s;
}

std::string InfoSymbol::to_string() const {
  switch (kind) {
    case SymbolKind::leakage:
      return "L" + std::to_string(leakage_index);
    case SymbolKind::entropy:
      return "H(" + join(a) + (c.empty() ? "" : "|" + join(c)) + ")";
    case SymbolKind::mutual_information:
      return "I(" + join(a) + ";" + join(b) + (c.empty() ? "" : "|" + join(c)) + ")";
  }
  return {};
}

bool IneqSystem::has_variable(std::string_view v) const {
  return std::find(variables.begin(), variables.end(), v) != variables.end();
}

ParseError::ParseError(const std::string& msg, std::size_t line, std::size_t column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                         msg),
      line_(line),
      column_(column) {}

void add_to(RateExpr& e, const std::string& name, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = e.emplace(name, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) e.erase(it);
  }
}

void add_to(SymbolExpr& e, const InfoSymbol& s, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = e.emplace(s, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) e.erase(it);
  }
}

IneqSystem parse_system(std::string_view text) {
  IneqSystem sys;
  std::set<std::string> seen;
  auto note_var = [&](const std::string& v) {
    if (seen.insert(v).second) sys.variables.push_back(v);
  };
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    LineParser p(line, line_no);
    if (p.done()) {
      if (end == text.size()) break;
      continue;
    }
    std::string label = p.label();
    if (label == "vars") {
      for (const auto& v : p.name_list()) note_var(v);
      if (!p.done()) p.fail("unexpected text after variable list");
      if (end == text.size()) break;
      continue;
    }
    Inequality q;
    q.label = label;
    q.lhs = p.expression<RateExpr>([&](RateExpr& e, const Rational& c) {
      const std::string v = p.identifier();
      if (v == "L1" || v == "L2" || v == "H" || v == "I")
        p.fail("information symbol on the rate side");
      note_var(v);
      add_to(e, v, c);
    });
    bool flip = false;
    if (p.accept("<=")) {
    } else if (p.accept(">=")) {
      flip = true;
    } else if (p.accept("<")) {
      q.strict = true;
    } else if (p.accept(">")) {
      q.strict = true;
      flip = true;
    } else {
      p.fail("expected one of <=, <, >=, >");
    }
    q.rhs = p.expression<SymbolExpr>(
        [&](SymbolExpr& e, const Rational& c) { add_to(e, p.symbol(), c); });
    if (!p.done()) p.fail("unexpected trailing text");
    if (flip) {
      for (auto& [k, v] : q.lhs) v = -v;
      for (auto& [k, v] : q.rhs) v = -v;
    }
    sys.inequalities.push_back(std::move(q));
    if (end == text.size()) break;
  }
  return sys;
}

std::string render(const Inequality& q, const std::vector<std::string>& var_order) {
  bool flip = !q.lhs.empty() &&
              std::all_of(q.lhs.begin(), q.lhs.end(), [](const auto& kv) { return kv.second < 0; });
  const Rational s = flip ? -1 : 1;
  std::string out = q.label.empty() ? "" : q.label + ": ";
  std::vector<std::string> order;
  for (const auto& v : var_order)
    if (q.lhs.count(v)) order.push_back(v);
  for (const auto& [v, c] : q.lhs)
    if (std::find(order.begin(), order.end(), v) == order.end()) order.push_back(v);
  bool first = true;
  for (const auto& v : order) {
    out += render_coef_term(s * q.lhs.at(v), v, first);
    first = false;
  }
  if (first) out += "0";
  out += flip ? (q.strict ? " > " : " >= ") : (q.strict ? " < " : " <= ");
  first = true;
  for (const auto& [sym, c] : q.rhs) {
    out += render_coef_term(s * c, sym.to_string(), first);
    first = false;
  }
  if (first) out += "0";
  return out;
}

std::string render_system(const IneqSystem& sys) {
  std::ostringstream os;
  if (!sys.variables.empty()) {
    os << "vars: ";
    for (std::size_t i = 0; i < sys.variables.size(); ++i) os << (i ? ", " : "") << sys.variables[i];
    os << "\n";
  }
  for (const auto& q : sys.inequalities) os << render(q, sys.variables) << "\n";
  return os.str();
}

SymbolExpr atoms(const InfoSymbol& s) {
  SymbolExpr out;
  switch (s.kind) {
    case SymbolKind::leakage:
      out.emplace(s, Rational(1));
      break;
    case SymbolKind::entropy: {
      auto cond = s.c;
      for (const auto& x : s.a) {
        add_to(out, InfoSymbol::entropy({x}, cond), Rational(1));
        cond.push_back(x);
      }
      break;
    }
    case SymbolKind::mutual_information: {
      std::vector<std::string> prefix_a;
      for (const auto& x : s.a) {
        std::vector<std::string> prefix_b;
        for (const auto& y : s.b) {
          auto cond = s.c;
          cond.insert(cond.end(), prefix_a.begin(), prefix_a.end());
          cond.insert(cond.end(), prefix_b.begin(), prefix_b.end());
          add_to(out, InfoSymbol::mutual_information({x}, {y}, cond), Rational(1));
          prefix_b.push_back(y);
        }
        prefix_a.push_back(x);
      }
      break;
    }
  }
  return out;
}

SymbolExpr atoms(const SymbolExpr& e) {
  SymbolExpr out;
  for (const auto& [sym, c] : e)
    for (const auto& [atom, k] : atoms(sym)) add_to(out, atom, c * k);
  return out;
}

}  // namespace bcleak
