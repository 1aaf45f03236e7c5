// Copyright (c) 2026 The pa Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pa/formula.hpp"

#include <cctype>
#include <functional>
#include <optional>
#include <sstream>

#include "pa/error.hpp"
#include "pa/qe.hpp"

namespace pa {

// ---------------------------------------------------------------------------
// Term

Term Term::variable(const std::string& name, const BigInt& coefficient) {
  Term t;
  t.add(name, coefficient);
  return t;
}

void Term::add(const std::string& name, const BigInt& coefficient) {
  if (coefficient == 0) return;
  auto it = coeffs_.find(name);
  if (it == coeffs_.end()) {
    coeffs_.emplace(name, coefficient);
    return;
  }
  it->second += coefficient;
  if (it->second == 0) coeffs_.erase(it);
}

BigInt Term::coefficient(const std::string& name) const {
  auto it = coeffs_.find(name);
  return it == coeffs_.end() ? BigInt(0) : it->second;
}

Term Term::operator+(const Term& other) const {
  Term out = *this;
  out += other;
  return out;
}

Term& Term::operator+=(const Term& other) {
  for (const auto& [name, c] : other.coeffs_) add(name, c);
  constant_ += other.constant_;
  return *this;
}

Term Term::operator-(const Term& other) const { return *this + (-other); }

Term Term::operator-() const { return *this * BigInt(-1); }

Term Term::operator*(const BigInt& factor) const {
  Term out;
  if (factor == 0) return out;
  for (const auto& [name, c] : coeffs_) out.coeffs_.emplace(name, c * factor);
  out.constant_ = constant_ * factor;
  return out;
}

Term Term::without_constant() const {
  Term out = *this;
  out.constant_ = 0;
  return out;
}

Term Term::without(const std::string& name) const {
  Term out = *this;
  out.coeffs_.erase(name);
  return out;
}

Term Term::substitute(const std::string& name, const Term& value) const {
  auto it = coeffs_.find(name);
  if (it == coeffs_.end()) return *this;
  BigInt c = it->second;
  return without(name) + value * c;
}

Term Term::renamed(const std::map<std::string, std::string>& names) const {
  Term out(constant_);
  for (const auto& [name, c] : coeffs_) {
    auto it = names.find(name);
    out.add(it == names.end() ? name : it->second, c);
  }
  return out;
}

BigInt Term::evaluate(const Assignment& assignment) const {
  BigInt value = constant_;
  for (const auto& [name, c] : coeffs_) {
    auto it = assignment.find(name);
    if (it == assignment.end())
      throw DomainError("unbound free variable '" + name + "'");
    value += c * it->second;
  }
  return value;
}

std::string Term::to_string() const {
  std::ostringstream out;
  bool first = true;
  auto emit = [&](const BigInt& c, const std::string& name) {
    BigInt mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    if (name.empty()) {
      out << mag;
    } else {
      if (mag != 1) out << mag << "*";
      out << name;
    }
    first = false;
  };
  for (const auto& [name, c] : coeffs_) emit(c, name);
  if (constant_ != 0 || first) emit(constant_, "");
  return out.str();
}

bool operator<(const Term& a, const Term& b) {
  if (a.coeffs_.size() != b.coeffs_.size())
    return a.coeffs_.size() < b.coeffs_.size();
  auto ia = a.coeffs_.begin();
  auto ib = b.coeffs_.begin();
  for (; ia != a.coeffs_.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first < ib->first;
    if (ia->second != ib->second) return ia->second < ib->second;
  }
  return a.constant_ < b.constant_;
}

// ---------------------------------------------------------------------------
// Formula

struct Formula::Node {
  FormulaKind kind;
  Term lhs;
  Term rhs;
  BigInt residue;
  BigInt modulus;
  std::string var;
  std::optional<Formula> a;
  std::optional<Formula> b;
};

Formula Formula::less(Term lhs, Term rhs) {
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::Less, std::move(lhs), std::move(rhs), 0, 0, {}, {}, {}}));
}

Formula Formula::less_eq(Term lhs, Term rhs) {
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::LessEq, std::move(lhs), std::move(rhs), 0, 0, {}, {}, {}}));
}

Formula Formula::eq(Term lhs, Term rhs) {
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::Eq, std::move(lhs), std::move(rhs), 0, 0, {}, {}, {}}));
}

Formula Formula::cong(const Term& term, const BigInt& residue, const BigInt& modulus) {
  if (modulus <= 0) throw DomainError("modulus must be positive");
  BigInt k = mod_floor(residue - term.constant(), modulus);
  return Formula(std::make_shared<const Node>(Node{
      FormulaKind::Cong, term.without_constant(), Term(), k, modulus, {}, {}, {}}));
}

Formula Formula::negation(Formula operand) {
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::Not, {}, {}, 0, 0, {}, std::move(operand), {}}));
}

Formula Formula::conjunction(Formula left, Formula right) {
  return Formula(std::make_shared<const Node>(Node{
      FormulaKind::And, {}, {}, 0, 0, {}, std::move(left), std::move(right)}));
}

Formula Formula::disjunction(Formula left, Formula right) {
  return Formula(std::make_shared<const Node>(Node{
      FormulaKind::Or, {}, {}, 0, 0, {}, std::move(left), std::move(right)}));
}

Formula Formula::implication(Formula left, Formula right) {
  return Formula(std::make_shared<const Node>(Node{FormulaKind::Implies, {}, {}, 0, 0, {},
                                                   std::move(left),
                                                   std::move(right)}));
}

Formula Formula::exists(std::string variable, Formula body) {
  return Formula(std::make_shared<const Node>(Node{
      FormulaKind::Exists, {}, {}, 0, 0, std::move(variable), std::move(body), {}}));
}

Formula Formula::forall(std::string variable, Formula body) {
  return Formula(std::make_shared<const Node>(Node{
      FormulaKind::Forall, {}, {}, 0, 0, std::move(variable), std::move(body), {}}));
}

Formula Formula::truth(bool value) {
  return value ? eq(Term(0), Term(0)) : less(Term(0), Term(0));
}

Formula Formula::all_of(const std::vector<Formula>& parts) {
  if (parts.empty()) return truth(true);
  Formula out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = conjunction(out, parts[i]);
  return out;
}

Formula Formula::any_of(const std::vector<Formula>& parts) {
  if (parts.empty()) return truth(false);
  Formula out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = disjunction(out, parts[i]);
  return out;
}

FormulaKind Formula::kind() const { return node_->kind; }

bool Formula::is_atom() const {
  switch (node_->kind) {
    case FormulaKind::Less:
    case FormulaKind::LessEq:
    case FormulaKind::Eq:
    case FormulaKind::Cong:
      return true;
    default:
      return false;
  }
}

bool Formula::is_quantifier() const {
  return node_->kind == FormulaKind::Exists || node_->kind == FormulaKind::Forall;
}

bool Formula::is_quantifier_free() const {
  if (is_atom()) return true;
  if (is_quantifier()) return false;
  if (node_->kind == FormulaKind::Not) return left().is_quantifier_free();
  return left().is_quantifier_free() && right().is_quantifier_free();
}

namespace {

// Truth of a variable-free atom; empty optional when the atom has variables.
std::optional<bool> constant_truth(FormulaKind kind, const Term& lhs, const Term& rhs,
                                   const BigInt& residue, const BigInt& modulus) {
  Term d = lhs - rhs;
  if (!d.is_constant()) return std::nullopt;
  const BigInt& v = d.constant();
  switch (kind) {
    case FormulaKind::Less:
      return v < 0;
    case FormulaKind::LessEq:
      return v <= 0;
    case FormulaKind::Eq:
      return v == 0;
    case FormulaKind::Cong:
      return mod_floor(v - residue, modulus) == 0;
    default:
      return std::nullopt;
  }
}

}  // namespace

bool Formula::is_true_constant() const {
  if (!is_atom()) return false;
  auto v = constant_truth(node_->kind, node_->lhs, node_->rhs, node_->residue, node_->modulus);
  return v && *v;
}

bool Formula::is_false_constant() const {
  if (!is_atom()) return false;
  auto v = constant_truth(node_->kind, node_->lhs, node_->rhs, node_->residue, node_->modulus);
  return v && !*v;
}

const Term& Formula::lhs() const { return node_->lhs; }
const Term& Formula::rhs() const { return node_->rhs; }
const BigInt& Formula::residue() const { return node_->residue; }
const BigInt& Formula::modulus() const { return node_->modulus; }

const Formula& Formula::left() const { return *node_->a; }

const Formula& Formula::right() const { return *node_->b; }

const std::string& Formula::variable() const { return node_->var; }

namespace {

void collect_free(const Formula& f, std::set<std::string>& bound,
                  std::set<std::string>& out) {
  auto add_term = [&](const Term& t) {
    for (const auto& [name, c] : t.coefficients())
      if (!bound.count(name)) out.insert(name);
  };
  if (f.is_atom()) {
    add_term(f.lhs());
    add_term(f.rhs());
    return;
  }
  switch (f.kind()) {
    case FormulaKind::Not:
      collect_free(f.left(), bound, out);
      return;
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      bool inserted = bound.insert(f.variable()).second;
      collect_free(f.body(), bound, out);
      if (inserted) bound.erase(f.variable());
      return;
    }
    default:
      collect_free(f.left(), bound, out);
      collect_free(f.right(), bound, out);
  }
}

}  // namespace

std::set<std::string> Formula::free_variables() const {
  std::set<std::string> bound, out;
  collect_free(*this, bound, out);
  return out;
}

std::set<std::string> Formula::all_variables() const {
  std::set<std::string> out;
  std::function<void(const Formula&)> walk = [&](const Formula& f) {
    if (f.is_atom()) {
      for (const auto& [n, c] : f.lhs().coefficients()) out.insert(n);
      for (const auto& [n, c] : f.rhs().coefficients()) out.insert(n);
      return;
    }
    if (f.is_quantifier()) {
      out.insert(f.variable());
      walk(f.body());
      return;
    }
    walk(f.left());
    if (f.kind() != FormulaKind::Not) walk(f.right());
  };
  walk(*this);
  return out;
}

namespace {

Formula rebuild_atom(const Formula& f, const std::function<Term(const Term&)>& map) {
  switch (f.kind()) {
    case FormulaKind::Less:
      return Formula::less(map(f.lhs()), map(f.rhs()));
    case FormulaKind::LessEq:
      return Formula::less_eq(map(f.lhs()), map(f.rhs()));
    case FormulaKind::Eq:
      return Formula::eq(map(f.lhs()), map(f.rhs()));
    default:
      return Formula::cong(map(f.cong_term()), f.residue(), f.modulus());
  }
}

Formula map_free(const Formula& f, std::set<std::string>& bound,
                 const std::function<Term(const Term&, const std::set<std::string>&)>& map) {
  if (f.is_atom())
    return rebuild_atom(f, [&](const Term& t) { return map(t, bound); });
  switch (f.kind()) {
    case FormulaKind::Not:
      return Formula::negation(map_free(f.left(), bound, map));
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      bool inserted = bound.insert(f.variable()).second;
      Formula body = map_free(f.body(), bound, map);
      if (inserted) bound.erase(f.variable());
      return f.kind() == FormulaKind::Exists ? Formula::exists(f.variable(), body)
                                             : Formula::forall(f.variable(), body);
    }
    case FormulaKind::And:
      return Formula::conjunction(map_free(f.left(), bound, map),
                                  map_free(f.right(), bound, map));
    case FormulaKind::Or:
      return Formula::disjunction(map_free(f.left(), bound, map),
                                  map_free(f.right(), bound, map));
    default:
      return Formula::implication(map_free(f.left(), bound, map),
                                  map_free(f.right(), bound, map));
  }
}

}  // namespace

namespace {

Formula substitute_in(const Formula& f, const std::string& name, const Term& value,
                      std::set<std::string>& taken) {
  if (f.is_atom())
    return rebuild_atom(f, [&](const Term& t) { return t.substitute(name, value); });
  switch (f.kind()) {
    case FormulaKind::Not:
      return Formula::negation(substitute_in(f.left(), name, value, taken));
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      if (f.variable() == name) return f;
      std::string var = f.variable();
      Formula body = f.body();
      if (value.mentions(var) && body.free_variables().count(name)) {
        int k = 1;
        while (taken.count(var + "_" + std::to_string(k))) ++k;
        std::string fresh = var + "_" + std::to_string(k);
        taken.insert(fresh);
        body = body.renamed({{var, fresh}});
        var = fresh;
      }
      body = substitute_in(body, name, value, taken);
      return f.kind() == FormulaKind::Exists ? Formula::exists(var, body)
                                             : Formula::forall(var, body);
    }
    case FormulaKind::And:
      return Formula::conjunction(substitute_in(f.left(), name, value, taken),
                                  substitute_in(f.right(), name, value, taken));
    case FormulaKind::Or:
      return Formula::disjunction(substitute_in(f.left(), name, value, taken),
                                  substitute_in(f.right(), name, value, taken));
    default:
      return Formula::implication(substitute_in(f.left(), name, value, taken),
                                  substitute_in(f.right(), name, value, taken));
  }
}

}  // namespace

Formula Formula::substitute(const std::string& name, const Term& value) const {
  if (!free_variables().count(name)) return *this;
  std::set<std::string> taken = all_variables();
  for (const auto& [n, c] : value.coefficients()) taken.insert(n);
  return substitute_in(*this, name, value, taken);
}

Formula Formula::renamed(const std::map<std::string, std::string>& names) const {
  std::set<std::string> bound;
  return map_free(*this, bound, [&](const Term& t, const std::set<std::string>& b) {
    std::map<std::string, std::string> active;
    for (const auto& [from, to] : names)
      if (!b.count(from)) active.emplace(from, to);
    return t.renamed(active);
  });
}

Formula Formula::instantiate(const Assignment& assignment) const {
  std::set<std::string> bound;
  return map_free(*this, bound, [&](const Term& t, const std::set<std::string>& b) {
    Term out(t.constant());
    for (const auto& [name, c] : t.coefficients()) {
      auto it = assignment.find(name);
      if (it != assignment.end() && !b.count(name))
        out += Term(c * it->second);
      else
        out += Term::variable(name, c);
    }
    return out;
  });
}

std::size_t Formula::size() const {
  if (is_atom()) return 1;
  if (is_quantifier() || kind() == FormulaKind::Not) return 1 + left().size();
  return 1 + left().size() + right().size();
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  if (a.is_atom()) {
    if (a.kind() == FormulaKind::Cong)
      return a.residue() == b.residue() && a.modulus() == b.modulus() &&
             a.cong_term() == b.cong_term();
    return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
  if (a.is_quantifier()) return a.variable() == b.variable() && a.body() == b.body();
  if (a.kind() == FormulaKind::Not) return a.left() == b.left();
  return a.left() == b.left() && a.right() == b.right();
}

namespace {

void print(const Formula& f, std::ostream& out);

void print_operand(const Formula& f, std::ostream& out) {
  if (f.is_atom() || f.kind() == FormulaKind::Not) {
    print(f, out);
  } else {
    out << "(";
    print(f, out);
    out << ")";
  }
}

void print(const Formula& f, std::ostream& out) {
  switch (f.kind()) {
    case FormulaKind::Less:
      out << f.lhs().to_string() << " < " << f.rhs().to_string();
      return;
    case FormulaKind::LessEq:
      out << f.lhs().to_string() << " <= " << f.rhs().to_string();
      return;
    case FormulaKind::Eq:
      out << f.lhs().to_string() << " = " << f.rhs().to_string();
      return;
    case FormulaKind::Cong:
      out << f.cong_term().to_string() << " === " << f.residue() << " mod " << f.modulus();
      return;
    case FormulaKind::Not:
      out << "!";
      print_operand(f.left(), out);
      return;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies: {
      const char* op = f.kind() == FormulaKind::And  ? " & "
                       : f.kind() == FormulaKind::Or ? " | "
                                                     : " -> ";
      print_operand(f.left(), out);
      out << op;
      print_operand(f.right(), out);
      return;
    }
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      out << (f.kind() == FormulaKind::Exists ? "exists " : "forall ") << f.variable()
          << ". ";
      print(f.body(), out);
      return;
  }
}

}  // namespace

std::string Formula::to_string() const {
  std::ostringstream out;
  print(*this, out);
  return out.str();
}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok {
  Int,
  Var,
  Plus,
  Minus,
  Star,
  Lt,
  Le,
  Gt,
  Ge,
  Eq,
  Cong,
  Not,
  And,
  Or,
  Arrow,
  Dot,
  LParen,
  RParen,
  Exists,
  Forall,
  Mod,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({Tok::Int, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' || s[i] == '\''))
        ++i;
      std::string word(s.substr(start, i - start));
      Tok kind = word == "exists"   ? Tok::Exists
                 : word == "forall" ? Tok::Forall
                 : word == "mod"    ? Tok::Mod
                                    : Tok::Var;
      out.push_back({kind, std::move(word), start});
      continue;
    }
    auto starts = [&](std::string_view p) { return s.substr(i, p.size()) == p; };
    struct Sym {
      std::string_view text;
      Tok kind;
    };
    static constexpr Sym symbols[] = {
        {"===", Tok::Cong}, {"->", Tok::Arrow}, {"<=", Tok::Le}, {">=", Tok::Ge},
        {"<", Tok::Lt},     {">", Tok::Gt},     {"=", Tok::Eq},  {"+", Tok::Plus},
        {"-", Tok::Minus},  {"*", Tok::Star},   {"!", Tok::Not}, {"&", Tok::And},
        {"|", Tok::Or},     {".", Tok::Dot},    {"(", Tok::LParen}, {")", Tok::RParen},
    };
    bool matched = false;
    for (const auto& sym : symbols) {
      if (starts(sym.text)) {
        out.push_back({sym.kind, std::string(sym.text), start});
        i += sym.text.size();
        matched = true;
        break;
      }
    }
    if (!matched) throw SyntaxError(std::string("unexpected character '") + c + "'", start);
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  Formula parse() {
    Formula f = implication();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

  Term parse_term_only() {
    Term t = term();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return t;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }
  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }
  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what);
    return next();
  }
  [[noreturn]] void fail(const std::string& message) const {
    throw SyntaxError(message, peek().pos);
  }

  Formula implication() {
    Formula left = disjunction();
    if (accept(Tok::Arrow)) return Formula::implication(left, implication());
    return left;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (accept(Tok::Or)) f = Formula::disjunction(f, conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (accept(Tok::And)) f = Formula::conjunction(f, unary());
    return f;
  }

  Formula unary() {
    if (accept(Tok::Not)) return Formula::negation(unary());
    if (peek().kind == Tok::Exists || peek().kind == Tok::Forall) {
      bool is_exists = next().kind == Tok::Exists;
      std::string var = expect(Tok::Var, "variable after quantifier").text;
      expect(Tok::Dot, "'.' after quantified variable");
      Formula body = implication();
      return is_exists ? Formula::exists(var, body) : Formula::forall(var, body);
    }
    if (accept(Tok::LParen)) {
      Formula f = implication();
      expect(Tok::RParen, "')'");
      return f;
    }
    return atom();
  }

  Formula atom() {
    Term lhs = term();
    const Token& op = next();
    switch (op.kind) {
      case Tok::Lt:
        return Formula::less(lhs, term());
      case Tok::Le:
        return Formula::less_eq(lhs, term());
      case Tok::Gt: {
        Term rhs = term();
        return Formula::less(rhs, lhs);
      }
      case Tok::Ge: {
        Term rhs = term();
        return Formula::less_eq(rhs, lhs);
      }
      case Tok::Eq:
        return Formula::eq(lhs, term());
      case Tok::Cong: {
        Term rhs = term();
        expect(Tok::Mod, "'mod'");
        const Token& m = expect(Tok::Int, "integer modulus");
        BigInt modulus(m.text);
        if (modulus <= 0) throw SyntaxError("modulus must be positive", m.pos);
        return Formula::cong(lhs - rhs, 0, modulus);
      }
      default:
        --pos_;
        fail("expected comparison operator");
    }
  }

  Term term() {
    Term t = signed_primary();
    for (;;) {
      if (accept(Tok::Plus)) {
        t += signed_primary();
      } else if (peek().kind == Tok::Minus) {
        ++pos_;
        t += -signed_primary();
      } else {
        return t;
      }
    }
  }

  Term signed_primary() {
    if (accept(Tok::Minus)) return -signed_primary();
    if (peek().kind == Tok::Int) {
      BigInt value(next().text);
      if (accept(Tok::Star)) {
        const Token& v = expect(Tok::Var, "variable after '*'");
        return Term::variable(v.text, value);
      }
      return Term(value);
    }
    if (peek().kind == Tok::Var) return Term::variable(next().text);
    fail("expected term");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
  for (int i = 1;; ++i) {
    std::string candidate = base + "_" + std::to_string(i);
    if (!taken.count(candidate)) return candidate;
  }
}

Formula rename_apart(const Formula& f, std::set<std::string>& in_scope,
                     std::set<std::string>& taken) {
  if (f.is_atom()) return f;
  switch (f.kind()) {
    case FormulaKind::Not:
      return Formula::negation(rename_apart(f.left(), in_scope, taken));
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      std::string var = f.variable();
      Formula body = f.body();
      if (in_scope.count(var)) {
        std::string fresh = fresh_name(var, taken);
        taken.insert(fresh);
        body = body.renamed({{var, fresh}});
        var = fresh;
      }
      in_scope.insert(var);
      body = rename_apart(body, in_scope, taken);
      in_scope.erase(var);
      return f.kind() == FormulaKind::Exists ? Formula::exists(var, body)
                                             : Formula::forall(var, body);
    }
    case FormulaKind::And:
      return Formula::conjunction(rename_apart(f.left(), in_scope, taken),
                                  rename_apart(f.right(), in_scope, taken));
    case FormulaKind::Or:
      return Formula::disjunction(rename_apart(f.left(), in_scope, taken),
                                  rename_apart(f.right(), in_scope, taken));
    default:
      return Formula::implication(rename_apart(f.left(), in_scope, taken),
                                  rename_apart(f.right(), in_scope, taken));
  }
}

}  // namespace

Formula parse_formula(std::string_view text) {
  Formula f = Parser(text).parse();
  std::set<std::string> in_scope = f.free_variables();
  std::set<std::string> taken = f.all_variables();
  return rename_apart(f, in_scope, taken);
}

Term parse_term(std::string_view text) { return Parser(text).parse_term_only(); }

// ---------------------------------------------------------------------------
// Evaluation

bool eval_formula(const Formula& f, const Assignment& assignment) {
  switch (f.kind()) {
    case FormulaKind::Less:
      return f.lhs().evaluate(assignment) < f.rhs().evaluate(assignment);
    case FormulaKind::LessEq:
      return f.lhs().evaluate(assignment) <= f.rhs().evaluate(assignment);
    case FormulaKind::Eq:
      return f.lhs().evaluate(assignment) == f.rhs().evaluate(assignment);
    case FormulaKind::Cong:
      return mod_floor(f.cong_term().evaluate(assignment) - f.residue(), f.modulus()) == 0;
    case FormulaKind::Not:
      return !eval_formula(f.left(), assignment);
    case FormulaKind::And:
      return eval_formula(f.left(), assignment) && eval_formula(f.right(), assignment);
    case FormulaKind::Or:
      return eval_formula(f.left(), assignment) || eval_formula(f.right(), assignment);
    case FormulaKind::Implies:
      return !eval_formula(f.left(), assignment) || eval_formula(f.right(), assignment);
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      for (const auto& name : f.free_variables())
        if (!assignment.count(name))
          throw DomainError("unbound free variable '" + name + "'");
      return qe::decide_sentence(f.instantiate(assignment));
    }
  }
  return false;
}

}  // namespace pa
