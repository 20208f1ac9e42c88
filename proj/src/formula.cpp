#include "mlwb/formula.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <set>
#include <utility>

namespace mlwb {

struct Formula::Node {
  Kind kind;
  std::string name;            // Var only
  std::vector<Formula> kids;   // size == arity(kind)
};

int arity(Kind k) {
  switch (k) {
    case Kind::Var:
    case Kind::Bot:
      return 0;
    case Kind::Neg:
    case Kind::Box:
    case Kind::Dia:
    case Kind::Forall:
    case Kind::Exists:
      return 1;
    case Kind::And:
    case Kind::Or:
    case Kind::Imp:
      return 2;
  }
  return 0;
}

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Var: return "Var";
    case Kind::Bot: return "Bot";
    case Kind::Neg: return "Neg";
    case Kind::And: return "And";
    case Kind::Or: return "Or";
    case Kind::Imp: return "Imp";
    case Kind::Box: return "Box";
    case Kind::Dia: return "Dia";
    case Kind::Forall: return "Forall";
    case Kind::Exists: return "Exists";
  }
  return "?";
}

Formula Formula::var(std::string name) {
  if (name.empty()) throw Error("variable name must not be empty");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->name = std::move(name);
  return Formula(std::move(n));
}

Formula Formula::bot() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Bot;
  return Formula(std::move(n));
}

Formula Formula::unary(Kind k, Formula f) {
  if (arity(k) != 1) throw Error(std::string("not a unary connective: ") + kind_name(k));
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->kids.push_back(std::move(f));
  return Formula(std::move(n));
}

Formula Formula::binary(Kind k, Formula l, Formula r) {
  if (arity(k) != 2) throw Error(std::string("not a binary connective: ") + kind_name(k));
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->kids.push_back(std::move(l));
  n->kids.push_back(std::move(r));
  return Formula(std::move(n));
}

Kind Formula::kind() const { return node_->kind; }

const std::string& Formula::var_name() const {
  if (kind() != Kind::Var) throw Error("var_name() on a non-variable");
  return node_->name;
}

const Formula& Formula::child(int i) const {
  if (i < 0 || i >= static_cast<int>(node_->kids.size()))
    throw Error("child index out of range");
  return node_->kids[i];
}

int Formula::node_count() const {
  int n = 1;
  for (const Formula& k : node_->kids) n += k.node_count();
  return n;
}

bool Formula::operator==(const Formula& o) const {
  if (node_ == o.node_) return true;
  if (node_->kind != o.node_->kind) return false;
  if (node_->kind == Kind::Var) return node_->name == o.node_->name;
  for (std::size_t i = 0; i < node_->kids.size(); ++i)
    if (node_->kids[i] != o.node_->kids[i]) return false;
  return true;
}

namespace {

// Binding strength used for minimal-parenthesis printing.
// Imp < Or < And < prefix/atom.
int level(Kind k) {
  switch (k) {
    case Kind::Imp: return 1;
    case Kind::Or: return 2;
    case Kind::And: return 3;
    default: return 4;
  }
}

void print_rec(const Formula& f, int min_level, std::string& out) {
  const int lv = level(f.kind());
  const bool parens = lv < min_level;
  if (parens) out += '(';
  switch (f.kind()) {
    case Kind::Var:
      out += f.var_name();
      break;
    case Kind::Bot:
      out += "false";
      break;
    case Kind::Neg:
      out += '~';
      print_rec(f.lhs(), 4, out);
      break;
    case Kind::Box:
      out += "[]";
      print_rec(f.lhs(), 4, out);
      break;
    case Kind::Dia:
      out += "<>";
      print_rec(f.lhs(), 4, out);
      break;
    case Kind::Forall:
      out += "A ";
      print_rec(f.lhs(), 4, out);
      break;
    case Kind::Exists:
      out += "E ";
      print_rec(f.lhs(), 4, out);
      break;
    case Kind::And:
      print_rec(f.lhs(), 3, out);
      out += " & ";
      print_rec(f.rhs(), 4, out);
      break;
    case Kind::Or:
      print_rec(f.lhs(), 2, out);
      out += " | ";
      print_rec(f.rhs(), 3, out);
      break;
    case Kind::Imp:
      print_rec(f.lhs(), 2, out);
      out += " -> ";
      print_rec(f.rhs(), 1, out);
      break;
  }
  if (parens) out += ')';
}

void collect_post_order(const Formula& f, std::vector<Formula>& out,
                        std::set<std::string>& seen) {
  const int n = arity(f.kind());
  for (int i = 0; i < n; ++i) collect_post_order(f.child(i), out, seen);
  std::string key = f.str();
  if (seen.insert(std::move(key)).second) out.push_back(f);
}

}  // namespace

std::string Formula::str() const {
  std::string out;
  print_rec(*this, 1, out);
  return out;
}

std::vector<Formula> Formula::subformulas() const {
  std::vector<Formula> out;
  std::set<std::string> seen;
  collect_post_order(*this, out, seen);
  return out;
}

std::vector<std::string> Formula::variables() const {
  std::set<std::string> names;
  std::vector<Formula> stack{*this};
  while (!stack.empty()) {
    Formula f = stack.back();
    stack.pop_back();
    if (f.kind() == Kind::Var) names.insert(f.var_name());
    for (int i = 0; i < arity(f.kind()); ++i) stack.push_back(f.child(i));
  }
  return std::vector<std::string>(names.begin(), names.end());
}

bool in_int_language(const Formula& f) {
  if (f.kind() == Kind::Box || f.kind() == Kind::Dia) return false;
  for (int i = 0; i < arity(f.kind()); ++i)
    if (!in_int_language(f.child(i))) return false;
  return true;
}

bool in_mod_language(const Formula&) { return true; }

IntFormula::IntFormula(Formula f) : f_(std::move(f)) {
  if (!in_int_language(f_))
    throw Error("language mismatch: modal connective in an intuitionistic formula");
}

ModFormula::ModFormula(Formula f) : f_(std::move(f)) {}

std::vector<IntFormula> IntFormula::subformulas() const {
  std::vector<IntFormula> out;
  for (Formula& g : f_.subformulas()) out.push_back(wrap(std::move(g)));
  return out;
}

std::vector<ModFormula> ModFormula::subformulas() const {
  std::vector<ModFormula> out;
  for (Formula& g : f_.subformulas()) out.push_back(wrap(std::move(g)));
  return out;
}

// ---------------------------------------------------------------------------
// Lexer / parser

namespace {

enum class Tok {
  Ident,
  False,
  True,
  Tilde,
  Box,
  Dia,
  Forall,
  Exists,
  Amp,
  Pipe,
  Arrow,
  LParen,
  RParen,
  End,
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::False: return "'false'";
    case Tok::True: return "'true'";
    case Tok::Tilde: return "'~'";
    case Tok::Box: return "'[]'";
    case Tok::Dia: return "'<>'";
    case Tok::Forall: return "'A'";
    case Tok::Exists: return "'E'";
    case Tok::Amp: return "'&'";
    case Tok::Pipe: return "'|'";
    case Tok::Arrow: return "'->'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok type;
  std::size_t pos;
  std::string text;  // Ident only
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    const std::size_t pos = i;
    if (c == '~') { out.push_back({Tok::Tilde, pos, {}}); ++i; continue; }
    if (c == '&') { out.push_back({Tok::Amp, pos, {}}); ++i; continue; }
    if (c == '|') { out.push_back({Tok::Pipe, pos, {}}); ++i; continue; }
    if (c == '(') { out.push_back({Tok::LParen, pos, {}}); ++i; continue; }
    if (c == ')') { out.push_back({Tok::RParen, pos, {}}); ++i; continue; }
    if (c == '[') {
      if (i + 1 < s.size() && s[i + 1] == ']') { out.push_back({Tok::Box, pos, {}}); i += 2; continue; }
      throw ParseError(pos, "expected ']' after '['");
    }
    if (c == '<') {
      if (i + 1 < s.size() && s[i + 1] == '>') { out.push_back({Tok::Dia, pos, {}}); i += 2; continue; }
      throw ParseError(pos, "expected '>' after '<'");
    }
    if (c == '-') {
      if (i + 1 < s.size() && s[i + 1] == '>') { out.push_back({Tok::Arrow, pos, {}}); i += 2; continue; }
      throw ParseError(pos, "expected '>' after '-'");
    }
    if (c == 'A') { out.push_back({Tok::Forall, pos, {}}); ++i; continue; }
    if (c == 'E') { out.push_back({Tok::Exists, pos, {}}); ++i; continue; }
    if (c >= 'a' && c <= 'z') {
      std::size_t j = i + 1;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      std::string word(s.substr(i, j - i));
      if (word == "false") out.push_back({Tok::False, pos, {}});
      else if (word == "true") out.push_back({Tok::True, pos, {}});
      else out.push_back({Tok::Ident, pos, std::move(word)});
      i = j;
      continue;
    }
    throw ParseError(pos, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, s.size(), {}});
  return out;
}

// Recursive-descent parser over the token stream. `modal` selects whether
// '[]' / '<>' are accepted and which desugaring 'true' gets.
class Parser {
 public:
  Parser(std::vector<Token> toks, bool modal) : toks_(std::move(toks)), modal_(modal) {}

  Formula run() {
    Formula f = imp();
    expect(Tok::End);
    return f;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  Token take() { return toks_[i_++]; }

  void expect(Tok t) {
    if (peek().type != t)
      throw ParseError(peek().pos, std::string("expected ") + tok_name(t) + ", found " + tok_name(peek().type));
    ++i_;
  }

  Formula imp() {
    Formula l = disj();
    if (peek().type == Tok::Arrow) {
      take();
      return Formula::binary(Kind::Imp, std::move(l), imp());
    }
    return l;
  }

  Formula disj() {
    Formula f = conj();
    while (peek().type == Tok::Pipe) {
      take();
      f = Formula::binary(Kind::Or, std::move(f), conj());
    }
    return f;
  }

  Formula conj() {
    Formula f = unary();
    while (peek().type == Tok::Amp) {
      take();
      f = Formula::binary(Kind::And, std::move(f), unary());
    }
    return f;
  }

  Formula unary() {
    const Token& t = peek();
    switch (t.type) {
      case Tok::Tilde:
        take();
        return Formula::unary(Kind::Neg, unary());
      case Tok::Box:
        if (!modal_) throw ParseError(t.pos, "'[]' is not part of the intuitionistic language");
        take();
        return Formula::unary(Kind::Box, unary());
      case Tok::Dia:
        if (!modal_) throw ParseError(t.pos, "'<>' is not part of the intuitionistic language");
        take();
        return Formula::unary(Kind::Dia, unary());
      case Tok::Forall:
        take();
        return Formula::unary(Kind::Forall, unary());
      case Tok::Exists:
        take();
        return Formula::unary(Kind::Exists, unary());
      default:
        return primary();
    }
  }

  Formula primary() {
    Token t = take();
    switch (t.type) {
      case Tok::Ident:
        return Formula::var(std::move(t.text));
      case Tok::False:
        return Formula::bot();
      case Tok::True:
        // No primitive top: desugar per language.
        return modal_ ? Formula::unary(Kind::Neg, Formula::bot())
                      : Formula::binary(Kind::Imp, Formula::bot(), Formula::bot());
      case Tok::LParen: {
        Formula f = imp();
        expect(Tok::RParen);
        return f;
      }
      default:
        throw ParseError(t.pos, std::string("expected a formula, found ") + tok_name(t.type));
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  bool modal_;
};

}  // namespace

IntFormula parse_int(std::string_view text) {
  return IntFormula(Parser(lex(text), /*modal=*/false).run());
}

ModFormula parse_mod(std::string_view text) {
  return ModFormula(Parser(lex(text), /*modal=*/true).run());
}

// ---------------------------------------------------------------------------
// Logics and bound profiles

bool logic_is_intuitionistic(LogicId id) {
  return id == LogicId::MIPC || id == LogicId::MPlusIPC;
}

const char* logic_name(LogicId id) {
  switch (id) {
    case LogicId::MIPC: return "mipc";
    case LogicId::MS4: return "ms4";
    case LogicId::MGrz: return "mgrz";
    case LogicId::MGL: return "mgl";
    case LogicId::MPlusIPC: return "m+ipc";
    case LogicId::MPlusGrz: return "m+grz";
  }
  return "?";
}

LogicId logic_from_string(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "mipc") return LogicId::MIPC;
  if (s == "ms4") return LogicId::MS4;
  if (s == "mgrz") return LogicId::MGrz;
  if (s == "mgl") return LogicId::MGL;
  if (s == "m+ipc" || s == "mplusipc") return LogicId::MPlusIPC;
  if (s == "m+grz" || s == "mplusgrz") return LogicId::MPlusGrz;
  throw Error("unknown logic '" + std::string(name) +
              "' (expected mipc, ms4, mgrz, mgl, m+ipc or m+grz)");
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b, bool* clipped) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  if (a > kMax - b) {
    if (clipped) *clipped = true;
    return kMax;
  }
  return a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b, bool* clipped) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  if (a != 0 && b > kMax / a) {
    if (clipped) *clipped = true;
    return kMax;
  }
  return a * b;
}

std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp, bool* clipped) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) r = sat_mul(r, base, clipped);
  return r;
}

namespace {

BoundProfile profile_of(const Formula& f, LogicId logic) {
  BoundProfile p;
  for (const Formula& g : f.subformulas()) {
    ++p.n;
    switch (g.kind()) {
      case Kind::Exists: ++p.m1; break;
      case Kind::Forall: ++p.m2; break;
      case Kind::Imp: ++p.m3; break;
      case Kind::Box: ++p.m; break;
      default: break;
    }
  }
  bool clip = false;
  if (logic_is_intuitionistic(logic)) {
    const std::uint64_t k = 1 + static_cast<std::uint64_t>(p.m1) + p.m2;
    p.cluster_cap = k;
    p.branch_cap = sat_add(sat_mul(k, p.m3, &clip), p.m2, &clip);
    p.depth_cap = sat_mul(k, static_cast<std::uint64_t>(p.m2) + p.m3, &clip);
  } else {
    const std::uint64_t two_n = sat_pow(2, p.n, &clip);
    p.cluster_cap = two_n;
    p.branch_cap = sat_mul(two_n, p.m, &clip);
    p.depth_cap = sat_add(p.branch_cap, 1, &clip);
  }
  p.saturated = clip;
  return p;
}

}  // namespace

BoundProfile bound_profile(const IntFormula& f, LogicId logic) {
  if (!logic_is_intuitionistic(logic))
    throw Error(std::string("language mismatch: intuitionistic formula with modal logic ") + logic_name(logic));
  return profile_of(f.raw(), logic);
}

BoundProfile bound_profile(const ModFormula& f, LogicId logic) {
  if (logic_is_intuitionistic(logic))
    throw Error(std::string("language mismatch: modal formula with intuitionistic logic ") + logic_name(logic));
  return profile_of(f.raw(), logic);
}

}  // namespace mlwb
