#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "mlwb/error.hpp"

namespace mlwb {

// Connectives of the two object languages.
//
// Intuitionistic language: Var Bot Neg And Or Imp Forall Exists
// Modal language:          Var Bot Neg And Or Imp Box Dia Forall Exists
enum class Kind : std::uint8_t {
  Var,
  Bot,
  Neg,
  And,
  Or,
  Imp,
  Box,
  Dia,
  Forall,
  Exists,
};

int arity(Kind k);
const char* kind_name(Kind k);

// Immutable formula tree shared by both languages. Cheap to copy (shared
// nodes). Structural equality; `str()` prints the canonical ASCII form with
// minimal parentheses, and parsing that form yields the same tree back.
class Formula {
 public:
  static Formula var(std::string name);
  static Formula bot();
  static Formula unary(Kind k, Formula f);
  static Formula binary(Kind k, Formula l, Formula r);

  Kind kind() const;
  const std::string& var_name() const;  // Kind::Var only
  const Formula& child(int i) const;
  const Formula& lhs() const { return child(0); }
  const Formula& rhs() const { return child(1); }

  int node_count() const;

  bool operator==(const Formula& o) const;
  bool operator!=(const Formula& o) const { return !(*this == o); }

  // Canonical ASCII rendering. Prefix operators ~ [] <> A E bind tightest,
  // then &, then |, then -> (right associative). Parentheses only where the
  // default grouping would differ.
  std::string str() const;

  // Stable pointer identity of the root node; used as a memoization key.
  const void* id() const { return node_.get(); }

  // All syntactically distinct subformulas including the formula itself, in
  // order of first occurrence of a post-order traversal.
  std::vector<Formula> subformulas() const;

  // Distinct variable names, sorted.
  std::vector<std::string> variables() const;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

bool in_int_language(const Formula& f);  // no Box/Dia anywhere
bool in_mod_language(const Formula& f);  // everything goes

// Strongly typed wrappers. Construction from a raw Formula checks the
// connective set, so a ModFormula can never leak into intuitionistic code.
class IntFormula {
 public:
  explicit IntFormula(Formula f);

  static IntFormula var(std::string name) { return wrap(Formula::var(std::move(name))); }
  static IntFormula bot() { return wrap(Formula::bot()); }
  static IntFormula neg(const IntFormula& f) { return wrap(Formula::unary(Kind::Neg, f.f_)); }
  static IntFormula conj(const IntFormula& l, const IntFormula& r) { return wrap(Formula::binary(Kind::And, l.f_, r.f_)); }
  static IntFormula disj(const IntFormula& l, const IntFormula& r) { return wrap(Formula::binary(Kind::Or, l.f_, r.f_)); }
  static IntFormula imp(const IntFormula& l, const IntFormula& r) { return wrap(Formula::binary(Kind::Imp, l.f_, r.f_)); }
  static IntFormula forall(const IntFormula& f) { return wrap(Formula::unary(Kind::Forall, f.f_)); }
  static IntFormula exists(const IntFormula& f) { return wrap(Formula::unary(Kind::Exists, f.f_)); }

  const Formula& raw() const { return f_; }
  Kind kind() const { return f_.kind(); }
  std::string str() const { return f_.str(); }
  std::vector<IntFormula> subformulas() const;

  bool operator==(const IntFormula& o) const { return f_ == o.f_; }
  bool operator!=(const IntFormula& o) const { return !(*this == o); }

 private:
  // Trusted fast path: skips the language re-check.
  static IntFormula wrap(Formula f) { return IntFormula(std::move(f), 0); }
  IntFormula(Formula f, int) : f_(std::move(f)) {}
  Formula f_;
};

class ModFormula {
 public:
  explicit ModFormula(Formula f);

  static ModFormula var(std::string name) { return wrap(Formula::var(std::move(name))); }
  static ModFormula bot() { return wrap(Formula::bot()); }
  static ModFormula neg(const ModFormula& f) { return wrap(Formula::unary(Kind::Neg, f.f_)); }
  static ModFormula conj(const ModFormula& l, const ModFormula& r) { return wrap(Formula::binary(Kind::And, l.f_, r.f_)); }
  static ModFormula disj(const ModFormula& l, const ModFormula& r) { return wrap(Formula::binary(Kind::Or, l.f_, r.f_)); }
  static ModFormula imp(const ModFormula& l, const ModFormula& r) { return wrap(Formula::binary(Kind::Imp, l.f_, r.f_)); }
  static ModFormula box(const ModFormula& f) { return wrap(Formula::unary(Kind::Box, f.f_)); }
  static ModFormula dia(const ModFormula& f) { return wrap(Formula::unary(Kind::Dia, f.f_)); }
  static ModFormula forall(const ModFormula& f) { return wrap(Formula::unary(Kind::Forall, f.f_)); }
  static ModFormula exists(const ModFormula& f) { return wrap(Formula::unary(Kind::Exists, f.f_)); }

  const Formula& raw() const { return f_; }
  Kind kind() const { return f_.kind(); }
  std::string str() const { return f_.str(); }
  std::vector<ModFormula> subformulas() const;

  bool operator==(const ModFormula& o) const { return f_ == o.f_; }
  bool operator!=(const ModFormula& o) const { return !(*this == o); }

 private:
  static ModFormula wrap(Formula f) { return ModFormula(std::move(f), 0); }
  ModFormula(Formula f, int) : f_(std::move(f)) {}
  Formula f_;
};

// Concrete ASCII grammar, shared by both parsers:
//
//   formula := disj ('->' formula)?          right associative
//   disj    := conj ('|' conj)*
//   conj    := unary ('&' unary)*
//   unary   := ('~' | '[]' | '<>' | 'A' | 'E') unary | primary
//   primary := IDENT | 'false' | 'true' | '(' formula ')'
//
// IDENT = [a-z][a-zA-Z0-9_]*, keywords excluded. 'true' is sugar:
// Imp(Bot, Bot) intuitionistically, Neg(Bot) modally. parse_int rejects
// '[]' and '<>' with a ParseError.
IntFormula parse_int(std::string_view text);
ModFormula parse_mod(std::string_view text);

// The six supported logics.
enum class LogicId { MIPC, MS4, MGrz, MGL, MPlusIPC, MPlusGrz };

bool logic_is_intuitionistic(LogicId id);  // MIPC and M+IPC
const char* logic_name(LogicId id);
LogicId logic_from_string(std::string_view name);  // throws Error

// Counting data used to derive finite-model search caps.
//
// m1/m2/m3 count distinct Exists/Forall/Imp subformulas, n = |Sub(f)|,
// m counts distinct Box subformulas.
//
// Intuitionistic logics bound countermodels by
//   cluster_cap = 1 + m1 + m2
//   branch_cap  = (1 + m1 + m2) * m3 + m2
//   depth_cap   = (1 + m1 + m2) * (m2 + m3)
// and the modal logics by
//   cluster_cap = 2^n,  branch_cap = 2^n * m,  depth_cap = 2^n * m + 1.
//
// Cap arithmetic saturates at 2^64-1; `saturated` reports clipping.
struct BoundProfile {
  int m1 = 0;
  int m2 = 0;
  int m3 = 0;
  int n = 0;
  int m = 0;
  std::uint64_t cluster_cap = 0;
  std::uint64_t branch_cap = 0;
  std::uint64_t depth_cap = 0;
  bool saturated = false;
};

BoundProfile bound_profile(const IntFormula& f, LogicId logic);
BoundProfile bound_profile(const ModFormula& f, LogicId logic);

// Saturating helpers used by the cap computations (shared with search).
std::uint64_t sat_add(std::uint64_t a, std::uint64_t b, bool* clipped);
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b, bool* clipped);
std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp, bool* clipped);

}  // namespace mlwb
