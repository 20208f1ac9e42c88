#include "mlwb/translate.hpp"

namespace mlwb {

namespace {

Formula godel_rec(const Formula& f) {
  switch (f.kind()) {
    case Kind::Var:
      return Formula::unary(Kind::Box, f);
    case Kind::Bot:
      return f;
    case Kind::And:
    case Kind::Or:
      return Formula::binary(f.kind(), godel_rec(f.lhs()), godel_rec(f.rhs()));
    case Kind::Imp:
      return Formula::unary(Kind::Box,
                            Formula::binary(Kind::Imp, godel_rec(f.lhs()), godel_rec(f.rhs())));
    case Kind::Neg:
      return Formula::unary(Kind::Box, Formula::unary(Kind::Neg, godel_rec(f.lhs())));
    case Kind::Forall:
      return Formula::unary(Kind::Box, Formula::unary(Kind::Forall, godel_rec(f.lhs())));
    case Kind::Exists:
      return Formula::unary(Kind::Exists, godel_rec(f.lhs()));
    case Kind::Box:
    case Kind::Dia:
      break;
  }
  throw Error("language mismatch: godel translation applied to a modal connective");
}

Formula split_rec(const Formula& f) {
  switch (f.kind()) {
    case Kind::Var:
    case Kind::Bot:
      return f;
    case Kind::Box: {
      Formula s = split_rec(f.lhs());
      return Formula::binary(Kind::And, s, Formula::unary(Kind::Box, s));
    }
    case Kind::Dia: {
      Formula s = split_rec(f.lhs());
      return Formula::binary(Kind::Or, s, Formula::unary(Kind::Dia, s));
    }
    case Kind::Neg:
    case Kind::Forall:
    case Kind::Exists:
      return Formula::unary(f.kind(), split_rec(f.lhs()));
    case Kind::And:
    case Kind::Or:
    case Kind::Imp:
      return Formula::binary(f.kind(), split_rec(f.lhs()), split_rec(f.rhs()));
  }
  throw Error("unreachable");
}

}  // namespace

ModFormula godel(const IntFormula& f) { return ModFormula(godel_rec(f.raw())); }

ModFormula split(const ModFormula& f) { return ModFormula(split_rec(f.raw())); }

ModFormula box_plus(const ModFormula& f) {
  return ModFormula::conj(f, ModFormula::box(f));
}

ModFormula box_forall(const ModFormula& f) {
  return ModFormula::box(ModFormula::forall(f));
}

ModFormula box_forall_plus(const ModFormula& f) {
  ModFormula af = ModFormula::forall(f);
  return ModFormula::conj(af, ModFormula::box(af));
}

NamedFormula named(NamedId id) {
  switch (id) {
    case NamedId::MCas:
      return {id, parse_int("A ((p -> A p) -> A p) -> A p")};
    case NamedId::MBoxCas:
      return {id, parse_mod("[]A ([]([]p -> []A p) -> []A p) -> []A p")};
    case NamedId::Grz:
      return {id, parse_mod("[]([](p -> []p) -> p) -> p")};
    case NamedId::Gl:
      return {id, parse_mod("[]([]p -> p) -> []p")};
    case NamedId::Bridge:
      return {id, parse_mod("[]A p -> A []p")};
    case NamedId::Barcan:
      return {id, parse_mod("A []p -> []A p")};
  }
  throw Error("unknown named formula id");
}

const char* named_name(NamedId id) {
  switch (id) {
    case NamedId::MCas: return "MCas";
    case NamedId::MBoxCas: return "MBoxCas";
    case NamedId::Grz: return "grz";
    case NamedId::Gl: return "gl";
    case NamedId::Bridge: return "bridge";
    case NamedId::Barcan: return "barcan";
  }
  return "?";
}

NamedId named_from_string(std::string_view name) {
  if (name == "MCas" || name == "mcas") return NamedId::MCas;
  if (name == "MBoxCas" || name == "mboxcas") return NamedId::MBoxCas;
  if (name == "grz") return NamedId::Grz;
  if (name == "gl") return NamedId::Gl;
  if (name == "bridge") return NamedId::Bridge;
  if (name == "barcan") return NamedId::Barcan;
  throw Error("unknown named formula '" + std::string(name) +
              "' (expected MCas, MBoxCas, grz, gl, bridge or barcan)");
}

}  // namespace mlwb
