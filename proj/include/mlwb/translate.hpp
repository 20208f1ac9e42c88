#pragma once

#include <string_view>
#include <variant>

#include "mlwb/formula.hpp"

namespace mlwb {

// Goedel translation t from the intuitionistic into the modal language:
//
//   p^t        = []p            false^t    = false
//   (f & g)^t  = f^t & g^t      (f | g)^t  = f^t | g^t
//   (f -> g)^t = [](f^t -> g^t) (~f)^t     = []~f^t
//   (A f)^t    = []A f^t        (E f)^t    = E f^t
//
// The output contains no diamonds and every variable occurrence sits
// directly under a box.
ModFormula godel(const IntFormula& f);

// Splitting translation s: replaces every [] by []+ where []+g = g & []g,
// recursing through all connectives. Diamonds are split dually:
// s(<>g) = s(g) | <>s(g).
ModFormula split(const ModFormula& f);

// Defined operators used throughout: box_plus(f) = f & []f,
// box_forall(f) = []A f, box_forall_plus(f) = A f & []A f.
ModFormula box_plus(const ModFormula& f);
ModFormula box_forall(const ModFormula& f);
ModFormula box_forall_plus(const ModFormula& f);

// Named formulas of interest.
//
//   MCas    A ((p -> A p) -> A p) -> A p            (intuitionistic)
//   MBoxCas []A ([]([]p -> []A p) -> []A p) -> []A p
//   Grz     []([](p -> []p) -> p) -> p
//   Gl      []([]p -> p) -> []p
//   Bridge  []A p -> A []p                           (an axiom here)
//   Barcan  A []p -> []A p                           (the unprovable converse)
enum class NamedId { MCas, MBoxCas, Grz, Gl, Bridge, Barcan };

struct NamedFormula {
  NamedId id;
  std::variant<IntFormula, ModFormula> formula;

  bool is_intuitionistic() const { return std::holds_alternative<IntFormula>(formula); }
  const IntFormula& int_formula() const { return std::get<IntFormula>(formula); }
  const ModFormula& mod_formula() const { return std::get<ModFormula>(formula); }
};

NamedFormula named(NamedId id);
const char* named_name(NamedId id);
NamedId named_from_string(std::string_view name);  // throws Error

}  // namespace mlwb
