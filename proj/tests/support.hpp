#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mlwb/formula.hpp"
#include "mlwb/frame.hpp"

namespace mlwb::test {

// Seeded formula generator for property tests.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  std::uint64_t pick(std::uint64_t n) { return rng() % n; }

  Formula leaf(const std::vector<std::string>& vars) {
    if (pick(6) == 0) return Formula::bot();
    return Formula::var(vars[static_cast<std::size_t>(pick(vars.size()))]);
  }

  Formula int_formula(int depth, const std::vector<std::string>& vars) {
    if (depth == 0 || pick(4) == 0) return leaf(vars);
    switch (pick(6)) {
      case 0: return Formula::binary(Kind::And, int_formula(depth - 1, vars), int_formula(depth - 1, vars));
      case 1: return Formula::binary(Kind::Or, int_formula(depth - 1, vars), int_formula(depth - 1, vars));
      case 2: return Formula::binary(Kind::Imp, int_formula(depth - 1, vars), int_formula(depth - 1, vars));
      case 3: return Formula::unary(Kind::Neg, int_formula(depth - 1, vars));
      case 4: return Formula::unary(Kind::Forall, int_formula(depth - 1, vars));
      default: return Formula::unary(Kind::Exists, int_formula(depth - 1, vars));
    }
  }

  Formula mod_formula(int depth, const std::vector<std::string>& vars) {
    if (depth == 0 || pick(4) == 0) return leaf(vars);
    switch (pick(8)) {
      case 0: return Formula::binary(Kind::And, mod_formula(depth - 1, vars), mod_formula(depth - 1, vars));
      case 1: return Formula::binary(Kind::Or, mod_formula(depth - 1, vars), mod_formula(depth - 1, vars));
      case 2: return Formula::binary(Kind::Imp, mod_formula(depth - 1, vars), mod_formula(depth - 1, vars));
      case 3: return Formula::unary(Kind::Neg, mod_formula(depth - 1, vars));
      case 4: return Formula::unary(Kind::Forall, mod_formula(depth - 1, vars));
      case 5: return Formula::unary(Kind::Exists, mod_formula(depth - 1, vars));
      case 6: return Formula::unary(Kind::Box, mod_formula(depth - 1, vars));
      default: return Formula::unary(Kind::Dia, mod_formula(depth - 1, vars));
    }
  }

  IntFormula int_f(int depth, const std::vector<std::string>& vars) {
    return IntFormula(int_formula(depth, vars));
  }
  ModFormula mod_f(int depth, const std::vector<std::string>& vars) {
    return ModFormula(mod_formula(depth, vars));
  }

  // Convenience: draw over the first `num_vars` names from p, q, r, ...
  IntFormula int_f(int depth, int num_vars) { return int_f(depth, var_names(num_vars)); }
  ModFormula mod_f(int depth, int num_vars) { return mod_f(depth, var_names(num_vars)); }

  static std::vector<std::string> var_names(int n) {
    static const std::vector<std::string> pool = {"p", "q", "r", "s", "u", "v"};
    return {pool.begin(), pool.begin() + n};
  }
};

// The two-point frame with a dirty cluster: x R y inside one cluster,
// R reflexive. Used all over the suite.
inline AugmentedFrame dirty_two_chain() {
  return AugmentedFrame({"x", "y"}, {{"x", "x"}, {"x", "y"}, {"y", "y"}}, {{"x", "y"}});
}

}  // namespace mlwb::test
