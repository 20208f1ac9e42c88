#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mlwb/formula.hpp"
#include "mlwb/frame.hpp"

namespace mlwb {

enum class Flavor { Intuitionistic, Modal };

const char* flavor_name(Flavor f);
Flavor flavor_from_string(std::string_view name);  // throws Error

// Variable assignment; each variable names a set of worlds. Variables not
// mentioned are interpreted as the empty set.
using Valuation = std::map<std::string, WorldSet>;

// A frame plus a valuation, tagged with the truth flavor. Under the
// intuitionistic flavor every variable must denote an R-upset (checked at
// construction), so that truth is persistent along R.
class Model {
 public:
  Model(AugmentedFrame frame, Valuation valuation, Flavor flavor);

  const AugmentedFrame& frame() const { return frame_; }
  const Valuation& valuation() const { return valuation_; }
  Flavor flavor() const { return flavor_; }

  WorldSet var_set(const std::string& name) const;

 private:
  AugmentedFrame frame_;
  Valuation valuation_;
  Flavor flavor_;
};

// Truth set of f across all worlds, computed bottom-up with one pass per
// distinct subterm (memoized on node identity).
//
// Intuitionistic clauses: -> and ~ quantify over R-successors, A over
// Q = E o R, E over the cluster. Modal clauses are classical with [] over R,
// A over the cluster and <>/E as the duals.
WorldSet truth_set(const Model& m, const Formula& f);

bool eval_int(const Model& m, int world, const IntFormula& f);
bool eval_int(const Model& m, const std::string& world, const IntFormula& f);
bool eval_mod(const Model& m, int world, const ModFormula& f);
bool eval_mod(const Model& m, const std::string& world, const ModFormula& f);

// All R-upsets of the frame, as masks in increasing numeric order.
std::vector<WorldSet> upsets(const AugmentedFrame& f);

// Upset check used by Model; exposed for reuse.
bool is_upset(const AugmentedFrame& f, WorldSet s);

struct Refutation {
  Valuation valuation;
  int world;
};

struct Verdict {
  bool valid = false;
  std::optional<Refutation> refutation;
  std::uint64_t valuations_examined = 0;
};

struct ValidityLimits {
  // Upper bound on valuations tried on one frame.
  std::uint64_t max_valuations = 1u << 20;
};

// Checks f on every valuation of the frame: all upset valuations under the
// intuitionistic flavor, all set valuations under the modal one. Variables
// are assigned in sorted order with the first variable cycling fastest; the
// reported refutation is the first (valuation, world) pair in that order.
// Throws CapExceeded when the valuation count would exceed the limit.
Verdict frame_validity(const AugmentedFrame& frame, const Formula& f, Flavor flavor,
                       const ValidityLimits& limits = {});
Verdict frame_validity(const AugmentedFrame& frame, const IntFormula& f,
                       const ValidityLimits& limits = {});
Verdict frame_validity(const AugmentedFrame& frame, const ModFormula& f,
                       const ValidityLimits& limits = {});

}  // namespace mlwb
