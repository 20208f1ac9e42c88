#include "mlwb/semantics.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

namespace mlwb {

const char* flavor_name(Flavor f) {
  return f == Flavor::Intuitionistic ? "int" : "mod";
}

Flavor flavor_from_string(std::string_view name) {
  if (name == "int" || name == "intuitionistic") return Flavor::Intuitionistic;
  if (name == "mod" || name == "modal") return Flavor::Modal;
  throw Error("unknown flavor '" + std::string(name) + "' (expected int or mod)");
}

bool is_upset(const AugmentedFrame& f, WorldSet s) {
  WorldSet rest = s;
  while (rest) {
    const int i = std::countr_zero(rest);
    rest &= rest - 1;
    if (f.r_row(i) & ~s) return false;
  }
  return true;
}

Model::Model(AugmentedFrame frame, Valuation valuation, Flavor flavor)
    : frame_(std::move(frame)), valuation_(std::move(valuation)), flavor_(flavor) {
  const WorldSet universe = frame_.all_worlds();
  for (const auto& [name, set] : valuation_) {
    if (set & ~universe)
      throw Error("valuation of '" + name + "' mentions an unknown world");
    if (flavor_ == Flavor::Intuitionistic && !is_upset(frame_, set))
      throw Error("valuation of '" + name + "' is not an R-upset (required intuitionistically)");
  }
}

WorldSet Model::var_set(const std::string& name) const {
  auto it = valuation_.find(name);
  return it == valuation_.end() ? 0 : it->second;
}

namespace {

// One evaluation pass. Truth sets are memoized per subterm node, so shared
// subtrees (translations produce many) are computed once.
struct Evaluator {
  const Model& m;
  std::unordered_map<const void*, WorldSet> memo;
  std::optional<std::vector<WorldSet>> q;  // lazily built Q rows

  const std::vector<WorldSet>& q_rows() {
    if (!q) q = m.frame().q_rows();
    return *q;
  }

  WorldSet eval(const Formula& f) {
    auto it = memo.find(f.id());
    if (it != memo.end()) return it->second;
    const WorldSet r = compute(f);
    memo.emplace(f.id(), r);
    return r;
  }

  WorldSet compute(const Formula& f) {
    const AugmentedFrame& fr = m.frame();
    const WorldSet universe = fr.all_worlds();
    const bool intuit = m.flavor() == Flavor::Intuitionistic;
    switch (f.kind()) {
      case Kind::Var:
        return m.var_set(f.var_name());
      case Kind::Bot:
        return 0;
      case Kind::And:
        return eval(f.lhs()) & eval(f.rhs());
      case Kind::Or:
        return eval(f.lhs()) | eval(f.rhs());
      case Kind::Imp: {
        const WorldSet a = eval(f.lhs()), b = eval(f.rhs());
        if (!intuit) return (~a & universe) | b;
        // x forces a -> b iff no R-successor forces a but not b.
        WorldSet out = 0;
        for (int x = 0; x < fr.size(); ++x)
          if (!(fr.r_row(x) & a & ~b)) out |= WorldSet{1} << x;
        return out;
      }
      case Kind::Neg: {
        const WorldSet a = eval(f.lhs());
        if (!intuit) return ~a & universe;
        WorldSet out = 0;
        for (int x = 0; x < fr.size(); ++x)
          if (!(fr.r_row(x) & a)) out |= WorldSet{1} << x;
        return out;
      }
      case Kind::Box: {
        const WorldSet a = eval(f.lhs());
        WorldSet out = 0;
        for (int x = 0; x < fr.size(); ++x)
          if (!(fr.r_row(x) & ~a)) out |= WorldSet{1} << x;
        return out;
      }
      case Kind::Dia: {
        const WorldSet a = eval(f.lhs());
        WorldSet out = 0;
        for (int x = 0; x < fr.size(); ++x)
          if (fr.r_row(x) & a) out |= WorldSet{1} << x;
        return out;
      }
      case Kind::Forall: {
        const WorldSet a = eval(f.lhs());
        WorldSet out = 0;
        if (intuit) {
          // Quantification runs along Q = E o R.
          const std::vector<WorldSet>& qr = q_rows();
          for (int x = 0; x < fr.size(); ++x)
            if (!(qr[static_cast<std::size_t>(x)] & ~a)) out |= WorldSet{1} << x;
        } else {
          for (int x = 0; x < fr.size(); ++x)
            if (!(fr.cluster_of(x) & ~a)) out |= WorldSet{1} << x;
        }
        return out;
      }
      case Kind::Exists: {
        const WorldSet a = eval(f.lhs());
        WorldSet out = 0;
        for (int x = 0; x < fr.size(); ++x)
          if (fr.cluster_of(x) & a) out |= WorldSet{1} << x;
        return out;
      }
    }
    throw Error("unreachable");
  }
};

}  // namespace

WorldSet truth_set(const Model& m, const Formula& f) {
  if (m.flavor() == Flavor::Intuitionistic && !in_int_language(f))
    throw Error("language mismatch: modal formula evaluated intuitionistically");
  Evaluator ev{m, {}, {}};
  return ev.eval(f);
}

bool eval_int(const Model& m, int world, const IntFormula& f) {
  if (m.flavor() != Flavor::Intuitionistic)
    throw Error("flavor mismatch: eval_int on a modal model");
  if (world < 0 || world >= m.frame().size()) throw Error("world index out of range");
  return (truth_set(m, f.raw()) >> world) & 1u;
}

bool eval_int(const Model& m, const std::string& world, const IntFormula& f) {
  return eval_int(m, m.frame().index_of(world), f);
}

bool eval_mod(const Model& m, int world, const ModFormula& f) {
  if (m.flavor() != Flavor::Modal)
    throw Error("flavor mismatch: eval_mod on an intuitionistic model");
  if (world < 0 || world >= m.frame().size()) throw Error("world index out of range");
  return (truth_set(m, f.raw()) >> world) & 1u;
}

bool eval_mod(const Model& m, const std::string& world, const ModFormula& f) {
  return eval_mod(m, m.frame().index_of(world), f);
}

std::vector<WorldSet> upsets(const AugmentedFrame& f) {
  std::vector<WorldSet> out;
  const WorldSet universe = f.all_worlds();
  for (WorldSet s = 0;; ++s) {
    if (is_upset(f, s)) out.push_back(s);
    if (s == universe) break;
  }
  return out;
}

Verdict frame_validity(const AugmentedFrame& frame, const Formula& f, Flavor flavor,
                       const ValidityLimits& limits) {
  const std::vector<std::string> vars = f.variables();
  std::vector<WorldSet> sets;
  if (flavor == Flavor::Intuitionistic) {
    if (!in_int_language(f))
      throw Error("language mismatch: modal formula evaluated intuitionistically");
    sets = upsets(frame);
  } else {
    const WorldSet universe = frame.all_worlds();
    for (WorldSet s = 0;; ++s) {
      sets.push_back(s);
      if (s == universe) break;
    }
  }

  bool clipped = false;
  const std::uint64_t total = sat_pow(sets.size(), vars.size(), &clipped);
  if (clipped || total > limits.max_valuations)
    throw CapExceeded("frame_validity: " +
                      (clipped ? std::string("astronomically many") : std::to_string(total)) +
                      " valuations exceed the limit of " + std::to_string(limits.max_valuations));

  Verdict verdict;
  // Mixed-radix sweep; vars[0] cycles fastest.
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Valuation val;
    std::uint64_t rest = idx;
    for (const std::string& v : vars) {
      val[v] = sets[rest % sets.size()];
      rest /= sets.size();
    }
    Model m(frame, val, flavor);
    ++verdict.valuations_examined;
    const WorldSet truth = truth_set(m, f);
    const WorldSet failing = ~truth & frame.all_worlds();
    if (failing) {
      verdict.valid = false;
      verdict.refutation = Refutation{std::move(val), std::countr_zero(failing)};
      return verdict;
    }
  }
  verdict.valid = true;
  return verdict;
}

Verdict frame_validity(const AugmentedFrame& frame, const IntFormula& f,
                       const ValidityLimits& limits) {
  return frame_validity(frame, f.raw(), Flavor::Intuitionistic, limits);
}

Verdict frame_validity(const AugmentedFrame& frame, const ModFormula& f,
                       const ValidityLimits& limits) {
  return frame_validity(frame, f.raw(), Flavor::Modal, limits);
}

}  // namespace mlwb
