// Python bindings for the workbench core. The shapes are pythonic: frames
// travel as a Frame class, valuations as {var: [world, ...]} dicts, report
// structs as plain dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mlwb/formula.hpp"
#include "mlwb/frame.hpp"
#include "mlwb/search.hpp"
#include "mlwb/semantics.hpp"
#include "mlwb/translate.hpp"

namespace py = pybind11;
using namespace mlwb;

namespace {

using PyValuation = std::map<std::string, std::vector<std::string>>;

Valuation to_valuation(const AugmentedFrame& f, const PyValuation& v) {
  Valuation out;
  for (const auto& [name, worlds] : v) {
    WorldSet set = 0;
    for (const std::string& w : worlds) set |= WorldSet{1} << f.index_of(w);
    out[name] = set;
  }
  return out;
}

std::vector<std::string> to_names(const AugmentedFrame& f, WorldSet set) {
  std::vector<std::string> out;
  for (int i = 0; i < f.size(); ++i)
    if ((set >> i) & 1u) out.push_back(f.world_name(i));
  return out;
}

PyValuation to_py_valuation(const AugmentedFrame& f, const Valuation& v) {
  PyValuation out;
  for (const auto& [name, set] : v) out[name] = to_names(f, set);
  return out;
}

py::dict classify_dict(const AugmentedFrame& f) {
  const FrameClassReport r = classify(f);
  py::dict d;
  d["commutative"] = r.commutative;
  d["r_preorder"] = r.r_preorder;
  d["r_partial_order"] = r.r_partial_order;
  d["r_strict_partial_order"] = r.r_strict_partial_order;
  d["clean_clusters"] = r.clean_clusters;
  d["augmented"] = r.augmented;
  d["mipc"] = r.mipc;
  d["ms4"] = r.ms4;
  d["mgrz"] = r.mgrz_finite;
  d["mgl"] = r.mgl_finite;
  d["m+ipc"] = r.m_plus_ipc;
  d["m+grz"] = r.m_plus_grz;
  return d;
}

py::dict countermodel_dict(const CounterModel& cm) {
  py::dict d;
  d["frame"] = cm.frame;
  d["valuation"] = to_py_valuation(cm.frame, cm.valuation);
  d["world"] = cm.frame.world_name(cm.world);
  return d;
}

py::dict stats_dict(const SearchStats& s) {
  py::dict d;
  d["frames_examined"] = s.frames_examined;
  d["valuations_examined"] = s.valuations_examined;
  d["last_completed_size"] = s.last_completed_size;
  d["elapsed_ms"] = s.elapsed_ms;
  return d;
}

py::dict derivation_dict(const CapDerivation& c) {
  py::dict d;
  d["cluster_cap"] = c.profile.cluster_cap;
  d["branch_cap"] = c.profile.branch_cap;
  d["depth_cap"] = c.profile.depth_cap;
  d["num_clusters_cap"] = c.num_clusters_cap;
  d["world_cap"] = c.world_cap;
  d["saturated"] = c.saturated;
  return d;
}

SearchOptions options(int threads, bool dedup) {
  SearchOptions o;
  o.threads = threads;
  o.dedup = dedup;
  return o;
}

template <typename F>
py::object search_py(const F& f, const std::string& logic, int max_worlds, int threads,
                     bool dedup) {
  SearchStats stats;
  const auto cm =
      search_countermodel(f, logic_from_string(logic), max_worlds, options(threads, dedup), &stats);
  if (!cm) return py::none();
  py::dict d = countermodel_dict(*cm);
  d["stats"] = stats_dict(stats);
  return d;
}

template <typename F>
py::dict decide_py(const F& f, const std::string& logic, std::optional<std::uint64_t> cap,
                   int threads) {
  const DecideVerdict v = decide(f, logic_from_string(logic), cap, options(threads, false));
  py::dict d;
  d["outcome"] = outcome_name(v.outcome);
  d["cap_reached"] = v.cap_reached;
  d["semi_decision"] = v.semi_decision;
  if (v.derivation) d["bound"] = derivation_dict(*v.derivation);
  if (v.witness) d["countermodel"] = countermodel_dict(*v.witness);
  if (!v.note.empty()) d["note"] = v.note;
  d["stats"] = stats_dict(v.stats);
  return d;
}

template <typename F>
py::dict validity_py(const AugmentedFrame& frame, const F& f, Flavor flavor) {
  const Verdict v = frame_validity(frame, f.raw(), flavor);
  py::dict d;
  d["valid"] = v.valid;
  d["valuations_examined"] = v.valuations_examined;
  if (v.refutation) {
    d["valuation"] = to_py_valuation(frame, v.refutation->valuation);
    d["world"] = frame.world_name(v.refutation->world);
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_mlwb, m) {
  m.doc() = "workbench for monadic intuitionistic and modal logics";

  py::register_exception<Error>(m, "WorkbenchError", PyExc_ValueError);
  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);

  py::class_<IntFormula>(m, "IntFormula")
      .def("__str__", &IntFormula::str)
      .def("__repr__", [](const IntFormula& f) { return "IntFormula('" + f.str() + "')"; })
      .def("__eq__", [](const IntFormula& a, const IntFormula& b) { return a == b; })
      .def("__hash__", [](const IntFormula& f) { return py::hash(py::str(f.str())); })
      .def("variables", [](const IntFormula& f) { return f.raw().variables(); });

  py::class_<ModFormula>(m, "ModFormula")
      .def("__str__", &ModFormula::str)
      .def("__repr__", [](const ModFormula& f) { return "ModFormula('" + f.str() + "')"; })
      .def("__eq__", [](const ModFormula& a, const ModFormula& b) { return a == b; })
      .def("__hash__", [](const ModFormula& f) { return py::hash(py::str(f.str())); })
      .def("variables", [](const ModFormula& f) { return f.raw().variables(); });

  py::class_<AugmentedFrame>(m, "Frame")
      .def(py::init<std::vector<std::string>, std::vector<std::pair<std::string, std::string>>,
                    std::vector<std::vector<std::string>>>(),
           py::arg("worlds"), py::arg("r"), py::arg("e"))
      .def_static("from_json", [](const std::string& text) { return AugmentedFrame::from_json(text); },
                  py::arg("text"))
      .def("to_json", &AugmentedFrame::to_json)
      .def("to_dot", &AugmentedFrame::to_dot)
      .def_property_readonly("worlds",
                             [](const AugmentedFrame& f) {
                               std::vector<std::string> out;
                               for (int i = 0; i < f.size(); ++i) out.push_back(f.world_name(i));
                               return out;
                             })
      .def("__len__", &AugmentedFrame::size)
      .def("__eq__", [](const AugmentedFrame& a, const AugmentedFrame& b) { return a == b; })
      .def("__repr__",
           [](const AugmentedFrame& f) { return "Frame.from_json('" + f.to_json() + "')"; })
      .def("classify", &classify_dict)
      .def("clean_clusters",
           [](const AugmentedFrame& f) {
             const CleanReport r = clean_clusters(f);
             py::dict d;
             d["all_clean"] = r.all_clean;
             py::list blocks;
             for (WorldSet b : r.dirty_blocks) blocks.append(to_names(f, b));
             d["dirty_blocks"] = blocks;
             return d;
           })
      .def("skeleton",
           [](const AugmentedFrame& f) {
             const Skeleton sk = skeleton(f);
             return py::make_tuple(sk.frame, sk.class_of);
           })
      .def("irreflexive_reduction", [](const AugmentedFrame& f) { return irreflexive_reduction(f); })
      .def("reflexive_closure", [](const AugmentedFrame& f) { return reflexive_closure(f); })
      .def("canonical_key", &AugmentedFrame::canonical_key)
      .def("upsets", [](const AugmentedFrame& f) {
        py::list out;
        for (WorldSet u : upsets(f)) out.append(to_names(f, u));
        return out;
      });

  m.def("parse_int", [](const std::string& s) { return parse_int(s); }, py::arg("text"),
        "Parse a formula of the intuitionistic monadic language.");
  m.def("parse_mod", [](const std::string& s) { return parse_mod(s); }, py::arg("text"),
        "Parse a formula of the bimodal language.");

  m.def("godel", [](const IntFormula& f) { return godel(f); }, py::arg("formula"));
  m.def("split", [](const ModFormula& f) { return split(f); }, py::arg("formula"));
  m.def("godel_split", [](const IntFormula& f) { return split(godel(f)); }, py::arg("formula"));

  m.def("named_formula",
        [](const std::string& name) -> py::object {
          const NamedFormula nf = named(named_from_string(name));
          if (nf.is_intuitionistic()) return py::cast(nf.int_formula());
          return py::cast(nf.mod_formula());
        },
        py::arg("name"),
        "Look up a named axiom: mcas, mboxcas, grz, gl, bridge or barcan.");

  m.def("holds",
        [](const AugmentedFrame& f, const IntFormula& phi, const PyValuation& v,
           const std::string& world) {
          return eval_int(Model(f, to_valuation(f, v), Flavor::Intuitionistic), world, phi);
        },
        py::arg("frame"), py::arg("formula"), py::arg("valuation"), py::arg("world"));
  m.def("holds",
        [](const AugmentedFrame& f, const ModFormula& phi, const PyValuation& v,
           const std::string& world) {
          return eval_mod(Model(f, to_valuation(f, v), Flavor::Modal), world, phi);
        },
        py::arg("frame"), py::arg("formula"), py::arg("valuation"), py::arg("world"));

  m.def("truth",
        [](const AugmentedFrame& f, const IntFormula& phi, const PyValuation& v) {
          return to_names(
              f, truth_set(Model(f, to_valuation(f, v), Flavor::Intuitionistic), phi.raw()));
        },
        py::arg("frame"), py::arg("formula"), py::arg("valuation"),
        "Worlds where the formula holds under the valuation.");
  m.def("truth",
        [](const AugmentedFrame& f, const ModFormula& phi, const PyValuation& v) {
          return to_names(f, truth_set(Model(f, to_valuation(f, v), Flavor::Modal), phi.raw()));
        },
        py::arg("frame"), py::arg("formula"), py::arg("valuation"));

  m.def("validity",
        [](const AugmentedFrame& f, const IntFormula& phi) {
          return validity_py(f, phi, Flavor::Intuitionistic);
        },
        py::arg("frame"), py::arg("formula"),
        "Sweep every valuation on the frame; report the first refutation.");
  m.def("validity",
        [](const AugmentedFrame& f, const ModFormula& phi) {
          return validity_py(f, phi, Flavor::Modal);
        },
        py::arg("frame"), py::arg("formula"));

  m.def("search_countermodel", &search_py<IntFormula>, py::arg("formula"), py::arg("logic"),
        py::arg("max_worlds"), py::arg("threads") = 1, py::arg("dedup") = false,
        "First refuting frame/valuation/world in enumeration order, or None.");
  m.def("search_countermodel", &search_py<ModFormula>, py::arg("formula"), py::arg("logic"),
        py::arg("max_worlds"), py::arg("threads") = 1, py::arg("dedup") = false);

  m.def("decide", &decide_py<IntFormula>, py::arg("formula"), py::arg("logic"),
        py::arg("cap") = std::nullopt, py::arg("threads") = 1,
        "Bounded provability check; outcome is provable, not_provable or exhausted.");
  m.def("decide", &decide_py<ModFormula>, py::arg("formula"), py::arg("logic"),
        py::arg("cap") = std::nullopt, py::arg("threads") = 1);

  m.def("chain",
        [](const IntFormula& f, int max_worlds, int threads) {
          const ChainReport rep = verify_translation_chain(f, max_worlds, options(threads, false));
          py::dict d;
          const auto leg = [](const ChainLeg& l) {
            py::dict e;
            e["refutable"] = l.refutable;
            if (l.witness) e["countermodel"] = countermodel_dict(*l.witness);
            e["stats"] = stats_dict(l.stats);
            return e;
          };
          d["ipc"] = leg(rep.ipc);
          d["grz"] = leg(rep.grz);
          d["gl"] = leg(rep.gl);
          d["statuses_agree"] = rep.statuses_agree;
          d["transfers_verified"] = rep.transfers_verified;
          if (rep.grz_to_gl) d["grz_witness_moved_to_gl"] = countermodel_dict(*rep.grz_to_gl);
          if (rep.gl_to_grz) d["gl_witness_moved_to_grz"] = countermodel_dict(*rep.gl_to_grz);
          return d;
        },
        py::arg("formula"), py::arg("max_worlds"), py::arg("threads") = 1,
        "Search the formula, its translation and the split translation over "
        "the three matching frame classes; statuses must agree.");

  m.def("enumerate_frames",
        [](int max_worlds, const std::string& frame_class, bool dedup,
           std::optional<std::uint64_t> limit) {
          FrameEnumerator en(max_worlds, frame_class_from_string(frame_class), dedup);
          py::list out;
          std::uint64_t n = 0;
          while (auto f = en.next()) {
            if (limit && n >= *limit) break;
            out.append(*f);
            ++n;
          }
          return out;
        },
        py::arg("max_worlds"), py::arg("frame_class") = "any", py::arg("dedup") = false,
        py::arg("limit") = std::nullopt);

  m.def("random_frame",
        [](std::uint64_t seed, int max_worlds, const std::string& frame_class) {
          return random_frame(seed, max_worlds, frame_class_from_string(frame_class));
        },
        py::arg("seed"), py::arg("max_worlds"), py::arg("frame_class") = "any");

  m.def("bound_profile",
        [](const IntFormula& f, const std::string& logic) {
          return derivation_dict(derive_world_cap(bound_profile(f, logic_from_string(logic))));
        },
        py::arg("formula"), py::arg("logic"),
        "Finite-model caps for the formula, including the derived world cap.");
  m.def("bound_profile", [](const ModFormula& f, const std::string& logic) {
    return derivation_dict(derive_world_cap(bound_profile(f, logic_from_string(logic))));
  }, py::arg("formula"), py::arg("logic"));
}
