// mlwb: workbench for monadic intuitionistic and modal logics.
//
// Subcommands: translate, check, validity, classify, search, decide, chain,
// enumerate, export-dot. Exit codes: 0 ok, 1 logical "no" under --strict,
// 2 usage or input errors. WORKBENCH_MAX_STATES overrides the combinatorial
// guards.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mlwb/formula.hpp"
#include "mlwb/frame.hpp"
#include "mlwb/search.hpp"
#include "mlwb/semantics.hpp"
#include "mlwb/translate.hpp"

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw mlwb::Error("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw mlwb::Error("cannot write file '" + path + "'");
  out << text;
}

mlwb::AugmentedFrame load_frame(const std::string& path) {
  return mlwb::AugmentedFrame::from_json(slurp(path));
}

// {"p": ["x", "y"], ...} -> masks over the frame's world order
mlwb::Valuation load_valuation(const std::string& path, const mlwb::AugmentedFrame& frame) {
  json j;
  try {
    j = json::parse(slurp(path));
  } catch (const json::exception& e) {
    throw mlwb::Error(std::string("valuation json: ") + e.what());
  }
  if (!j.is_object()) throw mlwb::Error("valuation json: expected an object");
  mlwb::Valuation v;
  for (const auto& [name, arr] : j.items()) {
    if (!arr.is_array()) throw mlwb::Error("valuation json: '" + name + "' must list worlds");
    mlwb::WorldSet s = 0;
    for (const auto& w : arr) {
      if (!w.is_string()) throw mlwb::Error("valuation json: '" + name + "' must list worlds");
      s |= mlwb::WorldSet{1} << frame.index_of(w.get<std::string>());
    }
    v[name] = s;
  }
  return v;
}

ordered_json valuation_json(const mlwb::Valuation& v, const mlwb::AugmentedFrame& frame) {
  ordered_json out = ordered_json::object();
  for (const auto& [name, set] : v) {
    auto arr = ordered_json::array();
    mlwb::WorldSet rest = set;
    while (rest) {
      const int i = std::countr_zero(rest);
      rest &= rest - 1;
      arr.push_back(frame.world_name(i));
    }
    out[name] = std::move(arr);
  }
  return out;
}

ordered_json frame_json(const mlwb::AugmentedFrame& f) { return ordered_json::parse(f.to_json()); }

ordered_json countermodel_json(const mlwb::CounterModel& cm) {
  ordered_json j;
  j["frame"] = frame_json(cm.frame);
  j["valuation"] = valuation_json(cm.valuation, cm.frame);
  j["world"] = cm.frame.world_name(cm.world);
  return j;
}

ordered_json stats_json(const mlwb::SearchStats& st) {
  ordered_json j;
  j["frames_examined"] = st.frames_examined;
  j["valuations_examined"] = st.valuations_examined;
  j["elapsed_ms"] = st.elapsed_ms;
  return j;
}

std::string describe_countermodel(const mlwb::CounterModel& cm) {
  std::ostringstream out;
  out << "countermodel on " << cm.frame.size() << " world(s)\n";
  out << "  frame: " << cm.frame.to_json() << "\n";
  out << "  valuation: " << valuation_json(cm.valuation, cm.frame).dump() << "\n";
  out << "  world: " << cm.frame.world_name(cm.world) << "\n";
  return out.str();
}

struct GuardSettings {
  mlwb::EnumLimits enum_limits{};
  mlwb::ValidityLimits validity_limits{};
};

GuardSettings guards_from_env() {
  GuardSettings g;
  if (const char* env = std::getenv("WORKBENCH_MAX_STATES")) {
    try {
      const std::uint64_t v = std::stoull(env);
      g.enum_limits.max_candidates = v;
      g.validity_limits.max_valuations = v;
    } catch (const std::exception&) {
      throw mlwb::Error("WORKBENCH_MAX_STATES must be an unsigned integer");
    }
  }
  return g;
}

mlwb::SearchOptions search_options(int threads, bool dedup) {
  mlwb::SearchOptions opts;
  opts.threads = threads;
  opts.dedup = dedup;
  const GuardSettings g = guards_from_env();
  opts.enum_limits = g.enum_limits;
  opts.validity_limits = g.validity_limits;
  return opts;
}

// Parsed in the language the logic expects.
std::variant<mlwb::IntFormula, mlwb::ModFormula> parse_for_logic(const std::string& text,
                                                                 mlwb::LogicId logic) {
  if (mlwb::logic_is_intuitionistic(logic))
    return mlwb::parse_int(text);
  return mlwb::parse_mod(text);
}

int run(int argc, char** argv) {
  CLI::App app{"workbench for monadic intuitionistic and modal logics"};
  app.require_subcommand(1);

  // ---- translate ------------------------------------------------------
  auto* translate = app.add_subcommand("translate", "apply the Goedel and/or splitting translation");
  std::string tr_formula;
  bool tr_godel = false, tr_split = false, tr_both = false, tr_json = false;
  translate->add_option("formula", tr_formula, "formula to translate")->required();
  translate->add_flag("--godel", tr_godel, "intuitionistic -> modal (Goedel)");
  translate->add_flag("--split", tr_split, "modal -> modal (splitting)");
  translate->add_flag("--godel-split", tr_both, "both translations in sequence");
  translate->add_flag("--json", tr_json, "machine readable output");
  translate->callback([&] {
    if (tr_godel + tr_split + tr_both != 1)
      throw CLI::ValidationError("translate", "pass exactly one of --godel, --split, --godel-split");
    std::string mode, output;
    if (tr_godel) {
      mode = "godel";
      output = mlwb::godel(mlwb::parse_int(tr_formula)).str();
    } else if (tr_split) {
      mode = "split";
      output = mlwb::split(mlwb::parse_mod(tr_formula)).str();
    } else {
      mode = "godel-split";
      output = mlwb::split(mlwb::godel(mlwb::parse_int(tr_formula))).str();
    }
    if (tr_json) {
      ordered_json j{{"mode", mode}, {"input", tr_formula}, {"output", output}};
      std::cout << j.dump() << "\n";
    } else {
      std::cout << output << "\n";
    }
  });

  // ---- check ----------------------------------------------------------
  auto* check = app.add_subcommand("check", "evaluate a formula on a model");
  std::string ck_frame, ck_formula, ck_flavor, ck_valuation, ck_world;
  bool ck_json = false;
  check->add_option("--frame", ck_frame, "frame json file")->required();
  check->add_option("--formula", ck_formula, "formula to evaluate")->required();
  check->add_option("--flavor", ck_flavor, "int or mod")->required();
  check->add_option("--valuation", ck_valuation, "valuation json file (default: all empty)");
  check->add_option("--world", ck_world, "world to evaluate at (default: all worlds)");
  check->add_flag("--json", ck_json, "machine readable output");
  check->callback([&] {
    const mlwb::Flavor flavor = mlwb::flavor_from_string(ck_flavor);
    mlwb::AugmentedFrame frame = load_frame(ck_frame);
    mlwb::Valuation val =
        ck_valuation.empty() ? mlwb::Valuation{} : load_valuation(ck_valuation, frame);
    mlwb::Model model(frame, val, flavor);
    mlwb::WorldSet truth;
    if (flavor == mlwb::Flavor::Intuitionistic)
      truth = truth_set(model, mlwb::parse_int(ck_formula).raw());
    else
      truth = truth_set(model, mlwb::parse_mod(ck_formula).raw());
    if (!ck_world.empty()) {
      const bool value = (truth >> frame.index_of(ck_world)) & 1u;
      if (ck_json)
        std::cout << ordered_json{{"world", ck_world}, {"value", value}}.dump() << "\n";
      else
        std::cout << (value ? "true" : "false") << "\n";
    } else if (ck_json) {
      ordered_json values = ordered_json::object();
      for (int i = 0; i < frame.size(); ++i)
        values[frame.world_name(i)] = static_cast<bool>((truth >> i) & 1u);
      std::cout << ordered_json{{"values", values}}.dump() << "\n";
    } else {
      for (int i = 0; i < frame.size(); ++i)
        std::cout << frame.world_name(i) << ": " << (((truth >> i) & 1u) ? "true" : "false")
                  << "\n";
    }
  });

  // ---- validity -------------------------------------------------------
  auto* validity = app.add_subcommand("validity", "check a formula on all valuations of a frame");
  std::string va_frame, va_formula, va_flavor;
  bool va_json = false, va_strict = false;
  int va_exit = 0;
  validity->add_option("--frame", va_frame, "frame json file")->required();
  validity->add_option("--formula", va_formula, "formula to check")->required();
  validity->add_option("--flavor", va_flavor, "int or mod")->required();
  validity->add_flag("--json", va_json, "machine readable output");
  validity->add_flag("--strict", va_strict, "exit 1 when the formula is refuted");
  validity->callback([&] {
    const mlwb::Flavor flavor = mlwb::flavor_from_string(va_flavor);
    mlwb::AugmentedFrame frame = load_frame(va_frame);
    mlwb::Formula f = flavor == mlwb::Flavor::Intuitionistic
                          ? mlwb::parse_int(va_formula).raw()
                          : mlwb::parse_mod(va_formula).raw();
    mlwb::Verdict v = frame_validity(frame, f, flavor, guards_from_env().validity_limits);
    if (va_json) {
      ordered_json j;
      j["valid"] = v.valid;
      if (v.refutation) {
        j["valuation"] = valuation_json(v.refutation->valuation, frame);
        j["world"] = frame.world_name(v.refutation->world);
      }
      j["valuations_examined"] = v.valuations_examined;
      std::cout << j.dump() << "\n";
    } else if (v.valid) {
      std::cout << "valid\n";
    } else {
      std::cout << "refuted at world " << frame.world_name(v.refutation->world)
                << " under valuation " << valuation_json(v.refutation->valuation, frame).dump()
                << "\n";
    }
    if (!v.valid && va_strict) va_exit = 1;
  });

  // ---- classify -------------------------------------------------------
  auto* classify_cmd = app.add_subcommand("classify", "report frame properties and classes");
  std::string cl_frame;
  bool cl_json = false;
  classify_cmd->add_option("--frame", cl_frame, "frame json file")->required();
  classify_cmd->add_flag("--json", cl_json, "machine readable output");
  classify_cmd->callback([&] {
    mlwb::AugmentedFrame frame = load_frame(cl_frame);
    const mlwb::FrameClassReport r = classify(frame);
    const mlwb::CleanReport clean = clean_clusters(frame);
    ordered_json dirty = ordered_json::array();
    for (mlwb::WorldSet b : clean.dirty_blocks) {
      auto arr = ordered_json::array();
      mlwb::WorldSet rest = b;
      while (rest) {
        const int i = std::countr_zero(rest);
        rest &= rest - 1;
        arr.push_back(frame.world_name(i));
      }
      dirty.push_back(std::move(arr));
    }
    if (cl_json) {
      ordered_json j;
      j["commutative"] = r.commutative;
      j["r_preorder"] = r.r_preorder;
      j["r_partial_order"] = r.r_partial_order;
      j["r_strict_partial_order"] = r.r_strict_partial_order;
      j["clean_clusters"] = r.clean_clusters;
      j["dirty_blocks"] = dirty;
      j["classes"] = ordered_json{{"augmented", r.augmented}, {"mipc", r.mipc},
                                  {"ms4", r.ms4},             {"mgrz", r.mgrz_finite},
                                  {"mgl", r.mgl_finite},      {"m+ipc", r.m_plus_ipc},
                                  {"m+grz", r.m_plus_grz}};
      std::cout << j.dump() << "\n";
    } else {
      const auto yn = [](bool b) { return b ? "yes" : "no"; };
      std::cout << "commutative: " << yn(r.commutative) << "\n"
                << "r preorder: " << yn(r.r_preorder) << "\n"
                << "r partial order: " << yn(r.r_partial_order) << "\n"
                << "r strict partial order: " << yn(r.r_strict_partial_order) << "\n"
                << "clean clusters: " << yn(r.clean_clusters) << "\n";
      if (!clean.all_clean) std::cout << "dirty blocks: " << dirty.dump() << "\n";
      std::cout << "classes: augmented=" << yn(r.augmented) << " mipc=" << yn(r.mipc)
                << " ms4=" << yn(r.ms4) << " mgrz=" << yn(r.mgrz_finite)
                << " mgl=" << yn(r.mgl_finite) << " m+ipc=" << yn(r.m_plus_ipc)
                << " m+grz=" << yn(r.m_plus_grz) << "\n";
    }
  });

  // ---- search ---------------------------------------------------------
  auto* search = app.add_subcommand("search", "look for a countermodel over a frame class");
  std::string se_formula, se_logic, se_dot;
  int se_max_worlds = 0, se_threads = 1;
  bool se_json = false, se_dedup = false, se_strict = false;
  int se_exit = 0;
  search->add_option("--formula", se_formula, "formula (language set by the logic)")->required();
  search->add_option("--logic", se_logic, "mipc, ms4, mgrz, mgl, m+ipc or m+grz")->required();
  search->add_option("--max-worlds", se_max_worlds, "largest frame size to try")->required();
  search->add_option("--threads", se_threads, "parallel frame checks (same output)");
  search->add_flag("--dedup", se_dedup, "skip isomorphic duplicates");
  search->add_option("--emit-dot", se_dot, "write the countermodel frame as graphviz");
  search->add_flag("--json", se_json, "machine readable output");
  search->add_flag("--strict", se_strict, "exit 1 when a countermodel exists");
  search->callback([&] {
    const mlwb::LogicId logic = mlwb::logic_from_string(se_logic);
    mlwb::SearchStats stats;
    const mlwb::SearchOptions opts = search_options(se_threads, se_dedup);
    auto parsed = parse_for_logic(se_formula, logic);
    std::optional<mlwb::CounterModel> cm =
        std::holds_alternative<mlwb::IntFormula>(parsed)
            ? search_countermodel(std::get<mlwb::IntFormula>(parsed), logic, se_max_worlds, opts, &stats)
            : search_countermodel(std::get<mlwb::ModFormula>(parsed), logic, se_max_worlds, opts, &stats);
    if (se_json) {
      ordered_json j;
      j["found"] = cm.has_value();
      if (cm) j["countermodel"] = countermodel_json(*cm);
      j["stats"] = stats_json(stats);
      std::cout << j.dump() << "\n";
    } else if (cm) {
      std::cout << describe_countermodel(*cm);
    } else {
      std::cout << "no countermodel with at most " << se_max_worlds << " world(s)\n";
    }
    if (cm && !se_dot.empty()) spill(se_dot, cm->frame.to_dot());
    if (cm && se_strict) se_exit = 1;
  });

  // ---- decide ---------------------------------------------------------
  auto* decide_cmd = app.add_subcommand("decide", "bounded provability check");
  std::string de_formula, de_logic;
  std::uint64_t de_cap = 0;
  bool de_cap_set = false;
  int de_threads = 1;
  bool de_json = false, de_strict = false;
  int de_exit = 0;
  decide_cmd->add_option("--formula", de_formula, "formula (language set by the logic)")->required();
  decide_cmd->add_option("--logic", de_logic, "mipc, ms4, mgrz, mgl, m+ipc or m+grz")->required();
  decide_cmd->add_option("--cap", de_cap, "world cap for the search")
      ->each([&](const std::string&) { de_cap_set = true; });
  decide_cmd->add_option("--threads", de_threads, "parallel frame checks (same output)");
  decide_cmd->add_flag("--json", de_json, "machine readable output");
  decide_cmd->add_flag("--strict", de_strict, "exit 1 on not_provable");
  decide_cmd->callback([&] {
    const mlwb::LogicId logic = mlwb::logic_from_string(de_logic);
    const std::optional<std::uint64_t> cap =
        de_cap_set ? std::optional<std::uint64_t>(de_cap) : std::nullopt;
    const mlwb::SearchOptions opts = search_options(de_threads, false);
    auto parsed = parse_for_logic(de_formula, logic);
    const mlwb::DecideVerdict v = std::holds_alternative<mlwb::IntFormula>(parsed)
                                      ? decide(std::get<mlwb::IntFormula>(parsed), logic, cap, opts)
                                      : decide(std::get<mlwb::ModFormula>(parsed), logic, cap, opts);
    if (de_json) {
      ordered_json j;
      j["outcome"] = outcome_name(v.outcome);
      j["cap_reached"] = v.cap_reached;
      j["semi_decision"] = v.semi_decision;
      if (v.derivation) {
        const mlwb::CapDerivation& d = *v.derivation;
        j["bound"] = ordered_json{{"cluster_cap", d.profile.cluster_cap},
                                  {"branch_cap", d.profile.branch_cap},
                                  {"depth_cap", d.profile.depth_cap},
                                  {"num_clusters_cap", d.num_clusters_cap},
                                  {"world_cap", d.world_cap},
                                  {"saturated", d.saturated}};
      }
      if (v.witness) j["countermodel"] = countermodel_json(*v.witness);
      if (!v.note.empty()) j["note"] = v.note;
      j["stats"] = stats_json(v.stats);
      std::cout << j.dump() << "\n";
    } else {
      std::cout << outcome_name(v.outcome) << " (searched up to " << v.cap_reached
                << " world(s))\n";
      if (v.semi_decision) std::cout << "note: semi-decision only for this logic\n";
      if (!v.note.empty()) std::cout << "note: " << v.note << "\n";
      if (v.witness) std::cout << describe_countermodel(*v.witness);
    }
    if (v.outcome == mlwb::Outcome::NotProvable && de_strict) de_exit = 1;
  });

  // ---- chain ----------------------------------------------------------
  auto* chain = app.add_subcommand("chain", "compare a formula against both translations");
  std::string chf;
  int ch_max_worlds = 0, ch_threads = 1;
  bool ch_json = false, ch_strict = false;
  int ch_exit = 0;
  chain->add_option("--formula", chf, "intuitionistic formula")->required();
  chain->add_option("--max-worlds", ch_max_worlds, "largest frame size to try")->required();
  chain->add_option("--threads", ch_threads, "parallel frame checks (same output)");
  chain->add_flag("--json", ch_json, "machine readable output");
  chain->add_flag("--strict", ch_strict, "exit 1 when the formula is refutable");
  chain->callback([&] {
    const mlwb::IntFormula f = mlwb::parse_int(chf);
    const mlwb::ChainReport rep =
        verify_translation_chain(f, ch_max_worlds, search_options(ch_threads, false));
    const auto leg_json = [&](const mlwb::ChainLeg& leg) {
      ordered_json j;
      j["refutable"] = leg.refutable;
      if (leg.witness) j["countermodel"] = countermodel_json(*leg.witness);
      j["stats"] = stats_json(leg.stats);
      return j;
    };
    if (ch_json) {
      ordered_json j;
      j["formula"] = f.str();
      j["godel"] = godel(f).str();
      j["godel_split"] = split(godel(f)).str();
      j["ipc"] = leg_json(rep.ipc);
      j["grz"] = leg_json(rep.grz);
      j["gl"] = leg_json(rep.gl);
      j["statuses_agree"] = rep.statuses_agree;
      if (rep.grz_to_gl) j["grz_witness_moved_to_gl"] = countermodel_json(*rep.grz_to_gl);
      if (rep.gl_to_grz) j["gl_witness_moved_to_grz"] = countermodel_json(*rep.gl_to_grz);
      j["transfers_verified"] = rep.transfers_verified;
      std::cout << j.dump() << "\n";
    } else {
      const auto status = [](const mlwb::ChainLeg& leg) { return leg.refutable ? "refutable" : "no countermodel"; };
      std::cout << "m+ipc  " << f.str() << ": " << status(rep.ipc) << "\n";
      std::cout << "m+grz  " << godel(f).str() << ": " << status(rep.grz) << "\n";
      std::cout << "mgl    " << split(godel(f)).str() << ": " << status(rep.gl) << "\n";
      std::cout << "statuses agree: " << (rep.statuses_agree ? "yes" : "no") << "\n";
      if (rep.grz_to_gl || rep.gl_to_grz)
        std::cout << "witness transfers verified: " << (rep.transfers_verified ? "yes" : "no")
                  << "\n";
    }
    if (ch_strict && rep.ipc.refutable) ch_exit = 1;
  });

  // ---- enumerate ------------------------------------------------------
  auto* enumerate = app.add_subcommand("enumerate", "stream frames of a class");
  int en_max_worlds = 0;
  std::string en_class = "any";
  bool en_dedup = false, en_count = false;
  std::uint64_t en_limit = 0;
  enumerate->add_option("--max-worlds", en_max_worlds, "largest frame size")->required();
  enumerate->add_option("--class", en_class, "any, augmented, mipc, ms4, mgrz, mgl, m+ipc, m+grz");
  enumerate->add_flag("--dedup", en_dedup, "one frame per isomorphism class");
  enumerate->add_flag("--count-only", en_count, "print only the number of frames");
  enumerate->add_option("--limit", en_limit, "stop after this many frames");
  enumerate->callback([&] {
    mlwb::FrameEnumerator en(en_max_worlds, mlwb::frame_class_from_string(en_class), en_dedup,
                             guards_from_env().enum_limits);
    std::uint64_t count = 0;
    while (auto frame = en.next()) {
      ++count;
      if (!en_count) std::cout << frame->to_json() << "\n";
      if (en_limit && count >= en_limit) break;
    }
    if (en_count) std::cout << count << "\n";
  });

  // ---- export-dot -----------------------------------------------------
  auto* exportdot = app.add_subcommand("export-dot", "render a frame as graphviz");
  std::string xd_frame, xd_out;
  exportdot->add_option("--frame", xd_frame, "frame json file")->required();
  exportdot->add_option("-o,--output", xd_out, "output file (default: stdout)");
  exportdot->callback([&] {
    const std::string dot = load_frame(xd_frame).to_dot();
    if (xd_out.empty())
      std::cout << dot;
    else
      spill(xd_out, dot);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return va_exit + se_exit + de_exit + ch_exit;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const mlwb::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
