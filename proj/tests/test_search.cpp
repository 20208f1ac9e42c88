#include <doctest.h>

#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "mlwb/formula.hpp"
#include "mlwb/frame.hpp"
#include "mlwb/search.hpp"
#include "mlwb/semantics.hpp"
#include "mlwb/translate.hpp"
#include "support.hpp"

using namespace mlwb;

namespace {

const AugmentedFrame& expected_witness_frame() {  // w0 < w1 inside one block
  static const AugmentedFrame f({"w0", "w1"}, {{"w0", "w0"}, {"w0", "w1"}, {"w1", "w1"}},
                                {{"w0", "w1"}});
  return f;
}

bool same_countermodel(const CounterModel& a, const CounterModel& b) {
  return a.frame == b.frame && a.valuation == b.valuation && a.world == b.world;
}

}  // namespace

TEST_SUITE("search") {

TEST_CASE("countermodel for the Casari axiom over mipc frames") {
  const IntFormula mcas = named(NamedId::MCas).int_formula();
  SearchStats stats;
  const auto cm = search_countermodel(mcas, LogicId::MIPC, 2, {}, &stats);
  REQUIRE(cm.has_value());
  CHECK(cm->frame == expected_witness_frame());
  CHECK(cm->valuation == Valuation{{"p", 0b10}});
  CHECK(cm->world == 0);
  CHECK(stats.frames_examined == 7);   // all of the <=2-world mipc frames
  CHECK(stats.last_completed_size == 2);  // the witness is the final frame of the sweep

  CHECK(classify(cm->frame).mipc);
  CHECK_FALSE(clean_clusters(cm->frame).all_clean);
  CHECK_FALSE(eval_int(Model(cm->frame, cm->valuation, Flavor::Intuitionistic), cm->world, mcas));

  // enlarging the horizon keeps the first witness
  const auto wider = search_countermodel(mcas, LogicId::MIPC, 3);
  REQUIRE(wider.has_value());
  CHECK(same_countermodel(*cm, *wider));
}

TEST_CASE("countermodel for the boxed Casari axiom over mgrz frames") {
  const ModFormula boxcas = named(NamedId::MBoxCas).mod_formula();
  SearchStats one, four;
  SearchOptions threaded;
  threaded.threads = 4;
  const auto a = search_countermodel(boxcas, LogicId::MGrz, 2, {}, &one);
  const auto b = search_countermodel(boxcas, LogicId::MGrz, 2, threaded, &four);
  REQUIRE(a.has_value());
  REQUIRE(b.has_value());
  CHECK(same_countermodel(*a, *b));  // thread count never changes the answer
  CHECK(one.frames_examined == four.frames_examined);
  CHECK(one.valuations_examined == four.valuations_examined);

  CHECK(a->frame == expected_witness_frame());
  CHECK(a->valuation == Valuation{{"p", 0b10}});
  CHECK(a->world == 0);
  CHECK(classify(a->frame).mgrz_finite);
  CHECK_FALSE(eval_mod(Model(a->frame, a->valuation, Flavor::Modal), a->world, boxcas));
}

TEST_CASE("valid formulas yield no countermodel") {
  SearchStats stats;
  CHECK_FALSE(search_countermodel(parse_int("p -> p"), LogicId::MIPC, 3, {}, &stats).has_value());
  CHECK(stats.last_completed_size == 3);

  // count the sweep against a plain enumeration of the same class
  std::uint64_t frames = 0;
  FrameEnumerator en(3, FrameClass::MIPC);
  while (en.next()) ++frames;
  CHECK(stats.frames_examined == frames);

  CHECK_FALSE(search_countermodel(parse_mod("[]p -> p"), LogicId::MS4, 3).has_value());
  CHECK_FALSE(
      search_countermodel(named(NamedId::Bridge).mod_formula(), LogicId::MS4, 3).has_value());
}

TEST_CASE("dedup sweeps fewer frames but reaches the same verdict") {
  const IntFormula mcas = named(NamedId::MCas).int_formula();
  SearchOptions dd;
  dd.dedup = true;
  SearchStats full, reduced;
  const auto a = search_countermodel(mcas, LogicId::MIPC, 2, {}, &full);
  const auto b = search_countermodel(mcas, LogicId::MIPC, 2, dd, &reduced);
  REQUIRE(a.has_value());
  REQUIRE(b.has_value());
  CHECK(reduced.frames_examined < full.frames_examined);
  CHECK(a->frame.canonical_key() == b->frame.canonical_key());
  CHECK_FALSE(eval_int(Model(b->frame, b->valuation, Flavor::Intuitionistic), b->world, mcas));

  SearchStats vfull, vdd;
  CHECK_FALSE(search_countermodel(parse_int("p -> p"), LogicId::MIPC, 3, {}, &vfull).has_value());
  CHECK_FALSE(search_countermodel(parse_int("p -> p"), LogicId::MIPC, 3, dd, &vdd).has_value());
  CHECK(vdd.frames_examined < vfull.frames_examined);
}

TEST_CASE("language checks") {
  CHECK_THROWS_AS((void)search_countermodel(parse_int("p"), LogicId::MS4, 2), Error);
  CHECK_THROWS_AS((void)search_countermodel(parse_mod("[]p"), LogicId::MIPC, 2), Error);
  CHECK_THROWS_AS((void)decide(parse_int("p"), LogicId::MGL, 2), Error);
  CHECK_THROWS_AS((void)decide(parse_mod("p"), LogicId::MPlusIPC, 2), Error);
}

TEST_CASE("guards surface as cap exceptions") {
  SearchOptions tight_enum;
  tight_enum.enum_limits.max_candidates = 10;
  CHECK_THROWS_AS((void)search_countermodel(parse_int("p -> p"), LogicId::MIPC, 3, tight_enum),
                  CapExceeded);

  SearchOptions tight_val;
  tight_val.validity_limits.max_valuations = 2;
  CHECK_THROWS_AS((void)search_countermodel(parse_mod("p | q | ~p"), LogicId::MS4, 2, tight_val),
                  CapExceeded);
}

TEST_CASE("world caps derived from bound profiles") {
  // p -> p, intuitionistically: one implication, nothing quantified
  const CapDerivation imp = derive_world_cap(bound_profile(parse_int("p -> p"), LogicId::MPlusIPC));
  CHECK(imp.profile.cluster_cap == 1);
  CHECK(imp.profile.branch_cap == 1);
  CHECK(imp.profile.depth_cap == 1);
  CHECK(imp.num_clusters_cap == 1);
  CHECK(imp.world_cap == 1);
  CHECK_FALSE(imp.saturated);

  // a bare variable: no implication at all
  const CapDerivation bare = derive_world_cap(bound_profile(parse_int("p"), LogicId::MPlusIPC));
  CHECK(bare.profile.branch_cap == 0);
  CHECK(bare.world_cap == 1);

  // p -> p, modally: 2^|Sub| clusters of one point each
  const CapDerivation mod = derive_world_cap(bound_profile(parse_mod("p -> p"), LogicId::MPlusGrz));
  CHECK(mod.profile.cluster_cap == 4);
  CHECK(mod.profile.branch_cap == 0);
  CHECK(mod.profile.depth_cap == 1);
  CHECK(mod.world_cap == 4);

  // the Casari axiom: 6 subformulas, 2 universals, 3 implications
  const CapDerivation mcas =
      derive_world_cap(bound_profile(named(NamedId::MCas).int_formula(), LogicId::MPlusIPC));
  CHECK(mcas.profile.m1 == 0);
  CHECK(mcas.profile.m2 == 2);
  CHECK(mcas.profile.m3 == 3);
  CHECK(mcas.profile.n == 6);
  CHECK(mcas.profile.cluster_cap == 3);
  CHECK(mcas.profile.branch_cap == 11);
  CHECK(mcas.profile.depth_cap == 15);
  CHECK(mcas.num_clusters_cap == 417724816941565ull);  // sum of 11^l for l < 15
  CHECK(mcas.world_cap == 1253174450824695ull);
  CHECK_FALSE(mcas.saturated);

  // the boxed Casari axiom: 10 subformulas, 4 of them boxed
  const BoundProfile boxcas =
      bound_profile(named(NamedId::MBoxCas).mod_formula(), LogicId::MGL);
  CHECK(boxcas.n == 10);
  CHECK(boxcas.m == 4);
  CHECK(boxcas.cluster_cap == 1024);
  CHECK(boxcas.branch_cap == 4096);
  CHECK(boxcas.depth_cap == 4097);
  const CapDerivation huge = derive_world_cap(boxcas);
  CHECK(huge.saturated);
  CHECK(huge.world_cap == std::numeric_limits<std::uint64_t>::max());

  BoundProfile manual;
  manual.cluster_cap = 2;
  manual.branch_cap = 1000;
  manual.depth_cap = 50;
  const CapDerivation sat = derive_world_cap(manual);
  CHECK(sat.saturated);
  CHECK(sat.num_clusters_cap == std::numeric_limits<std::uint64_t>::max());
  CHECK(sat.world_cap == std::numeric_limits<std::uint64_t>::max());
}

TEST_CASE("decide settles bounded logics") {
  const DecideVerdict tauto = decide(parse_int("p -> p"), LogicId::MPlusIPC);
  CHECK(tauto.outcome == Outcome::Provable);
  CHECK(tauto.cap_reached == 1);
  CHECK_FALSE(tauto.semi_decision);
  CHECK_FALSE(tauto.witness.has_value());
  REQUIRE(tauto.derivation.has_value());
  CHECK(tauto.derivation->world_cap == 1);

  const DecideVerdict atom = decide(parse_int("p"), LogicId::MPlusIPC);
  CHECK(atom.outcome == Outcome::NotProvable);
  CHECK(atom.cap_reached == 1);
  REQUIRE(atom.witness.has_value());
  CHECK(atom.witness->frame.size() == 1);
  CHECK(atom.witness->valuation == Valuation{{"p", 0}});
  CHECK(atom.witness->world == 0);

  const DecideVerdict forall_p = decide(parse_int("A p"), LogicId::MPlusIPC);
  CHECK(forall_p.outcome == Outcome::NotProvable);
  CHECK(forall_p.cap_reached == 1);  // the one-point refutation ends the sweep early
  CHECK(forall_p.derivation->world_cap == 4);

  const DecideVerdict mod_tauto = decide(parse_mod("p -> p"), LogicId::MPlusGrz);
  CHECK(mod_tauto.outcome == Outcome::Provable);
  CHECK(mod_tauto.cap_reached == 4);
  CHECK(mod_tauto.stats.frames_examined == 635);  // every m+grz frame with <= 4 worlds
}

TEST_CASE("decide reports exhaustion honestly") {
  // valid, but its own bound is astronomically beyond any feasible sweep
  const DecideVerdict capped = decide(named(NamedId::MCas).int_formula(), LogicId::MPlusIPC, 3);
  CHECK(capped.outcome == Outcome::Exhausted);
  CHECK(capped.cap_reached == 3);
  CHECK(capped.note == "cap searched is below the formula's finite model bound");
  CHECK(capped.derivation->world_cap == 1253174450824695ull);
  CHECK_FALSE(capped.witness.has_value());

  SearchOptions small_budget;
  small_budget.enum_limits.max_candidates = 50000;
  const DecideVerdict guarded =
      decide(parse_mod("A p -> p"), LogicId::MGL, std::nullopt, small_budget);
  CHECK(guarded.outcome == Outcome::Exhausted);
  CHECK(guarded.note.rfind("combinatorial guard:", 0) == 0);
  CHECK_FALSE(guarded.witness.has_value());
}

TEST_CASE("decide is a semi-decision for the logics without a bound") {
  const IntFormula mcas = named(NamedId::MCas).int_formula();
  CHECK_THROWS_WITH_AS((void)decide(mcas, LogicId::MIPC), doctest::Contains("cap is required"),
                       Error);

  const DecideVerdict refuted = decide(mcas, LogicId::MIPC, 2);
  CHECK(refuted.outcome == Outcome::NotProvable);
  CHECK(refuted.semi_decision);
  CHECK_FALSE(refuted.derivation.has_value());
  REQUIRE(refuted.witness.has_value());
  CHECK(refuted.witness->frame == expected_witness_frame());

  const DecideVerdict open = decide(parse_int("p -> p"), LogicId::MIPC, 2);
  CHECK(open.outcome == Outcome::Exhausted);  // never Provable without a bound
  CHECK(open.semi_decision);
  CHECK(open.cap_reached == 2);
  CHECK(open.note == "semi-decision: no countermodel up to the cap");

  const DecideVerdict grz = decide(named(NamedId::Grz).mod_formula(), LogicId::MGrz, 2);
  CHECK(grz.outcome == Outcome::Exhausted);
  CHECK_FALSE(grz.witness.has_value());
}

TEST_CASE("translation chain on a refutable formula") {
  const ChainReport rep = verify_translation_chain(parse_int("false"), 1);
  CHECK(rep.ipc.refutable);
  CHECK(rep.grz.refutable);
  CHECK(rep.gl.refutable);
  CHECK(rep.statuses_agree);
  CHECK(rep.transfers_verified);
  REQUIRE(rep.ipc.witness.has_value());
  CHECK(rep.ipc.witness->frame.size() == 1);
  CHECK(rep.ipc.witness->valuation.empty());

  REQUIRE(rep.grz_to_gl.has_value());
  CHECK(classify(rep.grz_to_gl->frame).r_strict_partial_order);
  REQUIRE(rep.gl_to_grz.has_value());
  CHECK(classify(rep.gl_to_grz->frame).r_partial_order);
}

TEST_CASE("translation chain on a valid formula") {
  const ChainReport rep = verify_translation_chain(parse_int("p -> p"), 2);
  CHECK_FALSE(rep.ipc.refutable);
  CHECK_FALSE(rep.grz.refutable);
  CHECK_FALSE(rep.gl.refutable);
  CHECK(rep.statuses_agree);
  CHECK(rep.transfers_verified);
  CHECK_FALSE(rep.grz_to_gl.has_value());
  CHECK_FALSE(rep.gl_to_grz.has_value());
}

TEST_CASE("translation chain statuses agree on random formulas") {
  test::Gen gen(31);
  for (int i = 0; i < 12; ++i) {
    const IntFormula f = gen.int_f(3, 2);
    const ChainReport rep = verify_translation_chain(f, 3);
    CAPTURE(f.str());
    CHECK(rep.statuses_agree);
    CHECK(rep.transfers_verified);
  }
}

TEST_CASE("moved chain witnesses refute by direct evaluation") {
  const ChainReport rep = verify_translation_chain(parse_int("A p"), 2);
  CHECK(rep.ipc.refutable);
  CHECK(rep.statuses_agree);
  REQUIRE(rep.grz_to_gl.has_value());
  const ModFormula target = split(godel(parse_int("A p")));
  const Model m(rep.grz_to_gl->frame, rep.grz_to_gl->valuation, Flavor::Modal);
  CHECK_FALSE(eval_mod(m, rep.grz_to_gl->world, target));
  REQUIRE(rep.gl_to_grz.has_value());
  const Model m2(rep.gl_to_grz->frame, rep.gl_to_grz->valuation, Flavor::Modal);
  CHECK_FALSE(eval_mod(m2, rep.gl_to_grz->world, godel(parse_int("A p"))));
}

}  // TEST_SUITE
