#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "mlwb/formula.hpp"
#include "mlwb/frame.hpp"
#include "mlwb/semantics.hpp"
#include "mlwb/translate.hpp"

namespace mlwb {

struct CounterModel {
  AugmentedFrame frame;
  Valuation valuation;
  int world;  // index into frame.worlds()
};

struct SearchStats {
  std::uint64_t frames_examined = 0;
  std::uint64_t valuations_examined = 0;
  int last_completed_size = 0;  // largest world count fully swept
  double elapsed_ms = 0;
};

struct SearchOptions {
  int threads = 1;
  bool dedup = false;  // search only one frame per isomorphism class
  EnumLimits enum_limits{};
  ValidityLimits validity_limits{};
};

// First frame of the logic's class (in enumeration order, up to max_worlds
// worlds) refuting f, together with the first refuting valuation and world.
// The result does not depend on `threads`: frames are checked in fixed
// chunks and the least refuted index wins. Returns nullopt when f is valid
// everywhere searched; throws CapExceeded when a combinatorial guard trips
// first. The formula's language must match the logic.
std::optional<CounterModel> search_countermodel(const IntFormula& f, LogicId logic,
                                                int max_worlds, const SearchOptions& opts = {},
                                                SearchStats* stats = nullptr);
std::optional<CounterModel> search_countermodel(const ModFormula& f, LogicId logic,
                                                int max_worlds, const SearchOptions& opts = {},
                                                SearchStats* stats = nullptr);

enum class Outcome { Provable, NotProvable, Exhausted };
const char* outcome_name(Outcome o);

// How the finite-model world cap was derived from a BoundProfile: a frame
// needs at most cluster_cap * num_clusters_cap worlds, where the cluster
// count is bounded by a branching tree of depth depth_cap and arity
// branch_cap. Saturating arithmetic throughout.
struct CapDerivation {
  BoundProfile profile;
  std::uint64_t num_clusters_cap = 0;
  std::uint64_t world_cap = 0;
  bool saturated = false;
};

CapDerivation derive_world_cap(const BoundProfile& p);

struct DecideVerdict {
  Outcome outcome = Outcome::Exhausted;
  std::uint64_t cap_reached = 0;          // world count searched completely
  std::optional<CounterModel> witness;    // NotProvable only
  std::optional<CapDerivation> derivation;  // logics with a finite bound
  bool semi_decision = false;             // true for mipc/ms4/mgrz
  std::string note;
  SearchStats stats;
};

// Bounded provability check.
//
// For m+ipc, m+grz and mgl the finite model property pins a world cap for
// each formula; a clean sweep up to that cap yields Provable. A sweep cut
// short by a smaller user_cap or by a combinatorial guard yields Exhausted.
// For mipc, ms4 and mgrz no such cap is available here, so user_cap is
// mandatory and the call is only a semi-decision (never Provable).
// A refuting model always yields NotProvable.
DecideVerdict decide(const IntFormula& f, LogicId logic,
                     std::optional<std::uint64_t> user_cap = std::nullopt,
                     const SearchOptions& opts = {});
DecideVerdict decide(const ModFormula& f, LogicId logic,
                     std::optional<std::uint64_t> user_cap = std::nullopt,
                     const SearchOptions& opts = {});

struct ChainLeg {
  bool refutable = false;
  std::optional<CounterModel> witness;
  SearchStats stats;
};

// Countermodel searches for f over m+ipc frames, godel(f) over m+grz
// frames and split(godel(f)) over mgl frames, all up to max_worlds worlds.
// The three statuses agree for every formula (that is the point); the
// report also carries witnesses moved across the frame transforms, each
// re-checked by evaluation.
struct ChainReport {
  ChainLeg ipc, grz, gl;
  bool statuses_agree = false;
  // grz witness with R made irreflexive, refuting split(godel(f)) on an mgl
  // frame; gl witness with R made reflexive, refuting godel(f) on an m+grz
  // frame.
  std::optional<CounterModel> grz_to_gl;
  std::optional<CounterModel> gl_to_grz;
  bool transfers_verified = false;
};

ChainReport verify_translation_chain(const IntFormula& f, int max_worlds,
                                     const SearchOptions& opts = {});

}  // namespace mlwb
