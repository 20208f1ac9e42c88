#include "mlwb/search.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <future>
#include <limits>
#include <vector>

namespace mlwb {

namespace {

constexpr std::size_t kChunk = 64;  // frames per batch, fixed across thread counts

struct ItemResult {
  std::optional<Refutation> refutation;
  std::uint64_t valuations = 0;
  std::exception_ptr error;
};

ItemResult check_frame(const AugmentedFrame& frame, const Formula& f, Flavor flavor,
                       const ValidityLimits& limits) {
  ItemResult r;
  try {
    Verdict v = frame_validity(frame, f, flavor, limits);
    r.valuations = v.valuations_examined;
    if (!v.valid) r.refutation = std::move(v.refutation);
  } catch (...) {
    r.error = std::current_exception();
  }
  return r;
}

std::optional<CounterModel> search_core(const Formula& f, Flavor flavor, LogicId logic,
                                        int max_worlds, const SearchOptions& opts,
                                        SearchStats* stats) {
  const auto t0 = std::chrono::steady_clock::now();
  SearchStats local;
  SearchStats& st = stats ? *stats : local;
  st = SearchStats{};
  const auto finish = [&] {
    st.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  };

  FrameEnumerator en(max_worlds, frame_class_for(logic), opts.dedup, opts.enum_limits);
  std::exception_ptr pending;  // guard trip seen while filling a chunk
  bool done = false;

  while (!done) {
    std::vector<AugmentedFrame> chunk;
    chunk.reserve(kChunk);
    while (chunk.size() < kChunk) {
      std::optional<AugmentedFrame> fr;
      try {
        fr = en.next();
      } catch (const CapExceeded&) {
        pending = std::current_exception();
        done = true;
        break;
      }
      if (!fr) {
        done = true;
        break;
      }
      chunk.push_back(std::move(*fr));
    }
    st.last_completed_size = en.completed_size();
    if (chunk.empty()) break;

    std::vector<ItemResult> results(chunk.size());
    const int threads = std::max(1, opts.threads);
    if (threads == 1 || chunk.size() == 1) {
      for (std::size_t i = 0; i < chunk.size(); ++i)
        results[i] = check_frame(chunk[i], f, flavor, opts.validity_limits);
    } else {
      std::vector<std::future<void>> futures;
      const std::size_t per = (chunk.size() + threads - 1) / static_cast<std::size_t>(threads);
      for (int t = 0; t < threads; ++t) {
        const std::size_t lo = static_cast<std::size_t>(t) * per;
        const std::size_t hi = std::min(chunk.size(), lo + per);
        if (lo >= hi) break;
        futures.push_back(std::async(std::launch::async, [&, lo, hi] {
          for (std::size_t i = lo; i < hi; ++i)
            results[i] = check_frame(chunk[i], f, flavor, opts.validity_limits);
        }));
      }
      for (auto& fu : futures) fu.get();
    }

    st.frames_examined += chunk.size();
    for (const ItemResult& r : results) st.valuations_examined += r.valuations;

    // Whole chunks are always evaluated, so the first hit in chunk order is
    // the global first hit no matter how many threads ran.
    for (std::size_t i = 0; i < chunk.size(); ++i) {
      if (results[i].error) {
        finish();
        std::rethrow_exception(results[i].error);
      }
      if (results[i].refutation) {
        finish();
        return CounterModel{std::move(chunk[i]), std::move(results[i].refutation->valuation),
                            results[i].refutation->world};
      }
    }
  }

  finish();
  if (pending) std::rethrow_exception(pending);
  return std::nullopt;
}

void check_language(const Formula& f, Flavor flavor, LogicId logic) {
  const bool want_int = logic_is_intuitionistic(logic);
  if (want_int != (flavor == Flavor::Intuitionistic))
    throw Error(std::string("language mismatch: ") +
                (flavor == Flavor::Intuitionistic ? "intuitionistic" : "modal") +
                " formula with logic " + logic_name(logic));
  if (want_int && !in_int_language(f))
    throw Error("language mismatch: modal connectives with an intuitionistic logic");
}

}  // namespace

std::optional<CounterModel> search_countermodel(const IntFormula& f, LogicId logic,
                                                int max_worlds, const SearchOptions& opts,
                                                SearchStats* stats) {
  check_language(f.raw(), Flavor::Intuitionistic, logic);
  return search_core(f.raw(), Flavor::Intuitionistic, logic, max_worlds, opts, stats);
}

std::optional<CounterModel> search_countermodel(const ModFormula& f, LogicId logic,
                                                int max_worlds, const SearchOptions& opts,
                                                SearchStats* stats) {
  check_language(f.raw(), Flavor::Modal, logic);
  return search_core(f.raw(), Flavor::Modal, logic, max_worlds, opts, stats);
}

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Provable: return "provable";
    case Outcome::NotProvable: return "not_provable";
    case Outcome::Exhausted: return "exhausted";
  }
  return "?";
}

CapDerivation derive_world_cap(const BoundProfile& p) {
  CapDerivation d;
  d.profile = p;
  bool clip = p.saturated;

  // Cluster count: a witness tree has depth at most depth_cap and branching
  // at most branch_cap, so sum branch_cap^l over levels l < max(depth_cap, 1).
  const std::uint64_t levels = std::max<std::uint64_t>(p.depth_cap, 1);
  std::uint64_t clusters = 0;
  if (p.branch_cap == 0) {
    clusters = 1;
  } else if (p.branch_cap == 1) {
    clusters = levels;
  } else {
    std::uint64_t term = 1;
    for (std::uint64_t l = 0; l < levels; ++l) {
      clusters = sat_add(clusters, term, &clip);
      term = sat_mul(term, p.branch_cap, &clip);
      if (clip) {
        clusters = std::numeric_limits<std::uint64_t>::max();
        break;
      }
    }
  }
  d.num_clusters_cap = clusters;
  d.world_cap = sat_mul(p.cluster_cap, clusters, &clip);
  d.saturated = clip;
  return d;
}

namespace {

DecideVerdict decide_core(const Formula& f, Flavor flavor, LogicId logic,
                          std::optional<std::uint64_t> user_cap, const SearchOptions& opts,
                          const BoundProfile& profile) {
  DecideVerdict v;
  const bool bounded = logic == LogicId::MPlusIPC || logic == LogicId::MPlusGrz ||
                       logic == LogicId::MGL;
  v.semi_decision = !bounded;

  std::uint64_t target = 0;
  if (bounded) {
    v.derivation = derive_world_cap(profile);
    target = v.derivation->world_cap;
    if (user_cap) target = std::min(target, *user_cap);
  } else {
    if (!user_cap)
      throw Error(std::string("no finite model bound is available for ") + logic_name(logic) +
                  "; a search cap is required (semi-decision)");
    target = *user_cap;
  }
  if (target == 0) target = 1;

  // The enumerator tops out well below this; clamping keeps the argument sane.
  const int target_worlds = static_cast<int>(std::min<std::uint64_t>(target, kMaxWorlds));

  std::optional<CounterModel> witness;
  try {
    witness = search_core(f, flavor, logic, target_worlds, opts, &v.stats);
  } catch (const CapExceeded& e) {
    v.outcome = Outcome::Exhausted;
    v.cap_reached = static_cast<std::uint64_t>(v.stats.last_completed_size);
    v.note = std::string("combinatorial guard: ") + e.what();
    return v;
  }

  if (witness) {
    v.outcome = Outcome::NotProvable;
    v.cap_reached = static_cast<std::uint64_t>(witness->frame.size());
    v.witness = std::move(witness);
    return v;
  }

  v.cap_reached = static_cast<std::uint64_t>(v.stats.last_completed_size);
  if (bounded && v.cap_reached >= v.derivation->world_cap) {
    v.outcome = Outcome::Provable;
  } else {
    v.outcome = Outcome::Exhausted;
    v.note = bounded ? "cap searched is below the formula's finite model bound"
                     : "semi-decision: no countermodel up to the cap";
  }
  return v;
}

}  // namespace

DecideVerdict decide(const IntFormula& f, LogicId logic, std::optional<std::uint64_t> user_cap,
                     const SearchOptions& opts) {
  check_language(f.raw(), Flavor::Intuitionistic, logic);
  return decide_core(f.raw(), Flavor::Intuitionistic, logic, user_cap, opts,
                     bound_profile(f, logic));
}

DecideVerdict decide(const ModFormula& f, LogicId logic, std::optional<std::uint64_t> user_cap,
                     const SearchOptions& opts) {
  check_language(f.raw(), Flavor::Modal, logic);
  return decide_core(f.raw(), Flavor::Modal, logic, user_cap, opts, bound_profile(f, logic));
}

ChainReport verify_translation_chain(const IntFormula& f, int max_worlds,
                                     const SearchOptions& opts) {
  ChainReport rep;
  const ModFormula g = godel(f);
  const ModFormula s = split(g);

  rep.ipc.witness = search_countermodel(f, LogicId::MPlusIPC, max_worlds, opts, &rep.ipc.stats);
  rep.ipc.refutable = rep.ipc.witness.has_value();
  rep.grz.witness = search_countermodel(g, LogicId::MPlusGrz, max_worlds, opts, &rep.grz.stats);
  rep.grz.refutable = rep.grz.witness.has_value();
  rep.gl.witness = search_countermodel(s, LogicId::MGL, max_worlds, opts, &rep.gl.stats);
  rep.gl.refutable = rep.gl.witness.has_value();

  rep.statuses_agree = rep.ipc.refutable == rep.grz.refutable && rep.grz.refutable == rep.gl.refutable;

  bool ok = true;
  if (rep.grz.witness) {
    CounterModel moved{irreflexive_reduction(rep.grz.witness->frame), rep.grz.witness->valuation,
                       rep.grz.witness->world};
    Model m(moved.frame, moved.valuation, Flavor::Modal);
    ok = ok && !eval_mod(m, moved.world, s);
    rep.grz_to_gl = std::move(moved);
  }
  if (rep.gl.witness) {
    CounterModel moved{reflexive_closure(rep.gl.witness->frame), rep.gl.witness->valuation,
                       rep.gl.witness->world};
    Model m(moved.frame, moved.valuation, Flavor::Modal);
    ok = ok && !eval_mod(m, moved.world, g);
    rep.gl_to_grz = std::move(moved);
  }
  rep.transfers_verified = ok;
  return rep;
}

}  // namespace mlwb
