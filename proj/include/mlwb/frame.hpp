#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mlwb/error.hpp"
#include "mlwb/formula.hpp"

namespace mlwb {

// A set of worlds, one bit per world index. Frames hold at most 64 worlds;
// the combinatorial tools below only ever visit a handful.
using WorldSet = std::uint64_t;

inline constexpr int kMaxWorlds = 64;

// Finite augmented Kripke frame (W, R, E): an arbitrary binary relation R
// plus an equivalence E stored as a partition into clusters. Worlds carry
// opaque string ids and are kept sorted by id, so world indices, witness
// reports and serializations are all deterministic. Immutable after
// construction; equality is structural.
class AugmentedFrame {
 public:
  // From symbolic data (also the JSON reader's path). Validates: at least
  // one world, unique ids, R/E only over known worlds, E a partition of W
  // into nonempty blocks. Duplicate R pairs and duplicate block members are
  // tolerated and normalized away.
  AugmentedFrame(std::vector<std::string> worlds,
                 std::vector<std::pair<std::string, std::string>> r_pairs,
                 std::vector<std::vector<std::string>> e_blocks);

  // From index-level data; `worlds` must already be sorted, `r_rows[i]` is
  // the successor mask of world i, `block_of[i]` the cluster of world i.
  static AugmentedFrame from_indexed(std::vector<std::string> worlds,
                                     std::vector<WorldSet> r_rows,
                                     std::vector<int> block_of);

  int size() const { return static_cast<int>(worlds_.size()); }
  const std::vector<std::string>& worlds() const { return worlds_; }
  const std::string& world_name(int i) const { return worlds_[static_cast<std::size_t>(i)]; }
  int index_of(std::string_view id) const;  // throws Error on unknown id

  bool has_edge(int i, int j) const { return (r_rows_[static_cast<std::size_t>(i)] >> j) & 1u; }
  WorldSet r_row(int i) const { return r_rows_[static_cast<std::size_t>(i)]; }
  const std::vector<WorldSet>& r_rows() const { return r_rows_; }

  int block_index_of(int world) const { return block_of_[static_cast<std::size_t>(world)]; }
  WorldSet cluster_of(int world) const { return blocks_[static_cast<std::size_t>(block_of_[static_cast<std::size_t>(world)])]; }
  // Clusters as masks, ordered by least member index.
  const std::vector<WorldSet>& blocks() const { return blocks_; }

  WorldSet all_worlds() const {
    return size() == kMaxWorlds ? ~WorldSet{0} : ((WorldSet{1} << size()) - 1);
  }

  // Composition Q = E after R: x Q y iff x R z and z E y for some z.
  std::vector<WorldSet> q_rows() const;

  bool operator==(const AugmentedFrame& o) const;
  bool operator!=(const AugmentedFrame& o) const { return !(*this == o); }

  // Canonical interchange format:
  //   {"worlds": ["x", ...], "R": [["x","y"], ...], "E": [["x","y"], ...]}
  // The writer emits worlds sorted, R pairs sorted, blocks sorted by least
  // member. The reader rejects unknown worlds and non-partitions.
  std::string to_json() const;
  static AugmentedFrame from_json(std::string_view text);

  // Graphviz rendering: solid R edges, clusters as dashed boxes. Reflexive
  // loops are dropped when R is reflexive; a header comment says so.
  std::string to_dot() const;

  // Isomorphism-invariant encoding (minimal (R, E) encoding over all world
  // relabelings). Two frames are isomorphic iff their keys are equal.
  std::string canonical_key() const;

 private:
  AugmentedFrame() = default;
  void build_blocks();

  std::vector<std::string> worlds_;   // sorted
  std::vector<WorldSet> r_rows_;
  std::vector<int> block_of_;
  std::vector<WorldSet> blocks_;
};

// Structural facts about a frame plus the frame-class memberships derived
// from them. All classes require commutativity of R and E:
// x E y R z implies x R w E z for some w.
struct FrameClassReport {
  bool commutative = false;
  bool r_preorder = false;            // reflexive and transitive
  bool r_partial_order = false;       // preorder and antisymmetric
  bool r_strict_partial_order = false;  // irreflexive and transitive
  bool clean_clusters = false;        // no distinct R-related pair inside a cluster

  bool augmented = false;             // commutative
  bool mipc = false;                  // partial order
  bool ms4 = false;                   // preorder
  bool mgrz_finite = false;           // partial order (finite Grz condition)
  bool mgl_finite = false;            // strict partial order, clean clusters
  bool m_plus_ipc = false;            // mipc and clean
  bool m_plus_grz = false;            // mgrz_finite and clean
};

FrameClassReport classify(const AugmentedFrame& f);

// Frame classes usable as enumeration filters. Any = no filter at all.
enum class FrameClass { Any, Augmented, MIPC, MS4, MGrz, MGL, MPlusIPC, MPlusGrz };

FrameClass frame_class_for(LogicId logic);
const char* frame_class_name(FrameClass c);
FrameClass frame_class_from_string(std::string_view name);  // throws Error
bool passes(const FrameClassReport& r, FrameClass c);

// Clusters containing distinct worlds u R v ("dirty"), by least member.
struct CleanReport {
  bool all_clean = true;
  std::vector<WorldSet> dirty_blocks;
};

CleanReport clean_clusters(const AugmentedFrame& f);

// R-maximal points of a: no proper R-move stays inside a.
WorldSet r_max(const AugmentedFrame& f, WorldSet a);
// Quasi-maximal points of a: every R-move inside a can be moved back.
WorldSet q_max(const AugmentedFrame& f, WorldSet a);
// Points of a with no R-successor in a at all (strict-order maxima).
WorldSet irr_max(const AugmentedFrame& f, WorldSet a);

// Skeleton of an MS4 frame: quotient by x ~ y iff x R y and y R x, with
// [x] R~ [y] iff x R y and [x] E~ [y] iff x Q y and y Q x. The result is an
// MIPC frame; class_of[i] gives the skeleton world index of frame world i.
// Skeleton worlds are named after their least member.
struct Skeleton {
  AugmentedFrame frame;
  std::vector<int> class_of;
};

Skeleton skeleton(const AugmentedFrame& f);  // requires classify(f).ms4

// R minus the diagonal / R plus the diagonal. Worlds and E are unchanged.
AugmentedFrame irreflexive_reduction(const AugmentedFrame& f);
AugmentedFrame reflexive_closure(const AugmentedFrame& f);

struct EnumLimits {
  // Upper bound on raw (R, partition) candidates considered across all
  // sizes; the enumerator refuses to start a size that would cross it.
  std::uint64_t max_candidates = 5'000'000;
};

// Streams every labeled frame with 1..max_worlds worlds that passes the
// class filter, in a fixed order: by world count, then by R encoded as a
// k*k-bit integer (bit i*k+j for world pair (i,j)), then by partition in
// restricted-growth-string order. Worlds are named w0, w1, ...
//
// With dedup = true only the lexicographically least representative of each
// isomorphism class is emitted (same order otherwise).
class FrameEnumerator {
 public:
  FrameEnumerator(int max_worlds, FrameClass cls, bool dedup = false,
                  EnumLimits limits = {});

  // Next matching frame, or nullopt when the stream is exhausted.
  // Throws CapExceeded before starting a size whose candidate count would
  // overrun the budget; the message reports the last completed size.
  std::optional<AugmentedFrame> next();

  std::uint64_t candidates_seen() const { return candidates_seen_; }
  int completed_size() const { return completed_size_; }

 private:
  bool advance_size();

  int max_worlds_;
  FrameClass cls_;
  bool dedup_;
  EnumLimits limits_;

  int k_ = 0;                       // current size; 0 = before first
  std::uint64_t r_counter_ = 0;
  std::uint64_t r_count_ = 0;       // 2^(k*k)
  std::size_t part_index_ = 0;
  std::vector<std::vector<int>> partitions_;  // restricted growth strings
  std::uint64_t candidates_seen_ = 0;
  int completed_size_ = 0;
};

// Reproducible pseudo-random frame of the given class with 1..max_worlds
// worlds. Draws a random (strict) order and a random partition, repairs
// commutativity by adding R edges, and retries with fresh draws when the
// result lands outside the class. Throws Error when no frame of the class
// emerges after many attempts.
AugmentedFrame random_frame(std::uint64_t seed, int max_worlds, FrameClass cls);

}  // namespace mlwb
