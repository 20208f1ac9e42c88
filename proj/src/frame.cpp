#include "mlwb/frame.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <numeric>
#include <random>
#include <sstream>

#include <json.hpp>

namespace mlwb {

namespace {

WorldSet bit(int i) { return WorldSet{1} << i; }

std::string quote_dot(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

AugmentedFrame::AugmentedFrame(std::vector<std::string> worlds,
                               std::vector<std::pair<std::string, std::string>> r_pairs,
                               std::vector<std::vector<std::string>> e_blocks) {
  if (worlds.empty()) throw Error("frame must have at least one world");
  if (worlds.size() > static_cast<std::size_t>(kMaxWorlds))
    throw Error("frame too large (at most 64 worlds supported)");
  std::sort(worlds.begin(), worlds.end());
  if (std::adjacent_find(worlds.begin(), worlds.end()) != worlds.end())
    throw Error("duplicate world id in frame");
  worlds_ = std::move(worlds);

  const int k = size();
  r_rows_.assign(static_cast<std::size_t>(k), 0);
  for (const auto& [a, b] : r_pairs) {
    r_rows_[static_cast<std::size_t>(index_of(a))] |= bit(index_of(b));
  }

  block_of_.assign(static_cast<std::size_t>(k), -1);
  int next_block = 0;
  for (const auto& block : e_blocks) {
    if (block.empty()) throw Error("empty E-block");
    const int id = next_block++;
    for (const auto& w : block) {
      const int i = index_of(w);
      if (block_of_[static_cast<std::size_t>(i)] != -1 && block_of_[static_cast<std::size_t>(i)] != id)
        throw Error("world '" + w + "' appears in two E-blocks");
      block_of_[static_cast<std::size_t>(i)] = id;
    }
  }
  for (int i = 0; i < k; ++i) {
    if (block_of_[static_cast<std::size_t>(i)] == -1)
      throw Error("world '" + worlds_[static_cast<std::size_t>(i)] + "' is missing from the E-partition");
  }
  build_blocks();
}

AugmentedFrame AugmentedFrame::from_indexed(std::vector<std::string> worlds,
                                            std::vector<WorldSet> r_rows,
                                            std::vector<int> block_of) {
  AugmentedFrame f;
  if (worlds.empty()) throw Error("frame must have at least one world");
  if (!std::is_sorted(worlds.begin(), worlds.end()) ||
      std::adjacent_find(worlds.begin(), worlds.end()) != worlds.end())
    throw Error("from_indexed: worlds must be sorted and unique");
  const std::size_t k = worlds.size();
  if (r_rows.size() != k || block_of.size() != k)
    throw Error("from_indexed: inconsistent sizes");
  f.worlds_ = std::move(worlds);
  const WorldSet universe =
      k == static_cast<std::size_t>(kMaxWorlds) ? ~WorldSet{0} : ((WorldSet{1} << k) - 1);
  for (WorldSet row : r_rows)
    if (row & ~universe) throw Error("from_indexed: R row mentions unknown world");
  f.r_rows_ = std::move(r_rows);
  for (int b : block_of)
    if (b < 0) throw Error("from_indexed: invalid block id");
  f.block_of_ = std::move(block_of);
  f.build_blocks();
  return f;
}

// Renumber blocks by least member and materialize their masks, so that two
// frames with the same partition always store it identically.
void AugmentedFrame::build_blocks() {
  const int k = size();
  std::vector<int> relabel(static_cast<std::size_t>(k), -1);
  std::vector<int> fresh;
  blocks_.clear();
  for (int i = 0; i < k; ++i) {
    const int old_id = block_of_[static_cast<std::size_t>(i)];
    if (old_id >= k) throw Error("invalid block id");
    if (relabel[static_cast<std::size_t>(old_id)] == -1) {
      relabel[static_cast<std::size_t>(old_id)] = static_cast<int>(blocks_.size());
      blocks_.push_back(0);
    }
    const int id = relabel[static_cast<std::size_t>(old_id)];
    block_of_[static_cast<std::size_t>(i)] = id;
    blocks_[static_cast<std::size_t>(id)] |= bit(i);
  }
}

int AugmentedFrame::index_of(std::string_view id) const {
  auto it = std::lower_bound(worlds_.begin(), worlds_.end(), id);
  if (it == worlds_.end() || *it != id)
    throw Error("unknown world '" + std::string(id) + "'");
  return static_cast<int>(it - worlds_.begin());
}

std::vector<WorldSet> AugmentedFrame::q_rows() const {
  const int k = size();
  std::vector<WorldSet> q(static_cast<std::size_t>(k), 0);
  for (int i = 0; i < k; ++i) {
    WorldSet succ = r_rows_[static_cast<std::size_t>(i)];
    while (succ) {
      const int j = std::countr_zero(succ);
      succ &= succ - 1;
      q[static_cast<std::size_t>(i)] |= cluster_of(j);
    }
  }
  return q;
}

// Structure only: world ids do not participate.
bool AugmentedFrame::operator==(const AugmentedFrame& o) const {
  return r_rows_ == o.r_rows_ && block_of_ == o.block_of_;
}

std::string AugmentedFrame::to_json() const {
  nlohmann::ordered_json j;
  j["worlds"] = worlds_;
  auto& r = j["R"] = nlohmann::ordered_json::array();
  const int k = size();
  for (int i = 0; i < k; ++i)
    for (int jj = 0; jj < k; ++jj)
      if (has_edge(i, jj)) r.push_back({worlds_[static_cast<std::size_t>(i)], worlds_[static_cast<std::size_t>(jj)]});
  auto& e = j["E"] = nlohmann::ordered_json::array();
  for (WorldSet block : blocks_) {
    auto names = nlohmann::ordered_json::array();
    while (block) {
      const int i = std::countr_zero(block);
      block &= block - 1;
      names.push_back(worlds_[static_cast<std::size_t>(i)]);
    }
    e.push_back(std::move(names));
  }
  return j.dump();
}

AugmentedFrame AugmentedFrame::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("frame json: ") + e.what());
  }
  if (!j.is_object() || !j.contains("worlds") || !j.contains("R") || !j.contains("E"))
    throw Error("frame json: expected an object with keys worlds, R, E");
  std::vector<std::string> worlds;
  for (const auto& w : j.at("worlds")) {
    if (!w.is_string()) throw Error("frame json: worlds must be strings");
    worlds.push_back(w.get<std::string>());
  }
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& p : j.at("R")) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
      throw Error("frame json: R entries must be [from, to] pairs of world ids");
    pairs.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
  }
  std::vector<std::vector<std::string>> blocks;
  for (const auto& b : j.at("E")) {
    if (!b.is_array()) throw Error("frame json: E entries must be arrays of world ids");
    std::vector<std::string> block;
    for (const auto& w : b) {
      if (!w.is_string()) throw Error("frame json: E entries must be arrays of world ids");
      block.push_back(w.get<std::string>());
    }
    blocks.push_back(std::move(block));
  }
  return AugmentedFrame(std::move(worlds), std::move(pairs), std::move(blocks));
}

std::string AugmentedFrame::to_dot() const {
  const int k = size();
  bool reflexive = true;
  for (int i = 0; i < k; ++i)
    if (!has_edge(i, i)) reflexive = false;

  std::ostringstream out;
  out << "digraph frame {\n";
  if (reflexive) out << "  // R is reflexive; reflexive loops omitted\n";
  out << "  rankdir=BT;\n  node [shape=circle];\n";
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    out << "  subgraph cluster_" << b << " {\n    style=dashed;\n";
    WorldSet block = blocks_[b];
    while (block) {
      const int i = std::countr_zero(block);
      block &= block - 1;
      out << "    " << quote_dot(worlds_[static_cast<std::size_t>(i)]) << ";\n";
    }
    out << "  }\n";
  }
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (!has_edge(i, j)) continue;
      if (reflexive && i == j) continue;
      out << "  " << quote_dot(worlds_[static_cast<std::size_t>(i)]) << " -> "
          << quote_dot(worlds_[static_cast<std::size_t>(j)]) << ";\n";
    }
  out << "}\n";
  return out.str();
}

namespace {

// Encoding of (R, E) under a world relabeling; used for both the canonical
// key and enumeration dedup. perm[i] = old index shown at new position i.
std::string encode_under(const std::vector<WorldSet>& r_rows,
                         const std::vector<int>& block_of,
                         const std::vector<int>& perm) {
  const int k = static_cast<int>(perm.size());
  std::string enc;
  enc.reserve(static_cast<std::size_t>(k * k + k + 1));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      enc += ((r_rows[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] >>
               perm[static_cast<std::size_t>(j)]) & 1u) ? '1' : '0';
  enc += '|';
  // restricted growth string of the permuted partition
  std::vector<int> relabel(static_cast<std::size_t>(k), -1);
  int next = 0;
  for (int i = 0; i < k; ++i) {
    const int b = block_of[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
    if (relabel[static_cast<std::size_t>(b)] == -1) relabel[static_cast<std::size_t>(b)] = next++;
    enc += static_cast<char>('0' + relabel[static_cast<std::size_t>(b)]);
  }
  return enc;
}

std::string minimal_encoding(const std::vector<WorldSet>& r_rows,
                             const std::vector<int>& block_of) {
  const int k = static_cast<int>(r_rows.size());
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  std::string best = encode_under(r_rows, block_of, perm);
  while (std::next_permutation(perm.begin(), perm.end())) {
    std::string enc = encode_under(r_rows, block_of, perm);
    if (enc < best) best = std::move(enc);
  }
  return best;
}

}  // namespace

std::string AugmentedFrame::canonical_key() const {
  if (size() > 8) throw Error("canonical_key supports at most 8 worlds");
  return std::to_string(size()) + ":" + minimal_encoding(r_rows_, block_of_);
}

// ---------------------------------------------------------------------------
// Classification

namespace {

struct RawFrame {
  int k;
  const std::vector<WorldSet>* r;
  const std::vector<int>* block_of;
  std::vector<WorldSet> blocks;  // by block id
};

RawFrame raw_of(int k, const std::vector<WorldSet>& r, const std::vector<int>& block_of) {
  RawFrame f{k, &r, &block_of, {}};
  for (int i = 0; i < k; ++i) {
    const int b = block_of[static_cast<std::size_t>(i)];
    if (b >= static_cast<int>(f.blocks.size())) f.blocks.resize(static_cast<std::size_t>(b) + 1, 0);
    f.blocks[static_cast<std::size_t>(b)] |= bit(i);
  }
  return f;
}

FrameClassReport classify_raw(const RawFrame& f) {
  const int k = f.k;
  const auto& r = *f.r;
  const auto& block_of = *f.block_of;

  bool reflexive = true, irreflexive = true, transitive = true, antisym = true;
  for (int i = 0; i < k; ++i) {
    const bool loop = (r[static_cast<std::size_t>(i)] >> i) & 1u;
    reflexive &= loop;
    irreflexive &= !loop;
    WorldSet succ = r[static_cast<std::size_t>(i)];
    while (succ) {
      const int j = std::countr_zero(succ);
      succ &= succ - 1;
      if (r[static_cast<std::size_t>(j)] & ~r[static_cast<std::size_t>(i)]) transitive = false;
      if (i != j && ((r[static_cast<std::size_t>(j)] >> i) & 1u)) antisym = false;
    }
  }

  // x E y and y R z must have a witness x R w E z.
  bool commutative = true;
  for (int y = 0; y < k && commutative; ++y) {
    WorldSet succ = r[static_cast<std::size_t>(y)];
    const WorldSet ey = f.blocks[static_cast<std::size_t>(block_of[static_cast<std::size_t>(y)])];
    while (succ && commutative) {
      const int z = std::countr_zero(succ);
      succ &= succ - 1;
      const WorldSet ez = f.blocks[static_cast<std::size_t>(block_of[static_cast<std::size_t>(z)])];
      WorldSet xs = ey;
      while (xs) {
        const int x = std::countr_zero(xs);
        xs &= xs - 1;
        if (!(r[static_cast<std::size_t>(x)] & ez)) {
          commutative = false;
          break;
        }
      }
    }
  }

  bool clean = true;
  for (WorldSet b : f.blocks) {
    WorldSet members = b;
    while (members && clean) {
      const int i = std::countr_zero(members);
      members &= members - 1;
      if (r[static_cast<std::size_t>(i)] & b & ~bit(i)) clean = false;
    }
  }

  FrameClassReport rep;
  rep.commutative = commutative;
  rep.r_preorder = reflexive && transitive;
  rep.r_partial_order = rep.r_preorder && antisym;
  rep.r_strict_partial_order = irreflexive && transitive;
  rep.clean_clusters = clean;
  rep.augmented = commutative;
  rep.mipc = rep.r_partial_order && commutative;
  rep.ms4 = rep.r_preorder && commutative;
  rep.mgrz_finite = rep.r_partial_order && commutative;
  rep.mgl_finite = rep.r_strict_partial_order && commutative && clean;
  rep.m_plus_ipc = rep.mipc && clean;
  rep.m_plus_grz = rep.mgrz_finite && clean;
  return rep;
}

}  // namespace

FrameClassReport classify(const AugmentedFrame& f) {
  std::vector<int> block_of(static_cast<std::size_t>(f.size()));
  for (int i = 0; i < f.size(); ++i) block_of[static_cast<std::size_t>(i)] = f.block_index_of(i);
  return classify_raw(raw_of(f.size(), f.r_rows(), block_of));
}

CleanReport clean_clusters(const AugmentedFrame& f) {
  CleanReport rep;
  for (WorldSet b : f.blocks()) {
    bool dirty = false;
    WorldSet members = b;
    while (members && !dirty) {
      const int i = std::countr_zero(members);
      members &= members - 1;
      if (f.r_row(i) & b & ~bit(i)) dirty = true;
    }
    if (dirty) {
      rep.all_clean = false;
      rep.dirty_blocks.push_back(b);
    }
  }
  return rep;
}

WorldSet r_max(const AugmentedFrame& f, WorldSet a) {
  WorldSet out = 0;
  WorldSet rest = a;
  while (rest) {
    const int x = std::countr_zero(rest);
    rest &= rest - 1;
    if (!(f.r_row(x) & a & ~bit(x))) out |= bit(x);
  }
  return out;
}

WorldSet q_max(const AugmentedFrame& f, WorldSet a) {
  WorldSet out = 0;
  WorldSet rest = a;
  while (rest) {
    const int x = std::countr_zero(rest);
    rest &= rest - 1;
    WorldSet succ = f.r_row(x) & a;
    bool ok = true;
    while (succ) {
      const int y = std::countr_zero(succ);
      succ &= succ - 1;
      if (!f.has_edge(y, x)) {
        ok = false;
        break;
      }
    }
    if (ok) out |= bit(x);
  }
  return out;
}

WorldSet irr_max(const AugmentedFrame& f, WorldSet a) {
  WorldSet out = 0;
  WorldSet rest = a;
  while (rest) {
    const int x = std::countr_zero(rest);
    rest &= rest - 1;
    if (!(f.r_row(x) & a)) out |= bit(x);
  }
  return out;
}

Skeleton skeleton(const AugmentedFrame& f) {
  if (!classify(f).ms4) throw Error("skeleton requires an ms4 frame");
  const int k = f.size();

  // ~-classes; representatives are least members, discovered in index order.
  std::vector<int> class_of(static_cast<std::size_t>(k), -1);
  std::vector<int> reps;
  for (int i = 0; i < k; ++i) {
    for (int r = 0; r < static_cast<int>(reps.size()); ++r) {
      const int j = reps[static_cast<std::size_t>(r)];
      if (f.has_edge(i, j) && f.has_edge(j, i)) {
        class_of[static_cast<std::size_t>(i)] = r;
        break;
      }
    }
    if (class_of[static_cast<std::size_t>(i)] == -1) {
      class_of[static_cast<std::size_t>(i)] = static_cast<int>(reps.size());
      reps.push_back(i);
    }
  }

  const int n = static_cast<int>(reps.size());
  std::vector<WorldSet> r_rows(static_cast<std::size_t>(n), 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (f.has_edge(reps[static_cast<std::size_t>(a)], reps[static_cast<std::size_t>(b)]))
        r_rows[static_cast<std::size_t>(a)] |= bit(b);

  // E~ from Q: classes are E~-related iff they see each other through Q.
  const std::vector<WorldSet> q = f.q_rows();
  std::vector<int> block(static_cast<std::size_t>(n));
  std::iota(block.begin(), block.end(), 0);
  const auto root = [&](int a) {
    while (block[static_cast<std::size_t>(a)] != a) a = block[static_cast<std::size_t>(a)];
    return a;
  };
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      const int x = reps[static_cast<std::size_t>(a)], y = reps[static_cast<std::size_t>(b)];
      const bool related = ((q[static_cast<std::size_t>(x)] >> y) & 1u) && ((q[static_cast<std::size_t>(y)] >> x) & 1u);
      if (related) block[static_cast<std::size_t>(root(a))] = root(b);
    }
  std::vector<int> block_of(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) block_of[static_cast<std::size_t>(a)] = root(a);

  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(n));
  for (int rep : reps) names.push_back(f.world_name(rep));

  Skeleton s{AugmentedFrame::from_indexed(std::move(names), std::move(r_rows), std::move(block_of)),
             std::move(class_of)};
  return s;
}

AugmentedFrame irreflexive_reduction(const AugmentedFrame& f) {
  std::vector<WorldSet> rows = f.r_rows();
  for (int i = 0; i < f.size(); ++i) rows[static_cast<std::size_t>(i)] &= ~bit(i);
  std::vector<int> block_of(static_cast<std::size_t>(f.size()));
  for (int i = 0; i < f.size(); ++i) block_of[static_cast<std::size_t>(i)] = f.block_index_of(i);
  return AugmentedFrame::from_indexed(f.worlds(), std::move(rows), std::move(block_of));
}

AugmentedFrame reflexive_closure(const AugmentedFrame& f) {
  std::vector<WorldSet> rows = f.r_rows();
  for (int i = 0; i < f.size(); ++i) rows[static_cast<std::size_t>(i)] |= bit(i);
  std::vector<int> block_of(static_cast<std::size_t>(f.size()));
  for (int i = 0; i < f.size(); ++i) block_of[static_cast<std::size_t>(i)] = f.block_index_of(i);
  return AugmentedFrame::from_indexed(f.worlds(), std::move(rows), std::move(block_of));
}

// ---------------------------------------------------------------------------
// Enumeration

FrameClass frame_class_for(LogicId logic) {
  switch (logic) {
    case LogicId::MIPC: return FrameClass::MIPC;
    case LogicId::MS4: return FrameClass::MS4;
    case LogicId::MGrz: return FrameClass::MGrz;
    case LogicId::MGL: return FrameClass::MGL;
    case LogicId::MPlusIPC: return FrameClass::MPlusIPC;
    case LogicId::MPlusGrz: return FrameClass::MPlusGrz;
  }
  throw Error("unknown logic id");
}

const char* frame_class_name(FrameClass c) {
  switch (c) {
    case FrameClass::Any: return "any";
    case FrameClass::Augmented: return "augmented";
    case FrameClass::MIPC: return "mipc";
    case FrameClass::MS4: return "ms4";
    case FrameClass::MGrz: return "mgrz";
    case FrameClass::MGL: return "mgl";
    case FrameClass::MPlusIPC: return "m+ipc";
    case FrameClass::MPlusGrz: return "m+grz";
  }
  return "?";
}

FrameClass frame_class_from_string(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "any" || s == "all") return FrameClass::Any;
  if (s == "augmented") return FrameClass::Augmented;
  if (s == "mipc") return FrameClass::MIPC;
  if (s == "ms4") return FrameClass::MS4;
  if (s == "mgrz") return FrameClass::MGrz;
  if (s == "mgl") return FrameClass::MGL;
  if (s == "m+ipc" || s == "mplusipc") return FrameClass::MPlusIPC;
  if (s == "m+grz" || s == "mplusgrz") return FrameClass::MPlusGrz;
  throw Error("unknown frame class '" + std::string(name) + "'");
}

bool passes(const FrameClassReport& r, FrameClass c) {
  switch (c) {
    case FrameClass::Any: return true;
    case FrameClass::Augmented: return r.augmented;
    case FrameClass::MIPC: return r.mipc;
    case FrameClass::MS4: return r.ms4;
    case FrameClass::MGrz: return r.mgrz_finite;
    case FrameClass::MGL: return r.mgl_finite;
    case FrameClass::MPlusIPC: return r.m_plus_ipc;
    case FrameClass::MPlusGrz: return r.m_plus_grz;
  }
  return false;
}

namespace {

constexpr std::array<std::uint64_t, 10> kBell = {1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147};

void gen_rgs(int k, int pos, int mx, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (pos == k) {
    out.push_back(cur);
    return;
  }
  for (int v = 0; v <= mx + 1; ++v) {
    cur[static_cast<std::size_t>(pos)] = v;
    gen_rgs(k, pos + 1, std::max(mx, v), cur, out);
  }
}

std::vector<std::vector<int>> all_partitions(int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(k), 0);
  gen_rgs(k, 1, 0, cur, out);  // position 0 is always block 0
  return out;
}

std::vector<std::string> default_names(int k) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) names.push_back("w" + std::to_string(i));
  return names;
}

}  // namespace

FrameEnumerator::FrameEnumerator(int max_worlds, FrameClass cls, bool dedup, EnumLimits limits)
    : max_worlds_(max_worlds), cls_(cls), dedup_(dedup), limits_(limits) {
  if (max_worlds < 1) throw Error("enumerate: max_worlds must be at least 1");
}

bool FrameEnumerator::advance_size() {
  completed_size_ = k_;
  ++k_;
  if (k_ > max_worlds_) return false;
  if (k_ >= 9 || k_ * k_ >= 63)
    throw CapExceeded("enumeration beyond 8 worlds is not supported; completed size " +
                      std::to_string(completed_size_));
  bool clip = false;
  const std::uint64_t cand =
      sat_mul(WorldSet{1} << (k_ * k_), kBell[static_cast<std::size_t>(k_)], &clip);
  if (clip || cand > limits_.max_candidates - candidates_seen_)
    throw CapExceeded("enumerating " + std::to_string(k_) + "-world frames needs " +
                      std::to_string(cand) + " more candidates, over the budget of " +
                      std::to_string(limits_.max_candidates) + "; completed size " +
                      std::to_string(completed_size_));
  partitions_ = all_partitions(k_);
  r_count_ = WorldSet{1} << (k_ * k_);
  r_counter_ = 0;
  part_index_ = 0;
  return true;
}

std::optional<AugmentedFrame> FrameEnumerator::next() {
  while (true) {
    if (k_ == 0 || r_counter_ >= r_count_) {
      if (!advance_size()) return std::nullopt;
    }
    const std::uint64_t r_code = r_counter_;
    const std::vector<int>& block_of = partitions_[part_index_];
    ++candidates_seen_;
    if (++part_index_ >= partitions_.size()) {
      part_index_ = 0;
      ++r_counter_;
    }

    std::vector<WorldSet> rows(static_cast<std::size_t>(k_), 0);
    for (int i = 0; i < k_; ++i)
      rows[static_cast<std::size_t>(i)] = (r_code >> (i * k_)) & ((WorldSet{1} << k_) - 1);

    const RawFrame raw = raw_of(k_, rows, block_of);
    if (!passes(classify_raw(raw), cls_)) continue;
    if (dedup_) {
      std::vector<int> ident(static_cast<std::size_t>(k_));
      std::iota(ident.begin(), ident.end(), 0);
      if (minimal_encoding(rows, block_of) != encode_under(rows, block_of, ident)) continue;
    }
    return AugmentedFrame::from_indexed(default_names(k_), std::move(rows), block_of);
  }
}

// ---------------------------------------------------------------------------
// Random frames

AugmentedFrame random_frame(std::uint64_t seed, int max_worlds, FrameClass cls) {
  if (max_worlds < 1 || max_worlds > 9)
    throw Error("random_frame: max_worlds must be between 1 and 9");
  std::mt19937_64 rng(seed);
  const bool strict = cls == FrameClass::MGL;
  const bool ordered = cls != FrameClass::Any && cls != FrameClass::Augmented;

  for (int attempt = 0; attempt < 256; ++attempt) {
    const int k = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_worlds));
    const WorldSet universe = (WorldSet{1} << k) - 1;
    std::vector<WorldSet> rows(static_cast<std::size_t>(k), 0);

    if (ordered) {
      // Random order skeleton over the index order; closed below.
      for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
          if (rng() & 1u) rows[static_cast<std::size_t>(i)] |= bit(j);
      if (!strict)
        for (int i = 0; i < k; ++i) rows[static_cast<std::size_t>(i)] |= bit(i);
    } else {
      for (int i = 0; i < k; ++i) rows[static_cast<std::size_t>(i)] = rng() & universe;
    }

    // Random partition as a restricted growth string.
    std::vector<int> block_of(static_cast<std::size_t>(k), 0);
    int mx = 0;
    for (int i = 1; i < k; ++i) {
      block_of[static_cast<std::size_t>(i)] = static_cast<int>(rng() % static_cast<std::uint64_t>(mx + 2));
      mx = std::max(mx, block_of[static_cast<std::size_t>(i)]);
    }

    if (cls == FrameClass::Any)
      return AugmentedFrame::from_indexed(default_names(k), std::move(rows), std::move(block_of));

    const auto close = [&] {
      for (int m = 0; m < k; ++m)
        for (int i = 0; i < k; ++i)
          if ((rows[static_cast<std::size_t>(i)] >> m) & 1u)
            rows[static_cast<std::size_t>(i)] |= rows[static_cast<std::size_t>(m)];
    };

    // Commutativity repair: whenever x E y R z lacks a witness, let x reach z
    // directly; for the ordered classes keep the result transitively closed.
    // Edges only ever get added, so this reaches a fixpoint.
    bool viable = true;
    bool stable = false;
    for (int round = 0; round <= k * k + 1 && viable && !stable; ++round) {
      if (ordered) close();
      stable = true;
      for (int y = 0; y < k && viable; ++y) {
        WorldSet succ = rows[static_cast<std::size_t>(y)];
        while (succ && viable) {
          const int z = std::countr_zero(succ);
          succ &= succ - 1;
          for (int x = 0; x < k; ++x) {
            if (block_of[static_cast<std::size_t>(x)] != block_of[static_cast<std::size_t>(y)]) continue;
            bool witness = false;
            WorldSet ws = rows[static_cast<std::size_t>(x)];
            while (ws) {
              const int w = std::countr_zero(ws);
              ws &= ws - 1;
              if (block_of[static_cast<std::size_t>(w)] == block_of[static_cast<std::size_t>(z)]) {
                witness = true;
                break;
              }
            }
            if (!witness) {
              if (strict && x == z) {
                viable = false;
                break;
              }
              rows[static_cast<std::size_t>(x)] |= bit(z);
              stable = false;
            }
          }
        }
      }
    }
    if (!viable || !stable) continue;

    const RawFrame raw = raw_of(k, rows, block_of);
    if (!passes(classify_raw(raw), cls)) continue;
    return AugmentedFrame::from_indexed(default_names(k), std::move(rows), std::move(block_of));
  }
  throw Error(std::string("random_frame: no ") + frame_class_name(cls) +
              " frame found after 256 attempts (seed " + std::to_string(seed) + ")");
}

}  // namespace mlwb
