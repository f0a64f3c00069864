#ifndef ROUGHMEASURE_CORE_HPP
#define ROUGHMEASURE_CORE_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rough {

// Input/validation problems (CLI exit code 2).
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A stated precondition of an operation does not hold.
struct precondition_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMaxUniverse = 64;
inline constexpr std::size_t kDefaultPowersetCap = 20;

// Finite, ordered universe of named objects. The order fixes the bit
// encoding of every subset, so instances are immutable after construction.
class Universe {
 public:
  explicit Universe(std::vector<std::string> objects) : objects_(std::move(objects)) {
    if (objects_.empty()) throw input_error("universe must contain at least one object");
    if (objects_.size() > kMaxUniverse)
      throw input_error("universe exceeds the " + std::to_string(kMaxUniverse) + "-object cap");
    for (std::size_t i = 0; i < objects_.size(); ++i) {
      if (!index_.emplace(objects_[i], i).second)
        throw input_error("duplicate object identifier: " + objects_[i]);
    }
  }

  std::size_t size() const { return objects_.size(); }
  const std::string& name(std::size_t i) const { return objects_.at(i); }
  const std::vector<std::string>& objects() const { return objects_; }

  std::optional<std::size_t> find(std::string_view id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index(std::string_view id) const {
    auto i = find(id);
    if (!i) throw input_error("unknown object identifier: " + std::string(id));
    return *i;
  }

  std::uint64_t full_mask() const {
    return size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size()) - 1;
  }

 private:
  std::vector<std::string> objects_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

using UniversePtr = std::shared_ptr<const Universe>;

inline UniversePtr make_universe(std::vector<std::string> objects) {
  return std::make_shared<const Universe>(std::move(objects));
}

// Subset of a universe, encoded as a bit per object.
class ObjectSet {
 public:
  ObjectSet() = default;
  ObjectSet(UniversePtr u, std::uint64_t bits) : u_(std::move(u)), bits_(bits & u_->full_mask()) {}

  static ObjectSet empty(UniversePtr u) { return ObjectSet(std::move(u), 0); }
  static ObjectSet full(UniversePtr u) {
    auto m = u->full_mask();
    return ObjectSet(std::move(u), m);
  }
  static ObjectSet of(UniversePtr u, const std::vector<std::string>& ids) {
    std::uint64_t bits = 0;
    for (const auto& id : ids) bits |= std::uint64_t{1} << u->index(id);
    return ObjectSet(std::move(u), bits);
  }

  const UniversePtr& universe() const { return u_; }
  std::uint64_t bits() const { return bits_; }
  bool contains(std::size_t i) const { return (bits_ >> i) & 1; }
  std::size_t count() const { return static_cast<std::size_t>(__builtin_popcountll(bits_)); }
  bool empty_set() const { return bits_ == 0; }

  bool subset_of(const ObjectSet& o) const {
    check_same(o);
    return (bits_ & ~o.bits_) == 0;
  }

  ObjectSet operator|(const ObjectSet& o) const { check_same(o); return {u_, bits_ | o.bits_}; }
  ObjectSet operator&(const ObjectSet& o) const { check_same(o); return {u_, bits_ & o.bits_}; }
  ObjectSet operator-(const ObjectSet& o) const { check_same(o); return {u_, bits_ & ~o.bits_}; }
  ObjectSet complement() const { return {u_, ~bits_ & u_->full_mask()}; }

  bool operator==(const ObjectSet& o) const { return same_universe(o) && bits_ == o.bits_; }
  bool operator!=(const ObjectSet& o) const { return !(*this == o); }
  // Canonical total order (by encoding) used for deterministic output.
  bool operator<(const ObjectSet& o) const { return bits_ < o.bits_; }

  bool same_universe(const ObjectSet& o) const { return u_.get() == o.u_.get(); }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < u_->size(); ++i)
      if (contains(i)) out.push_back(u_->name(i));
    return out;
  }

  // Renders as "{x1,x2}" with members in universe order.
  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (std::size_t i = 0; i < u_->size(); ++i) {
      if (!contains(i)) continue;
      if (!first) s += ',';
      s += u_->name(i);
      first = false;
    }
    s += '}';
    return s;
  }

 private:
  void check_same(const ObjectSet& o) const {
    if (!same_universe(o)) throw input_error("universe mismatch between object sets");
  }

  UniversePtr u_;
  std::uint64_t bits_ = 0;
};

// Objects x attributes, each cell a finite set of opaque value tokens.
class InformationTable {
 public:
  InformationTable(UniversePtr u, std::vector<std::string> attributes,
                   std::map<std::pair<std::string, std::string>, std::set<std::string>> valuation)
      : u_(std::move(u)), attributes_(std::move(attributes)), valuation_(std::move(valuation)) {
    for (const auto& a : attributes_)
      for (const auto& x : u_->objects())
        if (!valuation_.count({a, x}))
          valuation_[{a, x}] = {};  // empty set is a legal value
  }

  const UniversePtr& universe() const { return u_; }
  const std::vector<std::string>& attributes() const { return attributes_; }

  bool has_attribute(std::string_view a) const {
    return std::find(attributes_.begin(), attributes_.end(), a) != attributes_.end();
  }

  const std::set<std::string>& value(const std::string& attr, const std::string& obj) const {
    auto it = valuation_.find({attr, obj});
    if (it == valuation_.end()) throw input_error("no valuation for (" + attr + ", " + obj + ")");
    return it->second;
  }

 private:
  UniversePtr u_;
  std::vector<std::string> attributes_;
  std::map<std::pair<std::string, std::string>, std::set<std::string>> valuation_;
};

// Binary relation on a universe, one bit row per object. The reflexive /
// symmetric / transitive flags are computed from the matrix, never asserted.
class Relation {
 public:
  Relation(UniversePtr u, std::vector<std::uint64_t> rows) : u_(std::move(u)), rows_(std::move(rows)) {
    if (rows_.size() != u_->size()) throw input_error("relation row count != universe size");
    for (auto& r : rows_) r &= u_->full_mask();
    compute_flags();
  }

  enum class Closure { none, reflexive_symmetric };

  static Relation from_pairs(UniversePtr u, const std::vector<std::pair<std::string, std::string>>& pairs,
                             Closure closure) {
    std::vector<std::uint64_t> rows(u->size(), 0);
    for (const auto& [a, b] : pairs) {
      auto i = u->index(a), j = u->index(b);
      rows[i] |= std::uint64_t{1} << j;
      if (closure == Closure::reflexive_symmetric) rows[j] |= std::uint64_t{1} << i;
    }
    if (closure == Closure::reflexive_symmetric)
      for (std::size_t i = 0; i < u->size(); ++i) rows[i] |= std::uint64_t{1} << i;
    return Relation(std::move(u), std::move(rows));
  }

  const UniversePtr& universe() const { return u_; }
  bool related(std::size_t i, std::size_t j) const { return (rows_[i] >> j) & 1; }
  std::uint64_t row(std::size_t i) const { return rows_[i]; }

  bool reflexive() const { return reflexive_; }
  bool symmetric() const { return symmetric_; }
  bool transitive() const { return transitive_; }

 private:
  void compute_flags() {
    const std::size_t n = u_->size();
    reflexive_ = symmetric_ = transitive_ = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (!related(i, i)) reflexive_ = false;
      for (std::size_t j = 0; j < n; ++j) {
        if (related(i, j) != related(j, i)) symmetric_ = false;
        if (related(i, j) && (rows_[j] & ~rows_[i])) transitive_ = false;
      }
    }
  }

  UniversePtr u_;
  std::vector<std::uint64_t> rows_;
  bool reflexive_ = false, symmetric_ = false, transitive_ = false;
};

enum class GranulationKind { partition, block_family, neighborhood_map };

// A family of granules: a partition, a family of maximal tolerance blocks,
// or a per-object neighborhood map.
class Granulation {
 public:
  static Granulation partition(UniversePtr u, std::vector<ObjectSet> blocks) {
    Granulation g(std::move(u), GranulationKind::partition);
    g.blocks_ = std::move(blocks);
    g.validate_partition();
    return g;
  }

  static Granulation block_family(UniversePtr u, std::vector<ObjectSet> blocks) {
    Granulation g(std::move(u), GranulationKind::block_family);
    g.blocks_ = std::move(blocks);
    for (const auto& b : g.blocks_)
      if (b.universe().get() != g.u_.get()) throw input_error("block universe mismatch");
    return g;
  }

  static Granulation neighborhoods(UniversePtr u, std::vector<ObjectSet> map) {
    Granulation g(std::move(u), GranulationKind::neighborhood_map);
    if (map.size() != g.u_->size()) throw input_error("neighborhood map must be total over objects");
    g.nbhd_ = std::move(map);
    return g;
  }

  const UniversePtr& universe() const { return u_; }
  GranulationKind kind() const { return kind_; }
  const std::vector<ObjectSet>& blocks() const {
    if (kind_ == GranulationKind::neighborhood_map)
      throw input_error("neighborhood-map granulation has no blocks");
    return blocks_;
  }
  const ObjectSet& neighborhood(std::size_t i) const {
    if (kind_ != GranulationKind::neighborhood_map)
      throw input_error("block granulation has no neighborhood map");
    return nbhd_.at(i);
  }

 private:
  Granulation(UniversePtr u, GranulationKind k) : u_(std::move(u)), kind_(k) {}

  void validate_partition() {
    std::uint64_t seen = 0;
    for (const auto& b : blocks_) {
      if (b.universe().get() != u_.get()) throw input_error("block universe mismatch");
      if (seen & b.bits()) throw input_error("partition blocks are not pairwise disjoint");
      seen |= b.bits();
    }
    if (seen != u_->full_mask()) throw input_error("partition blocks do not cover the universe");
  }

  UniversePtr u_;
  GranulationKind kind_;
  std::vector<ObjectSet> blocks_;
  std::vector<ObjectSet> nbhd_;
};

// IND(K): x,y share a block iff their valuations agree (as sets) on every
// attribute of K. K = {} yields the single-block partition.
inline Granulation ind_partition(const InformationTable& table, const std::vector<std::string>& attrs) {
  for (const auto& a : attrs)
    if (!table.has_attribute(a)) throw input_error("unknown attribute identifier: " + a);
  const auto& u = table.universe();
  const std::size_t n = u->size();
  std::vector<bool> assigned(n, false);
  std::vector<ObjectSet> blocks;
  for (std::size_t i = 0; i < n; ++i) {
    if (assigned[i]) continue;
    std::uint64_t bits = std::uint64_t{1} << i;
    assigned[i] = true;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (assigned[j]) continue;
      bool same = true;
      for (const auto& a : attrs)
        if (table.value(a, u->name(i)) != table.value(a, u->name(j))) { same = false; break; }
      if (same) {
        bits |= std::uint64_t{1} << j;
        assigned[j] = true;
      }
    }
    blocks.emplace_back(u, bits);
  }
  return Granulation::partition(u, std::move(blocks));
}

enum class Comparator { equal, overlap, subset };
enum class Quantifier { forall, exists };

// (x,w) related iff (Q a in K) Phi(v(a,x), v(a,w)).
inline Relation derive_relation(const InformationTable& table, Comparator cmp, Quantifier q,
                                const std::vector<std::string>& attrs) {
  for (const auto& a : attrs)
    if (!table.has_attribute(a)) throw input_error("unknown attribute identifier: " + a);
  if (attrs.empty() && cmp != Comparator::equal)
    throw input_error("empty attribute set is only allowed with the `equal` comparator");
  const auto& u = table.universe();
  const std::size_t n = u->size();
  std::vector<std::uint64_t> rows(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      bool holds = (q == Quantifier::forall);
      for (const auto& a : attrs) {
        const auto& vi = table.value(a, u->name(i));
        const auto& vj = table.value(a, u->name(j));
        bool phi = false;
        switch (cmp) {
          case Comparator::equal: phi = vi == vj; break;
          case Comparator::overlap: {
            phi = std::any_of(vi.begin(), vi.end(), [&](const auto& t) { return vj.count(t); });
            break;
          }
          case Comparator::subset: phi = std::includes(vj.begin(), vj.end(), vi.begin(), vi.end()); break;
        }
        if (q == Quantifier::forall && !phi) { holds = false; break; }
        if (q == Quantifier::exists && phi) { holds = true; break; }
      }
      if (holds) rows[i] |= std::uint64_t{1} << j;
    }
  }
  return Relation(u, std::move(rows));
}

namespace detail {

// Rank assignment for a finite poset given as a <= matrix: propagates
// r(cover) = r(base) + 1 along the cover relation. Returns false when the
// constraints are inconsistent (the poset is not graded).
inline bool poset_graded_ranks(const std::vector<std::vector<bool>>& le, std::vector<std::size_t>& ranks) {
  const std::size_t n = le.size();
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !le[i][j] || le[j][i]) continue;
      bool cover = true;
      for (std::size_t k = 0; k < n && cover; ++k)
        if (k != i && k != j && le[i][k] && !le[k][i] && le[k][j] && !le[j][k]) cover = false;
      if (cover) covers.emplace_back(i, j);
    }
  std::vector<std::optional<long>> r(n);
  for (std::size_t start = 0; start < n; ++start) {
    if (r[start]) continue;
    r[start] = 0;
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto [i, j] : covers) {
        if (r[i] && !r[j]) { r[j] = *r[i] + 1; changed = true; }
        else if (r[j] && !r[i]) { r[i] = *r[j] - 1; changed = true; }
        else if (r[i] && r[j] && *r[j] != *r[i] + 1) return false;
      }
    }
  }
  long lo = 0;
  for (const auto& v : r)
    if (v) lo = std::min(lo, *v);
  ranks.clear();
  for (const auto& v : r) ranks.push_back(static_cast<std::size_t>(*v - lo));
  return true;
}

// Bron-Kerbosch with pivoting over bit masks.
inline void bron_kerbosch(const std::vector<std::uint64_t>& adj, std::uint64_t r, std::uint64_t p,
                          std::uint64_t x, std::vector<std::uint64_t>& out) {
  if (!p && !x) { out.push_back(r); return; }
  std::uint64_t px = p | x;
  std::size_t pivot = static_cast<std::size_t>(__builtin_ctzll(px));
  int best = -1;
  for (std::uint64_t t = px; t; t &= t - 1) {
    auto v = static_cast<std::size_t>(__builtin_ctzll(t));
    int deg = __builtin_popcountll(p & adj[v]);
    if (deg > best) { best = deg; pivot = v; }
  }
  for (std::uint64_t cand = p & ~adj[pivot]; cand; cand &= cand - 1) {
    auto v = static_cast<std::size_t>(__builtin_ctzll(cand));
    std::uint64_t vb = std::uint64_t{1} << v;
    bron_kerbosch(adj, r | vb, p & adj[v], x & adj[v], out);
    p &= ~vb;
    x |= vb;
  }
}
}  // namespace detail

// Maximal cliques of a reflexive symmetric relation, as tolerance blocks.
inline Granulation tolerance_blocks(const Relation& rel) {
  if (!rel.reflexive() || !rel.symmetric())
    throw precondition_error("tolerance_blocks requires a reflexive symmetric relation");
  const auto& u = rel.universe();
  const std::size_t n = u->size();
  std::vector<std::uint64_t> adj(n);
  for (std::size_t i = 0; i < n; ++i) adj[i] = rel.row(i) & ~(std::uint64_t{1} << i);
  std::vector<std::uint64_t> cliques;
  detail::bron_kerbosch(adj, 0, u->full_mask(), 0, cliques);
  std::sort(cliques.begin(), cliques.end());
  std::vector<ObjectSet> blocks;
  blocks.reserve(cliques.size());
  for (auto c : cliques) blocks.emplace_back(u, c);
  return Granulation::block_family(u, std::move(blocks));
}

enum class NeighborhoodMode { predecessor, successor };

// predecessor: n(z) = {w : (w,z) in rel};  successor: n(z) = {w : (z,w) in rel}.
inline Granulation neighborhood_map(const Relation& rel, NeighborhoodMode mode) {
  const auto& u = rel.universe();
  const std::size_t n = u->size();
  std::vector<ObjectSet> map;
  map.reserve(n);
  for (std::size_t z = 0; z < n; ++z) {
    std::uint64_t bits = 0;
    if (mode == NeighborhoodMode::successor) {
      bits = rel.row(z);
    } else {
      for (std::size_t w = 0; w < n; ++w)
        if (rel.related(w, z)) bits |= std::uint64_t{1} << w;
    }
    map.emplace_back(u, bits);
  }
  return Granulation::neighborhoods(u, std::move(map));
}

}  // namespace rough

#endif  // ROUGHMEASURE_CORE_HPP
