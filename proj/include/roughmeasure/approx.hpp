#ifndef ROUGHMEASURE_APPROX_HPP
#define ROUGHMEASURE_APPROX_HPP

#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "roughmeasure/core.hpp"

namespace rough {

inline std::size_t powerset_cap() {
  if (const char* env = std::getenv("ROUGHMEASURE_MAX_UNIVERSE")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1 && v <= static_cast<long>(kMaxUniverse))
      return static_cast<std::size_t>(v);
  }
  return kDefaultPowersetCap;
}

enum class OperatorKind {
  classical_lower,
  classical_upper,
  tol_lower,
  tol_upper,
  bited_upper,
  graded_lower,
  graded_upper,
  identity,
  fixture,
};

// A named total unary map on subsets of one universe. Fixture operators
// apply a stored table verbatim and fail outside its domain.
class Operator {
 public:
  static Operator classical_lower(Granulation g) { return granular(OperatorKind::classical_lower, "l", std::move(g), GranulationKind::partition); }
  static Operator classical_upper(Granulation g) { return granular(OperatorKind::classical_upper, "u", std::move(g), GranulationKind::partition); }
  static Operator tol_lower(Granulation g) { return granular(OperatorKind::tol_lower, "l", std::move(g), GranulationKind::block_family); }
  static Operator tol_upper(Granulation g) { return granular(OperatorKind::tol_upper, "u", std::move(g), GranulationKind::block_family); }
  static Operator bited_upper(Granulation g) { return granular(OperatorKind::bited_upper, "ub", std::move(g), GranulationKind::block_family); }

  static Operator graded_lower(Granulation g, unsigned k) {
    auto op = granular(OperatorKind::graded_lower, "lk:" + std::to_string(k), std::move(g), GranulationKind::neighborhood_map);
    op.k_ = k;
    return op;
  }
  static Operator graded_upper(Granulation g, unsigned k) {
    auto op = granular(OperatorKind::graded_upper, "uk:" + std::to_string(k), std::move(g), GranulationKind::neighborhood_map);
    op.k_ = k;
    return op;
  }

  static Operator identity(UniversePtr u) {
    Operator op;
    op.kind_ = OperatorKind::identity;
    op.name_ = "id";
    op.u_ = std::move(u);
    return op;
  }

  static Operator fixture(UniversePtr u, std::map<std::uint64_t, std::uint64_t> table, std::string name = "fix") {
    Operator op;
    op.kind_ = OperatorKind::fixture;
    op.name_ = std::move(name);
    op.u_ = std::move(u);
    op.fixture_ = std::move(table);
    return op;
  }

  const std::string& name() const { return name_; }
  OperatorKind kind() const { return kind_; }
  const UniversePtr& universe() const { return u_; }

  ObjectSet operator()(const ObjectSet& a) const { return apply(a); }

  ObjectSet apply(const ObjectSet& a) const {
    if (a.universe().get() != u_.get()) throw input_error("operator applied across universes");
    switch (kind_) {
      case OperatorKind::identity:
        return a;
      case OperatorKind::fixture: {
        auto it = fixture_.find(a.bits());
        if (it == fixture_.end())
          throw input_error("fixture operator '" + name_ + "' undefined at " + a.to_string());
        return ObjectSet(u_, it->second);
      }
      case OperatorKind::classical_lower:
      case OperatorKind::tol_lower: {
        std::uint64_t out = 0;
        for (const auto& b : g_->blocks())
          if ((b.bits() & ~a.bits()) == 0) out |= b.bits();
        return ObjectSet(u_, out);
      }
      case OperatorKind::classical_upper:
      case OperatorKind::tol_upper: {
        std::uint64_t out = 0;
        for (const auto& b : g_->blocks())
          if (b.bits() & a.bits()) out |= b.bits();
        return ObjectSet(u_, out);
      }
      case OperatorKind::bited_upper: {
        std::uint64_t upper = 0, lower_c = 0;
        std::uint64_t comp = ~a.bits() & u_->full_mask();
        for (const auto& b : g_->blocks()) {
          if (b.bits() & a.bits()) upper |= b.bits();
          if ((b.bits() & ~comp) == 0) lower_c |= b.bits();
        }
        return ObjectSet(u_, upper & ~lower_c);
      }
      case OperatorKind::graded_lower:
      case OperatorKind::graded_upper: {
        std::uint64_t out = 0;
        for (std::size_t z = 0; z < u_->size(); ++z) {
          const auto& n = g_->neighborhood(z);
          if (kind_ == OperatorKind::graded_upper) {
            if (static_cast<unsigned>(__builtin_popcountll(n.bits() & a.bits())) > k_)
              out |= std::uint64_t{1} << z;
          } else {
            if (static_cast<unsigned>(__builtin_popcountll(n.bits() & ~a.bits())) <= k_)
              out |= std::uint64_t{1} << z;
          }
        }
        return ObjectSet(u_, out);
      }
    }
    throw std::logic_error("unreachable operator kind");
  }

 private:
  static Operator granular(OperatorKind kind, std::string name, Granulation g, GranulationKind required) {
    if (g.kind() != required &&
        !(required == GranulationKind::block_family && g.kind() == GranulationKind::partition))
      throw input_error("operator '" + name + "' requires a different granulation kind");
    Operator op;
    op.kind_ = kind;
    op.name_ = std::move(name);
    op.u_ = g.universe();
    op.g_ = std::move(g);
    return op;
  }

  Operator() = default;

  OperatorKind kind_ = OperatorKind::identity;
  std::string name_;
  UniversePtr u_;
  std::optional<Granulation> g_;
  unsigned k_ = 0;
  std::map<std::uint64_t, std::uint64_t> fixture_;
};

// Tri-state property flag; `witness` is a falsifying input when false.
struct Flag {
  enum State { yes, no, unknown } state = unknown;
  std::optional<ObjectSet> witness;

  static Flag holds() { return {yes, std::nullopt}; }
  static Flag fails(ObjectSet w) { return {no, std::move(w)}; }
};

struct OperatorProfile {
  Flag monotone, contractive, expansive, idempotent, fixes_bottom, fixes_top;
};

enum class ProfileScope { all_subsets, sample };

// Probes the Def.-1-style clauses an operator actually satisfies,
// exhaustively over the powerset or on a pseudorandom sample.
inline OperatorProfile profile(const Operator& op, ProfileScope scope, std::size_t samples = 256,
                               std::uint64_t seed = 1) {
  const auto& u = op.universe();
  const std::size_t n = u->size();
  if (scope == ProfileScope::all_subsets && n > powerset_cap())
    throw input_error("universe exceeds the exhaustive powerset cap");

  OperatorProfile p;
  std::vector<std::uint64_t> pool;
  if (scope == ProfileScope::all_subsets) {
    for (std::uint64_t m = 0; m <= u->full_mask(); ++m) {
      pool.push_back(m);
      if (m == u->full_mask()) break;
    }
  } else {
    std::uint64_t state = seed ? seed : 1;
    for (std::size_t i = 0; i < samples; ++i) {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      pool.push_back(state & u->full_mask());
    }
    pool.push_back(0);
    pool.push_back(u->full_mask());
  }

  bool exhaustive = scope == ProfileScope::all_subsets;
  p.monotone.state = p.contractive.state = p.expansive.state = p.idempotent.state =
      p.fixes_bottom.state = p.fixes_top.state = exhaustive ? Flag::yes : Flag::unknown;

  for (auto m : pool) {
    ObjectSet a(u, m);
    ObjectSet fa = op.apply(a);
    if (p.contractive.state != Flag::no && !fa.subset_of(a)) p.contractive = Flag::fails(a);
    if (p.expansive.state != Flag::no && !a.subset_of(fa)) p.expansive = Flag::fails(a);
    if (p.idempotent.state != Flag::no && op.apply(fa) != fa) p.idempotent = Flag::fails(a);
    if (m == 0 && p.fixes_bottom.state != Flag::no && !fa.empty_set())
      p.fixes_bottom = Flag::fails(a);
    if (m == u->full_mask() && p.fixes_top.state != Flag::no && fa.bits() != u->full_mask())
      p.fixes_top = Flag::fails(a);
    if (p.monotone.state != Flag::no) {
      // check against supersets obtained by adding one object; monotonicity
      // over the full order follows by transitivity in exhaustive scope
      for (std::size_t i = 0; i < n && p.monotone.state != Flag::no; ++i) {
        if ((m >> i) & 1) continue;
        ObjectSet b(u, m | (std::uint64_t{1} << i));
        if (!fa.subset_of(op.apply(b))) p.monotone = Flag::fails(a);
      }
    }
  }
  return p;
}

}  // namespace rough

#endif  // ROUGHMEASURE_APPROX_HPP
