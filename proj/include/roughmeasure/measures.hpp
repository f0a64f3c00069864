#ifndef ROUGHMEASURE_MEASURES_HPP
#define ROUGHMEASURE_MEASURES_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "roughmeasure/approx.hpp"
#include "roughmeasure/core.hpp"

namespace rough {

// (x^b \ x^a)^c  -- the directed-difference measure.
inline ObjectSet amalg(const ObjectSet& x, const Operator& a, const Operator& b, const Operator& c) {
  return c.apply(b.apply(x) - a.apply(x));
}

// (x^a \ x^b)^c  u  (x^b \ x^a)^c  -- the symmetric-difference measure.
inline ObjectSet nabla(const ObjectSet& x, const Operator& a, const Operator& b, const Operator& c) {
  ObjectSet xa = a.apply(x), xb = b.apply(x);
  return c.apply(xa - xb) | c.apply(xb - xa);
}

// nabla(x, l1, ls, us)  u  nabla(x, ls, l1, u1).
inline ObjectSet finv(const ObjectSet& x, const Operator& l1, const Operator& ls, const Operator& u1,
                      const Operator& us) {
  return nabla(x, l1, ls, us) | nabla(x, ls, l1, u1);
}

struct MeasureRow {
  ObjectSet input;
  ObjectSet result;
};

struct MeasureTable {
  std::vector<MeasureRow> rows;  // in ascending subset-encoding order
};

// All subsets of `u`, in encoding order. Guarded by the powerset cap.
inline std::vector<ObjectSet> all_subsets(const UniversePtr& u) {
  if (u->size() > powerset_cap())
    throw input_error("universe exceeds the exhaustive powerset cap (" +
                      std::to_string(powerset_cap()) + " objects)");
  std::vector<ObjectSet> out;
  out.reserve(std::size_t{1} << u->size());
  for (std::uint64_t m = 0;; ++m) {
    out.emplace_back(u, m);
    if (m == u->full_mask()) break;
  }
  return out;
}

template <typename F>
MeasureTable evaluate_measure(const std::vector<ObjectSet>& domain, F&& measure) {
  MeasureTable t;
  t.rows.reserve(domain.size());
  for (const auto& x : domain) t.rows.push_back({x, measure(x)});
  return t;
}

// The range R of a measure over its domain: distinct result sets with the
// induced inclusion order, partial join/meet, and structural verdicts.
struct RangeStructure {
  std::vector<ObjectSet> elements;                     // sorted by encoding
  std::vector<std::pair<std::size_t, std::size_t>> order_pairs;  // i <= j, strict part i != j
  // join[i][j]/meet[i][j]: index into elements, or nullopt when the union /
  // intersection falls outside the range.
  std::vector<std::vector<std::optional<std::size_t>>> join, meet;
  bool lower_bounded = false;
  std::optional<std::size_t> bottom;
  bool weak_partial_lattice = false;
  std::vector<std::string> lattice_failures;
  bool graded = false;
  std::vector<std::size_t> ranks;  // parallel to elements when graded
  std::vector<bool> definite;      // per element, against the standard pair
  bool all_definite = false;
};

namespace detail {

// =omega on optional indices: holds unless both defined and unequal.
inline bool weq_opt(const std::optional<std::size_t>& a, const std::optional<std::size_t>& b) {
  return !(a && b) || *a == *b;
}

}  // namespace detail

template <typename F>
RangeStructure measure_range(const std::vector<ObjectSet>& domain, F&& measure,
                             const Operator& std_lower, const Operator& std_upper) {
  if (domain.empty()) throw input_error("measure_range requires a nonempty domain");
  RangeStructure rs;
  for (const auto& x : domain) {
    ObjectSet v = measure(x);
    if (std::find(rs.elements.begin(), rs.elements.end(), v) == rs.elements.end())
      rs.elements.push_back(v);
  }
  std::sort(rs.elements.begin(), rs.elements.end());

  const std::size_t n = rs.elements.size();
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      le[i][j] = rs.elements[i].subset_of(rs.elements[j]);
      if (le[i][j] && i != j) rs.order_pairs.emplace_back(i, j);
    }

  auto find_el = [&](const ObjectSet& v) -> std::optional<std::size_t> {
    auto it = std::lower_bound(rs.elements.begin(), rs.elements.end(), v);
    if (it != rs.elements.end() && *it == v) return static_cast<std::size_t>(it - rs.elements.begin());
    return std::nullopt;
  };

  rs.join.assign(n, std::vector<std::optional<std::size_t>>(n));
  rs.meet.assign(n, std::vector<std::optional<std::size_t>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      rs.join[i][j] = find_el(rs.elements[i] | rs.elements[j]);
      rs.meet[i][j] = find_el(rs.elements[i] & rs.elements[j]);
    }

  for (std::size_t i = 0; i < n; ++i) {
    bool below_all = true;
    for (std::size_t j = 0; j < n; ++j)
      if (!le[i][j]) { below_all = false; break; }
    if (below_all) { rs.lower_bounded = true; rs.bottom = i; break; }
  }

  // wpl1-wpl3 under =omega on the induced partial operations
  rs.weak_partial_lattice = true;
  auto fail = [&](const std::string& msg) {
    rs.weak_partial_lattice = false;
    rs.lattice_failures.push_back(msg);
  };
  auto nm = [&](std::size_t i) { return rs.elements[i].to_string(); };
  for (std::size_t a = 0; a < n; ++a) {
    if (!(rs.meet[a][a] && *rs.meet[a][a] == a)) fail("wpl1: a^a != a at " + nm(a));
    if (!(rs.join[a][a] && *rs.join[a][a] == a)) fail("wpl1: ava != a at " + nm(a));
    for (std::size_t b = 0; b < n; ++b) {
      if (!detail::weq_opt(rs.meet[a][b], rs.meet[b][a])) fail("wpl3: meet not commutative at " + nm(a) + "," + nm(b));
      if (!detail::weq_opt(rs.join[a][b], rs.join[b][a])) fail("wpl3: join not commutative at " + nm(a) + "," + nm(b));
      if (rs.meet[a][b]) {
        auto ab_a = rs.join[*rs.meet[a][b]][a];
        if (ab_a && *ab_a != a) fail("wpl3: absorption fails at " + nm(a) + "," + nm(b));
      }
      for (std::size_t c = 0; c < n; ++c) {
        std::optional<std::size_t> l = rs.meet[a][b] ? rs.meet[*rs.meet[a][b]][c] : std::nullopt;
        std::optional<std::size_t> r = rs.meet[b][c] ? rs.meet[a][*rs.meet[b][c]] : std::nullopt;
        if (!detail::weq_opt(l, r)) fail("wpl1: weak meet associativity fails");
        l = rs.join[a][b] ? rs.join[*rs.join[a][b]][c] : std::nullopt;
        r = rs.join[b][c] ? rs.join[a][*rs.join[b][c]] : std::nullopt;
        if (!detail::weq_opt(l, r)) fail("wpl2: weak join associativity fails");
      }
    }
  }

  rs.graded = detail::poset_graded_ranks(le, rs.ranks);
  if (!rs.graded) rs.ranks.clear();

  rs.all_definite = true;
  for (const auto& e : rs.elements) {
    bool d = std_lower.apply(e) == e && std_upper.apply(e) == e;
    rs.definite.push_back(d);
    if (!d) rs.all_definite = false;
  }
  return rs;
}

enum class VerdictKind { Prec1, Prec2, Acc5 };

struct Verdict {
  bool pass = true;
  // witnesses: inputs whose measure value escapes S_o, with the value
  std::vector<std::pair<ObjectSet, ObjectSet>> witnesses;
};

struct ImportanceClass {
  std::vector<ObjectSet> sets;
  bool contains(const ObjectSet& v) const {
    return std::find(sets.begin(), sets.end(), v) != sets.end();
  }
};

struct VerdictOps {
  const Operator* l1 = nullptr;
  const Operator* l2 = nullptr;  // Prec1 only
  const Operator* ls = nullptr;
  const Operator* u1 = nullptr;  // Prec2 only
  const Operator* us = nullptr;
};

// True iff the measure lands in S_o for every element of H.
inline Verdict verdict(VerdictKind kind, const std::vector<ObjectSet>& H, const VerdictOps& ops,
                       const ImportanceClass& so) {
  auto need = [](const Operator* p, const char* what) -> const Operator& {
    if (!p) throw input_error(std::string("verdict: missing operator slot ") + what);
    return *p;
  };
  Verdict v;
  for (const auto& x : H) {
    switch (kind) {
      case VerdictKind::Prec1: {
        ObjectSet m1 = nabla(x, need(ops.l1, "l1"), need(ops.ls, "ls"), need(ops.us, "us"));
        ObjectSet m2 = nabla(x, need(ops.l2, "l2"), need(ops.ls, "ls"), need(ops.us, "us"));
        if (!so.contains(m1)) { v.pass = false; v.witnesses.emplace_back(x, m1); }
        else if (!so.contains(m2)) { v.pass = false; v.witnesses.emplace_back(x, m2); }
        break;
      }
      case VerdictKind::Prec2: {
        ObjectSet m = finv(x, need(ops.l1, "l1"), need(ops.ls, "ls"), need(ops.u1, "u1"),
                           need(ops.us, "us"));
        if (!so.contains(m)) { v.pass = false; v.witnesses.emplace_back(x, m); }
        break;
      }
      case VerdictKind::Acc5: {
        ObjectSet m = nabla(x, need(ops.l1, "l1"), need(ops.ls, "ls"), need(ops.us, "us"));
        if (!so.contains(m)) { v.pass = false; v.witnesses.emplace_back(x, m); }
        break;
      }
    }
  }
  return v;
}

}  // namespace rough

#endif  // ROUGHMEASURE_MEASURES_HPP
