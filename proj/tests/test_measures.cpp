#include <catch_amalgamated.hpp>

#include <random>

#include "roughmeasure/io.hpp"
#include "roughmeasure/measures.hpp"

using namespace rough;

namespace {

struct Appendix {
  io::LoadedSpace space = io::load_space_file(std::string(DATA_DIR) + "/appendix_space.json");
  UniversePtr u = space.universe;
  Operator l = Operator::tol_lower(*space.blocks);
  Operator up = Operator::tol_upper(*space.blocks);
  Operator ub = Operator::bited_upper(*space.blocks);
  Operator l1fix = io::load_fixture_file(u, std::string(DATA_DIR) + "/fixture_l1.json");
  Operator u1fix = io::load_fixture_file(u, std::string(DATA_DIR) + "/fixture_u1.json");

  ObjectSet set(const std::vector<std::string>& ids) const { return ObjectSet::of(u, ids); }
  std::vector<ObjectSet> paper_order() const {
    return io::load_subsets_file(u, std::string(DATA_DIR) + "/subsets_appendix.txt");
  }
};

}  // namespace

TEST_CASE("amalg, nabla and finv on the worked example") {
  Appendix ax;

  SECTION("directed difference") {
    REQUIRE(amalg(ax.set({"x4"}), ax.l1fix, ax.l, ax.ub) == ax.set({"x4"}));
    for (const auto& x : all_subsets(ax.u)) {
      REQUIRE(amalg(x, ax.l, ax.l, ax.ub).empty_set());
      REQUIRE(amalg(ObjectSet::empty(ax.u), ax.l, ax.up, ax.ub).empty_set());
    }
  }
  SECTION("printed sequence values") {
    REQUIRE(nabla(ax.set({"x4"}), ax.l1fix, ax.l, ax.ub) == ax.set({"x4"}));
    REQUIRE(nabla(ax.set({"x1"}), ax.up, ax.ub, ax.ub) == ax.set({"x1", "x2", "x3"}));
    REQUIRE(nabla(ax.set({"x1", "x2"}), ax.l1fix, ax.l, ax.ub).empty_set());
    REQUIRE(nabla(ObjectSet::empty(ax.u), ax.l, ax.up, ax.ub).empty_set());
  }
  SECTION("finv reduces to the first nabla when the second vanishes") {
    for (const auto& x : ax.paper_order()) {
      REQUIRE(nabla(x, ax.l1fix, ax.l, ax.u1fix).empty_set());
      REQUIRE(finv(x, ax.l1fix, ax.l, ax.u1fix, ax.ub) == nabla(x, ax.l1fix, ax.l, ax.ub));
    }
  }
  SECTION("finv slot symmetry") {
    for (const auto& x : all_subsets(ax.u))
      REQUIRE(finv(x, ax.l, ax.ub, ax.up, ax.up) == finv(x, ax.ub, ax.l, ax.up, ax.up));
  }
}

TEST_CASE("measure identities hold across the appendix operator pool") {
  Appendix ax;
  std::vector<Operator> pool = {ax.l, ax.up, ax.ub, Operator::identity(ax.u)};

  for (const auto& a : pool)
    for (const auto& b : pool)
      for (const auto& c : pool)
        for (const auto& x : all_subsets(ax.u)) {
          // symmetry in the first two slots
          REQUIRE(nabla(x, a, b, c) == nabla(x, b, a, c));
          // equal slots collapse to the image of the empty set
          REQUIRE(nabla(x, a, a, c) == c.apply(ObjectSet::empty(ax.u)));
        }
}

TEST_CASE("conditional measure bounds") {
  Appendix ax;

  SECTION("contractive pair under a monotone upper operator") {
    // l is contractive and below the identity; ub is monotone and expansive
    for (const auto& x : all_subsets(ax.u)) {
      auto v = nabla(x, ax.l, Operator::identity(ax.u), ax.ub);
      REQUIRE(v == ax.ub.apply(x - ax.l.apply(x)));
      REQUIRE(v.subset_of(ax.ub.apply(x)));
    }
  }
  SECTION("bottom and top are fixed when the operators fix them") {
    REQUIRE(nabla(ObjectSet::empty(ax.u), ax.l, ax.up, ax.ub).empty_set());
    REQUIRE(nabla(ObjectSet::full(ax.u), ax.l, ax.up, ax.ub).empty_set());
  }
  SECTION("amalg bound: contractive chain below a monotone expansive upper") {
    for (const auto& x : all_subsets(ax.u)) {
      // tol_lower(tol_lower) <= tol_lower <= x, so the bound applies
      auto v = amalg(x, ax.l, Operator::identity(ax.u), ax.ub);
      REQUIRE(v.subset_of(ax.ub.apply(x)));
    }
  }
  SECTION("set-difference reading of the subtraction laws") {
    for (const auto& a : all_subsets(ax.u))
      for (const auto& b : all_subsets(ax.u)) {
        REQUIRE((a - a).empty_set());
        if (a.subset_of(b)) {
          REQUIRE((a - b).empty_set());
          for (const auto& c : all_subsets(ax.u)) REQUIRE((a - c).subset_of(b - c));
        }
      }
  }
}

TEST_CASE("measure identities on random tolerance spaces") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 2 + rng() % 5;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("o" + std::to_string(i));
    auto u = make_universe(names);
    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (rng() % 2) pairs.emplace_back(names[i], names[j]);
    auto blocks = tolerance_blocks(
        Relation::from_pairs(u, pairs, Relation::Closure::reflexive_symmetric));
    Operator l = Operator::tol_lower(blocks), up = Operator::tol_upper(blocks),
             ub = Operator::bited_upper(blocks), id = Operator::identity(u);
    for (const auto& x : all_subsets(u)) {
      REQUIRE(nabla(x, l, up, ub) == nabla(x, up, l, ub));
      REQUIRE(nabla(x, l, l, ub).empty_set());
      REQUIRE(nabla(ObjectSet::empty(u), l, up, ub).empty_set());
      REQUIRE(finv(x, l, up, ub, id) == finv(x, up, l, id, ub));
      REQUIRE(amalg(x, l, id, up).subset_of(up.apply(x)));
    }
  }
}

TEST_CASE("range structure of the worked example") {
  Appendix ax;
  auto rs = measure_range(
      all_subsets(ax.u), [&](const ObjectSet& x) { return nabla(x, ax.l1fix, ax.l, ax.ub); },
      ax.l, ax.ub);

  REQUIRE(rs.elements.size() == 2);
  REQUIRE(rs.elements[0] == ObjectSet::empty(ax.u));
  REQUIRE(rs.elements[1] == ax.set({"x4"}));
  REQUIRE(rs.lower_bounded);
  REQUIRE(rs.bottom.has_value());
  REQUIRE(rs.elements[*rs.bottom].empty_set());
  REQUIRE(rs.weak_partial_lattice);
  REQUIRE(rs.graded);
  REQUIRE(rs.ranks == std::vector<std::size_t>{0, 1});
  REQUIRE(rs.all_definite);

  SECTION("join/meet agree with union/intersection where defined") {
    for (std::size_t i = 0; i < rs.elements.size(); ++i)
      for (std::size_t j = 0; j < rs.elements.size(); ++j) {
        if (rs.join[i][j])
          REQUIRE(rs.elements[*rs.join[i][j]] == (rs.elements[i] | rs.elements[j]));
        if (rs.meet[i][j])
          REQUIRE(rs.elements[*rs.meet[i][j]] == (rs.elements[i] & rs.elements[j]));
      }
  }
}

TEST_CASE("degenerate and non-graded ranges") {
  Appendix ax;

  SECTION("single empty-set domain") {
    auto rs = measure_range(
        std::vector<ObjectSet>{ObjectSet::empty(ax.u)},
        [&](const ObjectSet& x) { return nabla(x, ax.l, ax.up, ax.ub); }, ax.l, ax.ub);
    REQUIRE(rs.elements.size() == 1);
    REQUIRE(rs.lower_bounded);
    REQUIRE(rs.graded);
  }
  SECTION("a pentagon-shaped range admits no rank function") {
    auto u = make_universe({"1", "2", "3"});
    std::vector<ObjectSet> domain = {
        ObjectSet::empty(u), ObjectSet::of(u, {"1"}), ObjectSet::of(u, {"1", "2"}),
        ObjectSet::of(u, {"3"}), ObjectSet::full(u)};
    auto id = Operator::identity(u);
    auto rs = measure_range(domain, [&](const ObjectSet& x) { return x; }, id, id);
    REQUIRE(rs.elements.size() == 5);
    REQUIRE_FALSE(rs.graded);
    REQUIRE(rs.weak_partial_lattice);
  }
}

TEST_CASE("precision and accuracy verdicts") {
  Appendix ax;
  ImportanceClass so;
  so.sets = {ObjectSet::empty(ax.u), ax.set({"x4"})};
  auto H = all_subsets(ax.u);

  SECTION("graded fixture column is accurate relative to the block lower") {
    VerdictOps ops;
    ops.l1 = &ax.l1fix;
    ops.ls = &ax.l;
    ops.us = &ax.ub;
    auto v = verdict(VerdictKind::Acc5, H, ops, so);
    REQUIRE(v.pass);
    REQUIRE(v.witnesses.empty());
  }
  SECTION("the two columns are equally precise") {
    VerdictOps ops;
    ops.l1 = &ax.l1fix;
    ops.ls = &ax.l;
    ops.u1 = &ax.u1fix;
    ops.us = &ax.ub;
    REQUIRE(verdict(VerdictKind::Prec2, H, ops, so).pass);
  }
  SECTION("upper is not accurate relative to bited upper") {
    VerdictOps ops;
    ops.l1 = &ax.up;
    ops.ls = &ax.ub;
    ops.us = &ax.ub;
    auto v = verdict(VerdictKind::Acc5, H, ops, so);
    REQUIRE_FALSE(v.pass);
    bool witness_a1 = false;
    for (const auto& [x, val] : v.witnesses)
      if (x == ax.set({"x1"}) && val == ax.set({"x1", "x2", "x3"})) witness_a1 = true;
    REQUIRE(witness_a1);
  }
  SECTION("Prec1 compares two lower slots against the same standard") {
    VerdictOps ops;
    ops.l1 = &ax.l1fix;
    ops.l2 = &ax.l;
    ops.ls = &ax.l;
    ops.us = &ax.ub;
    auto v = verdict(VerdictKind::Prec1, H, ops, so);
    REQUIRE(v.pass);
  }
  SECTION("missing operator slot is an input error") {
    VerdictOps ops;
    ops.l1 = &ax.l1fix;
    REQUIRE_THROWS_AS(verdict(VerdictKind::Acc5, H, ops, so), input_error);
  }
}
