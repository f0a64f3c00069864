#include <catch_amalgamated.hpp>

#include "roughmeasure/core.hpp"

using namespace rough;

namespace {

UniversePtr appendix_universe() { return make_universe({"x1", "x2", "x3", "x4"}); }

Relation appendix_tolerance(const UniversePtr& u) {
  return Relation::from_pairs(u, {{"x1", "x2"}, {"x2", "x3"}}, Relation::Closure::reflexive_symmetric);
}

InformationTable make_table(UniversePtr u, std::vector<std::string> attrs,
                            std::map<std::pair<std::string, std::string>, std::set<std::string>> val) {
  return InformationTable(std::move(u), std::move(attrs), std::move(val));
}

}  // namespace

TEST_CASE("universe construction and subset encoding") {
  auto u = appendix_universe();
  REQUIRE(u->size() == 4);
  REQUIRE(u->index("x3") == 2);
  REQUIRE_FALSE(u->find("x9").has_value());
  REQUIRE_THROWS_AS(make_universe({}), input_error);
  REQUIRE_THROWS_AS(make_universe({"a", "a"}), input_error);

  auto a = ObjectSet::of(u, {"x1", "x3"});
  REQUIRE(a.bits() == 0b0101);
  REQUIRE(a.to_string() == "{x1,x3}");
  REQUIRE(ObjectSet::empty(u).to_string() == "{}");
  REQUIRE((a | ObjectSet::of(u, {"x2"})).to_string() == "{x1,x2,x3}");
  REQUIRE((a - ObjectSet::of(u, {"x1"})) == ObjectSet::of(u, {"x3"}));
  REQUIRE(a.complement() == ObjectSet::of(u, {"x2", "x4"}));
  REQUIRE(a.subset_of(ObjectSet::full(u)));

  auto other = make_universe({"y1"});
  REQUIRE_THROWS_AS(a | ObjectSet::full(other), input_error);
}

TEST_CASE("ind_partition follows the attribute-agreement definition") {
  auto u = make_universe({"o1", "o2", "o3"});
  auto t = make_table(u, {"a", "b"},
                      {{{"a", "o1"}, {"1"}}, {{"a", "o2"}, {"2"}}, {{"a", "o3"}, {"3"}},
                       {{"b", "o1"}, {"x"}}, {{"b", "o2"}, {"x"}}, {{"b", "o3"}, {"x"}}});

  SECTION("pairwise distinct rows give singleton blocks") {
    auto g = ind_partition(t, {"a", "b"});
    REQUIRE(g.blocks().size() == 3);
    for (const auto& b : g.blocks()) REQUIRE(b.count() == 1);
  }
  SECTION("empty attribute set gives one block") {
    auto g = ind_partition(t, {});
    REQUIRE(g.blocks().size() == 1);
    REQUIRE(g.blocks()[0] == ObjectSet::full(u));
  }
  SECTION("unknown attribute is an input error") {
    REQUIRE_THROWS_AS(ind_partition(t, {"zz"}), input_error);
  }
}

TEST_CASE("ind_partition groups exactly the agreeing objects") {
  auto u = make_universe({"o1", "o2", "o3", "o4"});
  auto t = make_table(u, {"a"},
                      {{{"a", "o1"}, {"v"}}, {{"a", "o2"}, {"v"}}, {{"a", "o3"}, {"w"}},
                       {{"a", "o4"}, {"z"}}});
  auto g = ind_partition(t, {"a"});
  REQUIRE(g.blocks().size() == 3);
  REQUIRE(g.blocks()[0] == ObjectSet::of(u, {"o1", "o2"}));
}

TEST_CASE("monotone refinement: more attributes refine the partition") {
  auto u = make_universe({"o1", "o2", "o3", "o4"});
  auto t = make_table(u, {"a", "b"},
                      {{{"a", "o1"}, {"v"}}, {{"a", "o2"}, {"v"}}, {{"a", "o3"}, {"v"}},
                       {{"a", "o4"}, {"z"}},
                       {{"b", "o1"}, {"p"}}, {{"b", "o2"}, {"q"}}, {{"b", "o3"}, {"p"}},
                       {{"b", "o4"}, {"p"}}});
  auto coarse = ind_partition(t, {"a"});
  auto fine = ind_partition(t, {"a", "b"});
  for (const auto& fb : fine.blocks()) {
    bool inside_some = false;
    for (const auto& cb : coarse.blocks())
      if (fb.subset_of(cb)) inside_some = true;
    REQUIRE(inside_some);
  }
}

TEST_CASE("derive_relation comparators and quantifiers") {
  auto u = make_universe({"o1", "o2", "o3"});

  SECTION("equal/forall coincides with IND") {
    auto t = make_table(u, {"a"},
                        {{{"a", "o1"}, {"v"}}, {{"a", "o2"}, {"v"}}, {{"a", "o3"}, {"w"}}});
    auto rel = derive_relation(t, Comparator::equal, Quantifier::forall, {"a"});
    REQUIRE(rel.reflexive());
    REQUIRE(rel.symmetric());
    REQUIRE(rel.transitive());
    auto g = ind_partition(t, {"a"});
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        bool same_block = false;
        for (const auto& b : g.blocks())
          if (b.contains(i) && b.contains(j)) same_block = true;
        REQUIRE(rel.related(i, j) == same_block);
      }
  }
  SECTION("overlap/forall with one shared token is universal") {
    auto t = make_table(u, {"a"},
                        {{{"a", "o1"}, {"s", "1"}}, {{"a", "o2"}, {"s", "2"}}, {{"a", "o3"}, {"s"}}});
    auto rel = derive_relation(t, Comparator::overlap, Quantifier::forall, {"a"});
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) REQUIRE(rel.related(i, j));
  }
  SECTION("overlap pattern generates the expected tolerance") {
    auto t = make_table(u, {"a"},
                        {{{"a", "o1"}, {"p"}}, {{"a", "o2"}, {"p", "q"}}, {{"a", "o3"}, {"q"}}});
    auto rel = derive_relation(t, Comparator::overlap, Quantifier::forall, {"a"});
    REQUIRE(rel.related(0, 1));
    REQUIRE(rel.related(1, 2));
    REQUIRE_FALSE(rel.related(0, 2));
    REQUIRE(rel.reflexive());
    REQUIRE(rel.symmetric());
  }
  SECTION("empty attribute set requires the equal comparator") {
    auto t = make_table(u, {"a"}, {});
    REQUIRE_THROWS_AS(derive_relation(t, Comparator::overlap, Quantifier::forall, {}), input_error);
  }
}

TEST_CASE("tolerance_blocks enumerates exactly the maximal cliques") {
  auto u = appendix_universe();

  SECTION("worked-example relation") {
    auto g = tolerance_blocks(appendix_tolerance(u));
    REQUIRE(g.blocks().size() == 3);
    REQUIRE(g.blocks()[0] == ObjectSet::of(u, {"x1", "x2"}));
    REQUIRE(g.blocks()[1] == ObjectSet::of(u, {"x2", "x3"}));
    REQUIRE(g.blocks()[2] == ObjectSet::of(u, {"x4"}));
  }
  SECTION("identity relation gives singletons") {
    auto g = tolerance_blocks(Relation::from_pairs(u, {}, Relation::Closure::reflexive_symmetric));
    REQUIRE(g.blocks().size() == 4);
    for (const auto& b : g.blocks()) REQUIRE(b.count() == 1);
  }
  SECTION("universal relation gives one block") {
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& a : u->objects())
      for (const auto& b : u->objects()) pairs.emplace_back(a, b);
    auto g = tolerance_blocks(Relation::from_pairs(u, pairs, Relation::Closure::none));
    REQUIRE(g.blocks().size() == 1);
    REQUIRE(g.blocks()[0] == ObjectSet::full(u));
  }
  SECTION("non-symmetric input is rejected") {
    auto rel = Relation::from_pairs(u, {{"x1", "x2"}}, Relation::Closure::none);
    REQUIRE_THROWS_AS(tolerance_blocks(rel), precondition_error);
  }
  SECTION("block maximality: no block extends to a larger clique") {
    auto rel = appendix_tolerance(u);
    auto g = tolerance_blocks(rel);
    for (const auto& b : g.blocks()) {
      for (std::size_t z = 0; z < u->size(); ++z) {
        if (b.contains(z)) continue;
        bool all_related = true;
        for (std::size_t w = 0; w < u->size(); ++w)
          if (b.contains(w) && !rel.related(z, w)) all_related = false;
        REQUIRE_FALSE(all_related);
      }
    }
  }
}

TEST_CASE("neighborhood maps") {
  auto u = appendix_universe();
  auto rel = appendix_tolerance(u);

  SECTION("worked-example predecessor neighborhoods") {
    auto g = neighborhood_map(rel, NeighborhoodMode::predecessor);
    REQUIRE(g.neighborhood(0) == ObjectSet::of(u, {"x1", "x2"}));
    REQUIRE(g.neighborhood(1) == ObjectSet::of(u, {"x1", "x2", "x3"}));
    REQUIRE(g.neighborhood(2) == ObjectSet::of(u, {"x2", "x3"}));
    REQUIRE(g.neighborhood(3) == ObjectSet::of(u, {"x4"}));
  }
  SECTION("identity relation gives n(z) = {z}") {
    auto g = neighborhood_map(Relation::from_pairs(u, {}, Relation::Closure::reflexive_symmetric),
                              NeighborhoodMode::successor);
    for (std::size_t z = 0; z < u->size(); ++z) {
      REQUIRE(g.neighborhood(z).count() == 1);
      REQUIRE(g.neighborhood(z).contains(z));
    }
  }
  SECTION("symmetric relation: predecessor and successor maps coincide") {
    auto p = neighborhood_map(rel, NeighborhoodMode::predecessor);
    auto s = neighborhood_map(rel, NeighborhoodMode::successor);
    for (std::size_t z = 0; z < u->size(); ++z) REQUIRE(p.neighborhood(z) == s.neighborhood(z));
  }
  SECTION("reflexive relation puts z in n(z)") {
    for (auto mode : {NeighborhoodMode::predecessor, NeighborhoodMode::successor}) {
      auto g = neighborhood_map(rel, mode);
      for (std::size_t z = 0; z < u->size(); ++z) REQUIRE(g.neighborhood(z).contains(z));
    }
  }
}

TEST_CASE("partition validation rejects overlap and gaps") {
  auto u = appendix_universe();
  REQUIRE_THROWS_AS(Granulation::partition(
                        u, {ObjectSet::of(u, {"x1", "x2"}), ObjectSet::of(u, {"x2", "x3", "x4"})}),
                    input_error);
  REQUIRE_THROWS_AS(Granulation::partition(u, {ObjectSet::of(u, {"x1", "x2"})}), input_error);
  REQUIRE_NOTHROW(Granulation::partition(
      u, {ObjectSet::of(u, {"x1", "x2"}), ObjectSet::of(u, {"x3", "x4"})}));
}

TEST_CASE("relation flags are computed, not asserted") {
  auto u = make_universe({"a", "b", "c"});
  auto chain = Relation::from_pairs(u, {{"a", "b"}, {"b", "c"}}, Relation::Closure::none);
  REQUIRE_FALSE(chain.reflexive());
  REQUIRE_FALSE(chain.symmetric());
  REQUIRE_FALSE(chain.transitive());  // (a,b),(b,c) without (a,c)
  auto closed = Relation::from_pairs(u, {{"a", "b"}, {"b", "c"}, {"a", "c"}, {"a", "a"},
                                         {"b", "b"}, {"c", "c"}},
                                     Relation::Closure::none);
  REQUIRE(closed.transitive());
  REQUIRE(closed.reflexive());
}
