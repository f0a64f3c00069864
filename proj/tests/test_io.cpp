#include <catch_amalgamated.hpp>

#include <sstream>

#include "roughmeasure/io.hpp"

using namespace rough;

namespace {
const std::string data = DATA_DIR;
}

TEST_CASE("information table CSV") {
  SECTION("round trip of a small table") {
    std::istringstream in(
        "object,color,shape\n"
        "o1,red,round\n"
        "o2,red|green,round\n"
        "o3,,square\n");
    auto t = io::load_table_csv(in);
    REQUIRE(t.universe()->size() == 3);
    REQUIRE(t.attributes() == std::vector<std::string>{"color", "shape"});
    REQUIRE(t.value("color", "o2") == std::set<std::string>{"red", "green"});
    REQUIRE(t.value("color", "o3").empty());
  }
  SECTION("missing object header is rejected") {
    std::istringstream in("id,color\no1,red\n");
    REQUIRE_THROWS_AS(io::load_table_csv(in), input_error);
  }
  SECTION("ragged row is rejected") {
    std::istringstream in("object,color\no1,red,extra\n");
    REQUIRE_THROWS_AS(io::load_table_csv(in), input_error);
  }
}

TEST_CASE("granulation JSON layouts") {
  SECTION("pairs layout with closure builds blocks and neighborhoods") {
    auto sp = io::load_space_file(data + "/appendix_space.json");
    REQUIRE(sp.universe->size() == 4);
    REQUIRE(sp.relation.has_value());
    REQUIRE(sp.relation->reflexive());
    REQUIRE(sp.relation->symmetric());
    REQUIRE(sp.blocks.has_value());
    REQUIRE(sp.blocks->blocks().size() == 3);
    REQUIRE(sp.neighborhoods.has_value());
    REQUIRE(sp.neighborhoods->neighborhood(sp.universe->index("x4")) ==
            ObjectSet::of(sp.universe, {"x4"}));
  }
  SECTION("blocks layout with an inferred universe") {
    auto sp = io::load_space_json(json::parse(R"({"blocks": [["b","a"],["c"]]})"));
    REQUIRE(sp.universe->objects() == std::vector<std::string>{"a", "b", "c"});  // sorted
    REQUIRE(sp.blocks.has_value());
    REQUIRE_FALSE(sp.relation.has_value());
  }
  SECTION("neighborhood layout: empty list defaults to the singleton") {
    auto j = json::parse(R"({"universe": ["a","b"], "neighborhoods": {"a": ["a","b"], "b": []}})");
    auto sp = io::load_space_json(j);
    REQUIRE(sp.neighborhoods->neighborhood(1) == ObjectSet::of(sp.universe, {"b"}));
    auto strict = io::load_space_json(j, /*empty_singletons=*/true);
    REQUIRE(strict.neighborhoods->neighborhood(1).empty_set());
  }
  SECTION("layoutless object is rejected") {
    REQUIRE_THROWS_AS(io::load_space_json(json::parse(R"({"universe": ["a"]})")), input_error);
  }
  SECTION("malformed JSON names the file") {
    REQUIRE_THROWS_WITH(io::load_space_file(data + "/bad_granulation.json"),
                        Catch::Matchers::ContainsSubstring("bad_granulation.json"));
  }
  SECTION("unknown object in a block") {
    REQUIRE_THROWS_AS(io::load_space_file(data + "/bad_object.json"), input_error);
  }
}

TEST_CASE("fixture and subset parsing") {
  auto u = make_universe({"x1", "x2", "x3", "x4"});

  SECTION("subset text forms") {
    REQUIRE(io::parse_subset(u, "x1,x3") == ObjectSet::of(u, {"x1", "x3"}));
    REQUIRE(io::parse_subset(u, "{x1, x3}") == ObjectSet::of(u, {"x1", "x3"}));
    REQUIRE(io::parse_subset(u, "").empty_set());
    REQUIRE(io::parse_subset(u, "{}").empty_set());
    REQUIRE_THROWS_AS(io::parse_subset(u, "x9"), input_error);
    REQUIRE(io::subset_key(ObjectSet::of(u, {"x3", "x1"})) == "x1,x3");
  }
  SECTION("fixture file round trip") {
    auto fix = io::load_fixture_file(u, data + "/fixture_l1.json");
    REQUIRE(fix.apply(ObjectSet::of(u, {"x1", "x2"})) == ObjectSet::of(u, {"x1", "x2"}));
    REQUIRE(fix.apply(ObjectSet::of(u, {"x4"})).empty_set());
  }
  SECTION("subsets file preserves order and reads {} as empty") {
    auto subs = io::load_subsets_file(u, data + "/subsets_appendix.txt");
    REQUIRE(subs.size() == 16);
    REQUIRE(subs.front() == ObjectSet::of(u, {"x1"}));
    REQUIRE(subs[14] == ObjectSet::full(u));
    REQUIRE(subs.back().empty_set());
  }
}

TEST_CASE("structure JSON") {
  SECTION("listed cover pairs are closed and the closure is noted") {
    std::vector<std::string> notes;
    auto s = io::load_structure_file(data + "/chain5.json", &notes);
    REQUIRE(s.carrier.size() == 5);
    REQUIRE(s.le(s.bot, s.top));
    REQUIRE(s.le(0, 0));
    // cover pairs 0<p, p<q, q<r, r<1 imply 0<r transitively
    REQUIRE(s.le(s.bot, 2));
    REQUIRE(notes.size() == 1);
    REQUIRE(notes[0].find("closure") != std::string::npos);
  }
  SECTION("unknown element and duplicate carrier are input errors") {
    REQUIRE_THROWS_AS(io::load_structure_json(json::parse(
                          R"({"carrier": ["a"], "leq": [["a","zz"]], "constants": {"bot":"a","top":"a"}})")),
                      input_error);
    REQUIRE_THROWS_AS(io::load_structure_json(json::parse(
                          R"({"carrier": ["a","a"], "leq": [], "constants": {"bot":"a","top":"a"}})")),
                      input_error);
  }
}

TEST_CASE("prediction CSV auto-detection") {
  SECTION("score column") {
    std::ifstream in(data + "/preds_scores.csv");
    auto p = io::load_predictions_csv(in, "preds_scores.csv");
    REQUIRE(p.has_scores);
    REQUIRE(p.scores.size() == p.ids.size());
    REQUIRE(p.predicted.empty());
  }
  SECTION("label column") {
    std::ifstream in(data + "/preds_labels.csv");
    auto p = io::load_predictions_csv(in, "preds_labels.csv");
    REQUIRE_FALSE(p.has_scores);
    REQUIRE(p.predicted.size() == p.ids.size());
  }
  SECTION("mixed rows are rejected") {
    std::ifstream in(data + "/bad_predictions.csv");
    REQUIRE_THROWS_WITH(io::load_predictions_csv(in, "bad_predictions.csv"),
                        Catch::Matchers::ContainsSubstring("mixed"));
  }
  SECTION("empty body is rejected") {
    std::istringstream in("id,score,truth\n");
    REQUIRE_THROWS_AS(io::load_predictions_csv(in), input_error);
  }
}

TEST_CASE("emitters are deterministic") {
  auto space = io::load_space_file(data + "/appendix_space.json");
  auto u = space.universe;
  auto l = Operator::tol_lower(*space.blocks);
  std::vector<ObjectSet> subsets = {ObjectSet::of(u, {"x1"}), ObjectSet::full(u)};
  std::vector<ObjectSet> col;
  for (const auto& x : subsets) col.push_back(l.apply(x));

  SECTION("tsv approx table") {
    std::ostringstream a, b;
    io::emit_approx_table(a, subsets, {{"l", col}}, io::Format::tsv);
    io::emit_approx_table(b, subsets, {{"l", col}}, io::Format::tsv);
    REQUIRE(a.str() == b.str());
    REQUIRE(a.str() == "subset\tl\n{x1}\t{}\n{x1,x2,x3,x4}\t{x1,x2,x3,x4}\n");
  }
  SECTION("markdown approx table") {
    std::ostringstream a;
    io::emit_approx_table(a, subsets, {{"l", col}}, io::Format::md);
    REQUIRE(a.str().find("| subset | l |") == 0);
  }
  SECTION("json approx table parses back") {
    std::ostringstream a;
    io::emit_approx_table(a, subsets, {{"l", col}}, io::Format::json_fmt);
    auto j = json::parse(a.str());
    REQUIRE(j.size() == 2);
    REQUIRE(j[0]["subset"] == "x1");
    REQUIRE(j[0]["l"] == "");
  }
  SECTION("range JSON carries order, tables, and flags") {
    auto rs = measure_range(
        all_subsets(u),
        [&](const ObjectSet& x) {
          return nabla(x, io::load_fixture_file(u, data + "/fixture_l1.json"), l,
                       Operator::bited_upper(*space.blocks));
        },
        l, Operator::bited_upper(*space.blocks));
    auto j = io::range_to_json(rs);
    REQUIRE(j["elements"] == json::array({"", "x4"}));
    REQUIRE(j["graded"] == true);
    REQUIRE(j["ranks"][""] == 0);
    REQUIRE(j["ranks"]["x4"] == 1);
    REQUIRE(j["bottom"] == "");
    REQUIRE(j["all-definite"] == true);
  }
  SECTION("undefined metrics render with a reason") {
    auto r = rates(ConfusionCounts{}, RateMode::paper);
    REQUIRE(io::render_rational(r.tpr).rfind("undefined(", 0) == 0);
  }
  SECTION("format names") {
    REQUIRE(io::parse_format("tsv") == io::Format::tsv);
    REQUIRE(io::parse_format("json") == io::Format::json_fmt);
    REQUIRE(io::parse_format("md") == io::Format::md);
    REQUIRE_THROWS_AS(io::parse_format("yaml"), input_error);
  }
}
