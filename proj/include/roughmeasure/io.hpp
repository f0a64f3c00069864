#ifndef ROUGHMEASURE_IO_HPP
#define ROUGHMEASURE_IO_HPP

#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "roughmeasure/algebra.hpp"
#include "roughmeasure/approx.hpp"
#include "roughmeasure/core.hpp"
#include "roughmeasure/measures.hpp"
#include "roughmeasure/metrics.hpp"

namespace rough {

using json = nlohmann::json;

namespace io {

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json parse_json_file(const std::string& path) {
  try {
    return json::parse(slurp(path));
  } catch (const json::parse_error& e) {
    throw input_error("malformed JSON in " + path + ": " + e.what());
  }
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) { out.push_back(cur); cur.clear(); }
    else cur += ch;
  }
  out.push_back(cur);
  return out;
}

inline std::string strip(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  return s.substr(i);
}

// ---------------------------------------------------------------------------
// Information table CSV: first column header `object`, cells are
// `|`-separated value tokens, empty cell = empty set.

inline InformationTable load_table_csv(std::istream& in, const std::string& origin = "<stream>") {
  std::string line;
  if (!std::getline(in, line)) throw input_error(origin + ": empty CSV");
  auto header = split(strip(line), ',');
  if (header.empty() || strip(header[0]) != "object")
    throw input_error(origin + ": first CSV column must be `object`");
  std::vector<std::string> attrs(header.begin() + 1, header.end());
  for (auto& a : attrs) a = strip(a);

  std::vector<std::string> objects;
  std::map<std::pair<std::string, std::string>, std::set<std::string>> valuation;
  while (std::getline(in, line)) {
    line = strip(line);
    if (line.empty()) continue;
    auto cells = split(line, ',');
    if (cells.size() != header.size())
      throw input_error(origin + ": row has " + std::to_string(cells.size()) + " cells, expected " +
                        std::to_string(header.size()));
    std::string obj = strip(cells[0]);
    objects.push_back(obj);
    for (std::size_t i = 0; i < attrs.size(); ++i) {
      std::set<std::string> vals;
      std::string cell = strip(cells[i + 1]);
      if (!cell.empty())
        for (const auto& tok : split(cell, '|')) vals.insert(strip(tok));
      valuation[{attrs[i], obj}] = std::move(vals);
    }
  }
  return InformationTable(make_universe(std::move(objects)), std::move(attrs), std::move(valuation));
}

inline InformationTable load_table_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open file: " + path);
  return load_table_csv(in, path);
}

// ---------------------------------------------------------------------------
// Relation/granulation JSON. Three layouts:
//   {"neighborhoods": {"x1": ["x1","x2"], ...}}
//   {"blocks": [["x1","x2"], ...]}
//   {"pairs": [["x1","x2"], ...], "closure": "reflexive-symmetric"|"none"}
// plus an optional "universe": [...] fixing the object order.

struct LoadedSpace {
  UniversePtr universe;
  std::optional<Relation> relation;
  std::optional<Granulation> blocks;  // block family (maximal cliques)
  std::optional<Granulation> neighborhoods;
};

inline LoadedSpace load_space_json(const json& j, bool empty_singletons = false) {
  if (!j.is_object()) throw input_error("granulation JSON must be an object");
  std::vector<std::string> universe;
  if (j.contains("universe")) {
    for (const auto& o : j.at("universe")) universe.push_back(o.get<std::string>());
  } else {
    std::set<std::string> seen;
    auto add = [&](const std::string& o) { seen.insert(o); };
    if (j.contains("neighborhoods"))
      for (const auto& [k, v] : j.at("neighborhoods").items()) {
        add(k);
        for (const auto& o : v) add(o.get<std::string>());
      }
    if (j.contains("blocks"))
      for (const auto& b : j.at("blocks"))
        for (const auto& o : b) add(o.get<std::string>());
    if (j.contains("pairs"))
      for (const auto& p : j.at("pairs")) {
        add(p.at(0).get<std::string>());
        add(p.at(1).get<std::string>());
      }
    universe.assign(seen.begin(), seen.end());  // sorted, deterministic
  }
  LoadedSpace out;
  out.universe = make_universe(universe);

  if (j.contains("neighborhoods")) {
    std::vector<ObjectSet> map(out.universe->size(), ObjectSet::empty(out.universe));
    for (const auto& [k, v] : j.at("neighborhoods").items()) {
      std::vector<std::string> members;
      for (const auto& o : v) members.push_back(o.get<std::string>());
      // an empty list reads as {x} unless --empty-singletons is in force
      if (members.empty() && !empty_singletons) members.push_back(k);
      map[out.universe->index(k)] = ObjectSet::of(out.universe, members);
    }
    out.neighborhoods = Granulation::neighborhoods(out.universe, std::move(map));
  } else if (j.contains("blocks")) {
    std::vector<ObjectSet> blocks;
    for (const auto& b : j.at("blocks")) {
      std::vector<std::string> members;
      for (const auto& o : b) members.push_back(o.get<std::string>());
      blocks.push_back(ObjectSet::of(out.universe, members));
    }
    out.blocks = Granulation::block_family(out.universe, std::move(blocks));
  } else if (j.contains("pairs")) {
    std::string closure = j.value("closure", "none");
    Relation::Closure c;
    if (closure == "reflexive-symmetric") c = Relation::Closure::reflexive_symmetric;
    else if (closure == "none") c = Relation::Closure::none;
    else throw input_error("unknown closure mode: " + closure);
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& p : j.at("pairs"))
      pairs.emplace_back(p.at(0).get<std::string>(), p.at(1).get<std::string>());
    out.relation = Relation::from_pairs(out.universe, pairs, c);
    if (out.relation->reflexive() && out.relation->symmetric())
      out.blocks = tolerance_blocks(*out.relation);
    out.neighborhoods = neighborhood_map(*out.relation, NeighborhoodMode::predecessor);
  } else {
    throw input_error("granulation JSON needs one of: neighborhoods, blocks, pairs");
  }
  return out;
}

inline LoadedSpace load_space_file(const std::string& path, bool empty_singletons = false) {
  return load_space_json(parse_json_file(path), empty_singletons);
}

// ---------------------------------------------------------------------------
// Fixture JSON: {"x1,x2": "x1,x2", ...}; keys/values are comma-joined
// sorted object ids, "" for the empty set.

inline ObjectSet parse_subset(const UniversePtr& u, const std::string& text) {
  std::string t = strip(text);
  if (!t.empty() && t.front() == '{' && t.back() == '}') t = t.substr(1, t.size() - 2);
  if (strip(t).empty()) return ObjectSet::empty(u);
  std::vector<std::string> ids;
  for (const auto& part : split(t, ',')) ids.push_back(strip(part));
  return ObjectSet::of(u, ids);
}

inline std::string subset_key(const ObjectSet& a) {
  std::string s;
  bool first = true;
  for (const auto& n : a.names()) {
    if (!first) s += ',';
    s += n;
    first = false;
  }
  return s;
}

inline Operator load_fixture_json(const UniversePtr& u, const json& j, const std::string& name) {
  if (!j.is_object()) throw input_error("fixture JSON must map subsets to subsets");
  std::map<std::uint64_t, std::uint64_t> table;
  for (const auto& [k, v] : j.items())
    table[parse_subset(u, k).bits()] = parse_subset(u, v.get<std::string>()).bits();
  return Operator::fixture(u, std::move(table), name);
}

inline Operator load_fixture_file(const UniversePtr& u, const std::string& path) {
  return load_fixture_json(u, parse_json_file(path), "fix:" + path);
}

// Subsets file: one subset per line ("x1,x2" or "{x1,x2}"; blank line or
// "{}" for the empty set). '#' starts a comment.
inline std::vector<ObjectSet> load_subsets_file(const UniversePtr& u, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open file: " + path);
  std::vector<ObjectSet> out;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = strip(line);
    if (line.empty()) continue;
    out.push_back(parse_subset(u, line == "{}" ? "" : line));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Structure JSON for the axiom checker.

inline FiniteStructure load_structure_json(const json& j, std::vector<std::string>* load_notes = nullptr) {
  if (!j.is_object()) throw input_error("structure JSON must be an object");
  FiniteStructure s;
  for (const auto& e : j.at("carrier")) s.carrier.push_back(e.get<std::string>());
  const std::size_t n = s.carrier.size();
  if (n == 0) throw input_error("empty carrier");
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i)
    if (!index.emplace(s.carrier[i], i).second)
      throw input_error("duplicate carrier element: " + s.carrier[i]);
  auto idx = [&](const std::string& name) {
    auto it = index.find(name);
    if (it == index.end()) throw input_error("unknown carrier element: " + name);
    return it->second;
  };

  s.leq.assign(n, std::vector<bool>(n, false));
  for (const auto& p : j.at("leq")) s.leq[idx(p.at(0))][idx(p.at(1))] = true;
  // reflexive-transitive closure, applied automatically and recorded
  bool closed = false;
  for (std::size_t i = 0; i < n; ++i)
    if (!s.leq[i][i]) { s.leq[i][i] = true; closed = true; }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t jj = 0; jj < n; ++jj)
        if (s.leq[i][k] && s.leq[k][jj] && !s.leq[i][jj]) { s.leq[i][jj] = true; closed = true; }
  if (closed && load_notes)
    load_notes->push_back("leq: reflexive-transitive closure applied to the listed pairs");

  const auto& constants = j.at("constants");
  s.bot = idx(constants.at("bot"));
  s.top = idx(constants.at("top"));

  if (j.contains("unary"))
    for (const auto& [slot, table] : j.at("unary").items()) {
      UnaryTable t(n);
      for (const auto& [arg, val] : table.items()) t[idx(arg)] = idx(val.get<std::string>());
      s.unary[slot] = std::move(t);
    }
  if (j.contains("binary"))
    for (const auto& [slot, table] : j.at("binary").items()) {
      BinaryTable t(n, std::vector<Val>(n));
      for (const auto& [args, val] : table.items()) {
        auto parts = split(args, '|');
        if (parts.size() != 2) throw input_error("binary key must be `x|y`: " + args);
        t[idx(strip(parts[0]))][idx(strip(parts[1]))] = idx(val.get<std::string>());
      }
      s.binary[slot] = std::move(t);
    }
  s.validate();
  return s;
}

inline FiniteStructure load_structure_file(const std::string& path,
                                           std::vector<std::string>* load_notes = nullptr) {
  return load_structure_json(parse_json_file(path), load_notes);
}

// ---------------------------------------------------------------------------
// Prediction CSV: columns id, score-or-label, truth.

struct Predictions {
  std::vector<std::string> ids, predicted, truth;
  std::vector<double> scores;
  bool has_scores = false;
};

inline Predictions load_predictions_csv(std::istream& in, const std::string& origin = "<stream>") {
  Predictions p;
  std::string line;
  if (!std::getline(in, line)) throw input_error(origin + ": empty CSV");
  auto header = split(strip(line), ',');
  if (header.size() != 3) throw input_error(origin + ": expected columns id,score-or-label,truth");
  bool first_row = true;
  while (std::getline(in, line)) {
    line = strip(line);
    if (line.empty()) continue;
    auto cells = split(line, ',');
    if (cells.size() != 3) throw input_error(origin + ": malformed row: " + line);
    p.ids.push_back(strip(cells[0]));
    std::string mid = strip(cells[1]);
    p.truth.push_back(strip(cells[2]));
    char* end = nullptr;
    double v = std::strtod(mid.c_str(), &end);
    bool numeric = end && *end == '\0' && !mid.empty();
    if (first_row) {
      p.has_scores = numeric;
      first_row = false;
    } else if (numeric != p.has_scores) {
      throw input_error(origin + ": mixed score and label rows");
    }
    if (numeric) p.scores.push_back(v);
    else p.predicted.push_back(mid);
  }
  if (p.ids.empty()) throw input_error(origin + ": no data rows");
  return p;
}

// ---------------------------------------------------------------------------
// Emitters. All output is deterministic and byte-stable.

enum class Format { tsv, json_fmt, md };

inline Format parse_format(const std::string& s) {
  if (s == "tsv") return Format::tsv;
  if (s == "json") return Format::json_fmt;
  if (s == "md") return Format::md;
  throw input_error("unknown format: " + s);
}

inline void emit_measure_table(std::ostream& os, const MeasureTable& t, const std::string& column,
                               Format fmt) {
  if (fmt == Format::tsv) {
    os << "subset\t" << column << "\n";
    for (const auto& row : t.rows) os << row.input.to_string() << '\t' << row.result.to_string() << "\n";
  } else if (fmt == Format::md) {
    os << "| subset | " << column << " |\n|---|---|\n";
    for (const auto& row : t.rows)
      os << "| " << row.input.to_string() << " | " << row.result.to_string() << " |\n";
  } else {
    json j = json::array();
    for (const auto& row : t.rows)
      j.push_back({{"subset", subset_key(row.input)}, {"result", subset_key(row.result)}});
    os << j.dump(2) << "\n";
  }
}

// Multi-column approximation table (cmd approx).
inline void emit_approx_table(std::ostream& os, const std::vector<ObjectSet>& subsets,
                              const std::vector<std::pair<std::string, std::vector<ObjectSet>>>& columns,
                              Format fmt) {
  if (fmt == Format::tsv || fmt == Format::md) {
    const char* sep = fmt == Format::tsv ? "\t" : " | ";
    if (fmt == Format::md) os << "| ";
    os << "subset";
    for (const auto& [name, _] : columns) os << sep << name;
    if (fmt == Format::md) os << " |";
    os << "\n";
    if (fmt == Format::md) {
      os << "|---";
      for (std::size_t i = 0; i < columns.size(); ++i) os << "|---";
      os << "|\n";
    }
    for (std::size_t r = 0; r < subsets.size(); ++r) {
      if (fmt == Format::md) os << "| ";
      os << subsets[r].to_string();
      for (const auto& [_, col] : columns) os << sep << col[r].to_string();
      if (fmt == Format::md) os << " |";
      os << "\n";
    }
  } else {
    json j = json::array();
    for (std::size_t r = 0; r < subsets.size(); ++r) {
      json row{{"subset", subset_key(subsets[r])}};
      for (const auto& [name, col] : columns) row[name] = subset_key(col[r]);
      j.push_back(std::move(row));
    }
    os << j.dump(2) << "\n";
  }
}

inline json range_to_json(const RangeStructure& rs) {
  json j;
  j["elements"] = json::array();
  for (const auto& e : rs.elements) j["elements"].push_back(subset_key(e));
  j["order-pairs"] = json::array();
  for (auto [a, b] : rs.order_pairs)
    j["order-pairs"].push_back({subset_key(rs.elements[a]), subset_key(rs.elements[b])});
  auto table = [&](const std::vector<std::vector<std::optional<std::size_t>>>& t) {
    json out = json::object();
    for (std::size_t a = 0; a < t.size(); ++a)
      for (std::size_t b = 0; b < t.size(); ++b)
        if (t[a][b])
          out[subset_key(rs.elements[a]) + "|" + subset_key(rs.elements[b])] =
              subset_key(rs.elements[*t[a][b]]);
    return out;
  };
  j["join"] = table(rs.join);
  j["meet"] = table(rs.meet);
  j["lattice"] = rs.weak_partial_lattice;
  j["lower-bounded"] = rs.lower_bounded;
  if (rs.bottom) j["bottom"] = subset_key(rs.elements[*rs.bottom]);
  j["graded"] = rs.graded;
  if (rs.graded) {
    json ranks = json::object();
    for (std::size_t i = 0; i < rs.elements.size(); ++i)
      ranks[subset_key(rs.elements[i])] = rs.ranks[i];
    j["ranks"] = std::move(ranks);
  }
  json definite = json::object();
  for (std::size_t i = 0; i < rs.elements.size(); ++i)
    definite[subset_key(rs.elements[i])] = static_cast<bool>(rs.definite[i]);
  j["definite"] = std::move(definite);
  j["all-definite"] = rs.all_definite;
  return j;
}

inline const char* status_name(AxiomStatus s) {
  switch (s) {
    case AxiomStatus::pass: return "pass";
    case AxiomStatus::fail: return "fail";
    case AxiomStatus::inapplicable: return "inapplicable";
  }
  return "?";
}

inline void emit_axiom_report(std::ostream& os, const AxiomReport& rep) {
  os << "group " << rep.group << ": " << (rep.all_pass() ? "PASS" : "FAIL") << "\n";
  for (const auto& a : rep.axioms) {
    os << "  " << a.id << ": " << status_name(a.status);
    if (a.informational) os << " (informational)";
    if (!a.note.empty()) os << "  [" << a.note << "]";
    os << "\n";
    for (const auto& ce : a.counterexamples) {
      os << "    counterexample:";
      for (const auto& [var, val] : ce.assignment) os << " " << var << "=" << val;
      if (!ce.detail.empty()) os << "  (" << ce.detail << ")";
      os << "\n";
    }
  }
}

inline json axiom_report_to_json(const AxiomReport& rep) {
  json j;
  j["group"] = rep.group;
  j["pass"] = rep.all_pass();
  j["axioms"] = json::array();
  for (const auto& a : rep.axioms) {
    json ja{{"id", a.id}, {"status", status_name(a.status)}};
    if (a.informational) ja["informational"] = true;
    if (!a.note.empty()) ja["note"] = a.note;
    if (!a.counterexamples.empty()) {
      ja["counterexamples"] = json::array();
      for (const auto& ce : a.counterexamples) {
        json jc{{"detail", ce.detail}};
        for (const auto& [var, val] : ce.assignment) jc[var] = val;
        ja["counterexamples"].push_back(std::move(jc));
      }
    }
    j["axioms"].push_back(std::move(ja));
  }
  return j;
}

inline std::string render_rational(const Maybe<Rational>& m) {
  if (!m) return "undefined(" + m.reason + ")";
  std::ostringstream ss;
  ss << std::setprecision(12) << to_double(*m.value);
  return ss.str();
}

inline std::string render_double(const Maybe<double>& m) {
  if (!m) return "undefined(" + m.reason + ")";
  std::ostringstream ss;
  ss << std::setprecision(12) << *m.value;
  return ss.str();
}

}  // namespace io
}  // namespace rough

#endif  // ROUGHMEASURE_IO_HPP
