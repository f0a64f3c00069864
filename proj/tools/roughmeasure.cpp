// roughmeasure: rough-set approximations, set-valued precision/accuracy
// measures, partial-algebra axiom checking, and classical classifier
// metrics over finite universes.
//
// Exit codes: 0 success / all-pass, 1 verdict or axiom failure, 2 input error.

#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "roughmeasure/io.hpp"

namespace {

using namespace rough;

struct SpaceOptions {
  std::string granulation_path;
  bool empty_singletons = false;
};

io::LoadedSpace load_space(const SpaceOptions& so) {
  if (so.granulation_path.empty()) throw input_error("--granulation FILE is required");
  return io::load_space_file(so.granulation_path, so.empty_singletons);
}

// Operator spec strings: l | u | ub | lk:K | uk:K | id | fix:FILE
Operator resolve_operator(const std::string& spec, const io::LoadedSpace& space) {
  auto need_blocks = [&]() -> const Granulation& {
    if (!space.blocks) throw input_error("operator '" + spec + "' needs a block granulation");
    return *space.blocks;
  };
  auto need_nbhd = [&]() -> const Granulation& {
    if (!space.neighborhoods) throw input_error("operator '" + spec + "' needs a neighborhood map");
    return *space.neighborhoods;
  };
  if (spec == "l") return Operator::tol_lower(need_blocks());
  if (spec == "u") return Operator::tol_upper(need_blocks());
  if (spec == "ub") return Operator::bited_upper(need_blocks());
  if (spec == "id") return Operator::identity(space.universe);
  if (spec.rfind("lk:", 0) == 0 || spec.rfind("uk:", 0) == 0) {
    const std::string arg = spec.substr(3);
    char* end = nullptr;
    long k = std::strtol(arg.c_str(), &end, 10);
    if (!end || *end != '\0' || arg.empty() || k < 0)
      throw input_error("grade in '" + spec + "' must be a nonnegative integer");
    return spec[0] == 'l' ? Operator::graded_lower(need_nbhd(), static_cast<unsigned>(k))
                          : Operator::graded_upper(need_nbhd(), static_cast<unsigned>(k));
  }
  if (spec.rfind("fix:", 0) == 0) return io::load_fixture_file(space.universe, spec.substr(4));
  throw input_error("unknown operator spec: " + spec);
}

std::vector<ObjectSet> resolve_subsets(const io::LoadedSpace& space, const std::string& subsets_path) {
  if (!subsets_path.empty()) return io::load_subsets_file(space.universe, subsets_path);
  return all_subsets(space.universe);
}

ImportanceClass resolve_so(const io::LoadedSpace& space, const std::string& so_inline,
                           const std::string& so_file, const std::string& so_rule,
                           const std::optional<Operator>& rule_lower,
                           const std::optional<Operator>& rule_upper) {
  ImportanceClass out;
  if (!so_rule.empty()) {
    // rule: sets with lower approximation bot and upper approximation = k
    if (!rule_lower || !rule_upper)
      throw input_error("--so-rule needs standard lower/upper operators");
    ObjectSet k = io::parse_subset(space.universe, so_rule);
    for (const auto& a : all_subsets(space.universe))
      if (rule_lower->apply(a).empty_set() && rule_upper->apply(a) == k) out.sets.push_back(a);
    out.sets.push_back(ObjectSet::empty(space.universe));
    return out;
  }
  json j;
  if (!so_inline.empty()) {
    try {
      j = json::parse(so_inline);
    } catch (const json::parse_error& e) {
      throw input_error(std::string("malformed --so JSON: ") + e.what());
    }
  } else if (!so_file.empty()) {
    j = io::parse_json_file(so_file);
  } else {
    throw input_error("one of --so, --so-file, --so-rule is required");
  }
  if (!j.is_array()) throw input_error("S_o must be a JSON array of subsets");
  for (const auto& e : j) {
    if (e.is_string()) {
      out.sets.push_back(io::parse_subset(space.universe, e.get<std::string>()));
    } else {
      std::vector<std::string> ids;
      for (const auto& o : e) ids.push_back(o.get<std::string>());
      out.sets.push_back(ObjectSet::of(space.universe, ids));
    }
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"rough-set approximation operators, set-valued precision/accuracy measures, and partial-algebra axiom checks"};
  app.require_subcommand(1);

  std::string format = "tsv";
  bool quiet_discrepancies = false;
  app.add_option("--format", format, "output format: tsv|json|md")->capture_default_str();
  app.add_flag("--quiet-discrepancies", quiet_discrepancies, "suppress discrepancy footnotes");

  SpaceOptions space_opts;
  auto add_space_opts = [&](CLI::App* cmd) {
    cmd->add_option("--granulation", space_opts.granulation_path, "granulation/relation JSON file");
    cmd->add_flag("--empty-singletons", space_opts.empty_singletons,
                  "read empty neighborhood lists as the empty set instead of singletons");
  };

  // approx
  auto* cmd_approx = app.add_subcommand("approx", "approximation table for requested operators");
  std::vector<std::string> approx_ops;
  std::string subsets_path, compare_fixture;
  add_space_opts(cmd_approx);
  cmd_approx->add_option("--ops", approx_ops, "operator specs (l,u,ub,lk:K,uk:K,id,fix:FILE)")
      ->required()
      ->delimiter(',');
  cmd_approx->add_option("--subsets", subsets_path, "subsets file (default: whole powerset)");
  cmd_approx->add_option("--compare-fixture", compare_fixture,
                         "fixture JSON to footnote cells that deviate from it");

  // nabla / finv
  auto* cmd_nabla = app.add_subcommand("nabla", "evaluate nabla(x, a, b, c) over subsets");
  std::string op_a, op_b, op_c, expect_path;
  add_space_opts(cmd_nabla);
  cmd_nabla->add_option("--a", op_a)->required();
  cmd_nabla->add_option("--b", op_b)->required();
  cmd_nabla->add_option("--c", op_c)->required();
  cmd_nabla->add_option("--subsets", subsets_path, "subsets file (default: whole powerset)");
  cmd_nabla->add_option("--expect", expect_path,
                        "fixture JSON of expected values; mismatches are footnoted");

  auto* cmd_finv = app.add_subcommand("finv", "evaluate finv(x, l1, ls, u1, us) over subsets");
  std::string op_l1, op_ls, op_u1, op_us;
  add_space_opts(cmd_finv);
  cmd_finv->add_option("--l1", op_l1)->required();
  cmd_finv->add_option("--ls", op_ls)->required();
  cmd_finv->add_option("--u1", op_u1)->required();
  cmd_finv->add_option("--us", op_us)->required();
  cmd_finv->add_option("--subsets", subsets_path);
  cmd_finv->add_option("--expect", expect_path);

  // range
  auto* cmd_range = app.add_subcommand("range", "range structure R of a measure");
  std::string range_measure = "nabla", std_lower, std_upper;
  add_space_opts(cmd_range);
  cmd_range->add_option("--measure", range_measure, "nabla|finv")->capture_default_str();
  cmd_range->add_option("--a", op_a);
  cmd_range->add_option("--b", op_b);
  cmd_range->add_option("--c", op_c);
  cmd_range->add_option("--l1", op_l1);
  cmd_range->add_option("--ls", op_ls);
  cmd_range->add_option("--u1", op_u1);
  cmd_range->add_option("--us", op_us);
  cmd_range->add_option("--std-lower", std_lower, "standard lower operator for definiteness (default l)");
  cmd_range->add_option("--std-upper", std_upper, "standard upper operator for definiteness (default u)");
  cmd_range->add_option("--subsets", subsets_path);

  // verdict
  auto* cmd_verdict = app.add_subcommand("verdict", "Prec1/Prec2/Acc5 verdict over subsets");
  std::string verdict_kind, op_l2, so_inline, so_file, so_rule;
  add_space_opts(cmd_verdict);
  cmd_verdict->add_option("--kind", verdict_kind, "Prec1|Prec2|Acc5")->required();
  cmd_verdict->add_option("--l1", op_l1);
  cmd_verdict->add_option("--l2", op_l2);
  cmd_verdict->add_option("--ls", op_ls);
  cmd_verdict->add_option("--u1", op_u1);
  cmd_verdict->add_option("--us", op_us);
  cmd_verdict->add_option("--so", so_inline, "inline JSON array of S_o subsets");
  cmd_verdict->add_option("--so-file", so_file, "JSON file with S_o subsets");
  cmd_verdict->add_option("--so-rule", so_rule,
                          "rule: sets with empty standard lower approximation and this upper approximation");
  cmd_verdict->add_option("--subsets", subsets_path);

  // check
  auto* cmd_check = app.add_subcommand("check", "verify axiom groups on a finite structure");
  std::string structure_path;
  std::vector<std::string> axiom_groups;
  cmd_check->add_option("--structure", structure_path, "structure JSON file")->required();
  cmd_check->add_option("--axioms", axiom_groups, "axiom groups (or `all`)")->required()->delimiter(',');

  // derive
  auto* cmd_derive = app.add_subcommand("derive", "derive an operation table from a structure");
  std::string derive_op;
  cmd_derive->add_option("--structure", structure_path, "structure JSON file")->required();
  cmd_derive->add_option("--op", derive_op, "dot|otimes|neg|sim|ominus|oplus")->required();

  // metrics
  auto* cmd_metrics = app.add_subcommand("metrics", "classical hard/soft classifier metrics");
  std::string pred_path, mode = "both", positive = "+";
  cmd_metrics->add_option("--input", pred_path, "prediction CSV (id,score-or-label,truth)")->required();
  cmd_metrics->add_option("--mode", mode, "paper|conventional|both")->capture_default_str();
  cmd_metrics->add_option("--positive", positive, "positive label token")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  io::Format fmt = io::parse_format(format);
  std::ostream& os = std::cout;

  if (cmd_approx->parsed()) {
    auto space = load_space(space_opts);
    auto subsets = resolve_subsets(space, subsets_path);
    std::vector<std::pair<std::string, std::vector<ObjectSet>>> columns;
    for (const auto& spec : approx_ops) {
      Operator op = resolve_operator(spec, space);
      std::vector<ObjectSet> col;
      col.reserve(subsets.size());
      for (const auto& a : subsets) col.push_back(op.apply(a));
      columns.emplace_back(spec, std::move(col));
    }
    io::emit_approx_table(os, subsets, columns, fmt);
    if (!compare_fixture.empty() && !quiet_discrepancies) {
      Operator fix = io::load_fixture_file(space.universe, compare_fixture);
      for (const auto& [spec, col] : columns)
        for (std::size_t r = 0; r < subsets.size(); ++r) {
          ObjectSet expected = fix.apply(subsets[r]);
          if (col[r] != expected)
            os << "# discrepancy: " << spec << "(" << subsets[r].to_string() << ") = "
               << col[r].to_string() << " but fixture says " << expected.to_string() << "\n";
        }
    }
    return 0;
  }

  if (cmd_nabla->parsed() || cmd_finv->parsed()) {
    auto space = load_space(space_opts);
    auto subsets = resolve_subsets(space, subsets_path);
    std::string column;
    MeasureTable table;
    if (cmd_nabla->parsed()) {
      Operator a = resolve_operator(op_a, space), b = resolve_operator(op_b, space),
               c = resolve_operator(op_c, space);
      column = "nabla(" + op_a + "," + op_b + "," + op_c + ")";
      table = evaluate_measure(subsets, [&](const ObjectSet& x) { return nabla(x, a, b, c); });
    } else {
      Operator l1 = resolve_operator(op_l1, space), ls = resolve_operator(op_ls, space),
               u1 = resolve_operator(op_u1, space), us = resolve_operator(op_us, space);
      column = "finv(" + op_l1 + "," + op_ls + "," + op_u1 + "," + op_us + ")";
      table = evaluate_measure(subsets, [&](const ObjectSet& x) { return finv(x, l1, ls, u1, us); });
    }
    io::emit_measure_table(os, table, column, fmt);
    if (!expect_path.empty() && !quiet_discrepancies) {
      Operator expect = io::load_fixture_file(space.universe, expect_path);
      for (const auto& row : table.rows) {
        ObjectSet expected = expect.apply(row.input);
        if (row.result != expected)
          os << "# discrepancy: value at " << row.input.to_string() << " is "
             << row.result.to_string() << " but the expected sequence says "
             << expected.to_string() << "\n";
      }
    }
    return 0;
  }

  if (cmd_range->parsed()) {
    auto space = load_space(space_opts);
    auto subsets = resolve_subsets(space, subsets_path);
    Operator sl = resolve_operator(std_lower.empty() ? "l" : std_lower, space);
    Operator su = resolve_operator(std_upper.empty() ? "u" : std_upper, space);
    RangeStructure rs = [&] {
      if (range_measure == "nabla") {
        Operator a = resolve_operator(op_a, space), b = resolve_operator(op_b, space),
                 c = resolve_operator(op_c, space);
        return measure_range(subsets, [&](const ObjectSet& x) { return nabla(x, a, b, c); }, sl, su);
      }
      if (range_measure == "finv") {
        Operator l1 = resolve_operator(op_l1, space), ls = resolve_operator(op_ls, space),
                 u1 = resolve_operator(op_u1, space), us = resolve_operator(op_us, space);
        return measure_range(subsets, [&](const ObjectSet& x) { return finv(x, l1, ls, u1, us); }, sl, su);
      }
      throw input_error("unknown measure: " + range_measure);
    }();
    os << io::range_to_json(rs).dump(2) << "\n";
    return 0;
  }

  if (cmd_verdict->parsed()) {
    auto space = load_space(space_opts);
    auto subsets = resolve_subsets(space, subsets_path);
    std::optional<Operator> l1, l2, ls, u1, us;
    if (!op_l1.empty()) l1 = resolve_operator(op_l1, space);
    if (!op_l2.empty()) l2 = resolve_operator(op_l2, space);
    if (!op_ls.empty()) ls = resolve_operator(op_ls, space);
    if (!op_u1.empty()) u1 = resolve_operator(op_u1, space);
    if (!op_us.empty()) us = resolve_operator(op_us, space);
    VerdictKind kind;
    if (verdict_kind == "Prec1") kind = VerdictKind::Prec1;
    else if (verdict_kind == "Prec2") kind = VerdictKind::Prec2;
    else if (verdict_kind == "Acc5") kind = VerdictKind::Acc5;
    else throw input_error("unknown verdict kind: " + verdict_kind);
    ImportanceClass so = resolve_so(space, so_inline, so_file, so_rule, ls, us);
    VerdictOps ops;
    ops.l1 = l1 ? &*l1 : nullptr;
    ops.l2 = l2 ? &*l2 : nullptr;
    ops.ls = ls ? &*ls : nullptr;
    ops.u1 = u1 ? &*u1 : nullptr;
    ops.us = us ? &*us : nullptr;
    Verdict v = verdict(kind, subsets, ops, so);
    os << (v.pass ? "PASS" : "FAIL") << "\n";
    for (const auto& [x, value] : v.witnesses)
      os << "witness: " << x.to_string() << " -> " << value.to_string() << "\n";
    return v.pass ? 0 : 1;
  }

  if (cmd_check->parsed()) {
    std::vector<std::string> notes;
    FiniteStructure s = io::load_structure_file(structure_path, &notes);
    std::vector<std::string> groups = axiom_groups;
    if (groups.size() == 1 && groups[0] == "all") groups = kAxiomGroups;
    bool all_pass = true;
    json jreports = json::array();
    for (const auto& note : notes)
      if (fmt != io::Format::json_fmt) os << "# " << note << "\n";
    for (const auto& g : groups) {
      AxiomReport rep = check_axioms(s, g);
      if (!rep.all_pass()) all_pass = false;
      if (fmt == io::Format::json_fmt) jreports.push_back(io::axiom_report_to_json(rep));
      else io::emit_axiom_report(os, rep);
    }
    if (fmt == io::Format::json_fmt) os << jreports.dump(2) << "\n";
    return all_pass ? 0 : 1;
  }

  if (cmd_derive->parsed()) {
    FiniteStructure s = io::load_structure_file(structure_path);
    DerivationReport rep = derive_operation(s, derive_op);
    if (rep.unary) {
      os << "element\t" << derive_op << "\n";
      for (std::size_t a = 0; a < s.size(); ++a)
        os << s.carrier[a] << '\t' << ((*rep.unary)[a] ? s.carrier[*(*rep.unary)[a]] : "undefined")
           << "\n";
    } else if (rep.binary) {
      os << "a\tb\t" << derive_op << "\n";
      for (std::size_t a = 0; a < s.size(); ++a)
        for (std::size_t b = 0; b < s.size(); ++b) {
          Val v = (*rep.binary)[a][b];
          if (v) os << s.carrier[a] << '\t' << s.carrier[b] << '\t' << s.carrier[*v] << "\n";
        }
    }
    for (const auto& note : rep.notes) os << "# " << note << "\n";
    return 0;
  }

  if (cmd_metrics->parsed()) {
    std::ifstream in(pred_path);
    if (!in) throw input_error("cannot open file: " + pred_path);
    io::Predictions p = io::load_predictions_csv(in, pred_path);
    std::vector<RateMode> modes;
    if (mode == "paper") modes = {RateMode::paper};
    else if (mode == "conventional") modes = {RateMode::conventional};
    else if (mode == "both") modes = {RateMode::paper, RateMode::conventional};
    else throw input_error("unknown mode: " + mode);

    std::vector<std::string> predicted = p.predicted;
    if (p.has_scores) {
      // threshold scores at 0.5 for the hard-count table
      for (double sc : p.scores) predicted.push_back(sc >= 0.5 ? positive : "!" + positive);
    }
    ConfusionCounts c = confusion(predicted, p.truth, positive);
    os << "counts\ttp=" << c.tp << "\tfp=" << c.fp << "\ttn=" << c.tn << "\tfn=" << c.fn << "\n";
    os << "mode\tTPR\tFPR\tTNR\tFNR\tprecision\trecall\tF\taccuracy\tkappa\tmcc\n";
    std::map<RateMode, KappaMcc> km;
    for (RateMode m : modes) {
      RateSet r = rates(c, m);
      KappaMcc k = kappa_mcc(c, m);
      km.emplace(m, k);
      os << (m == RateMode::paper ? "paper" : "conventional") << '\t' << io::render_rational(r.tpr)
         << '\t' << io::render_rational(r.fpr) << '\t' << io::render_rational(r.tnr) << '\t'
         << io::render_rational(r.fnr) << '\t' << io::render_rational(r.precision) << '\t'
         << io::render_rational(r.recall) << '\t' << io::render_rational(r.f_measure) << '\t'
         << io::render_rational(r.accuracy) << '\t' << io::render_double(k.kappa) << '\t'
         << io::render_double(k.mcc) << "\n";
    }
    if (modes.size() == 2 && !quiet_discrepancies) {
      auto diverges = [](const Maybe<double>& a, const Maybe<double>& b) {
        if (a.value.has_value() != b.value.has_value()) return true;
        return a && b && *a.value != *b.value;
      };
      const auto& kp = km.at(RateMode::paper);
      const auto& kc = km.at(RateMode::conventional);
      if (diverges(kp.kappa, kc.kappa))
        os << "# divergence: paper-mode kappa " << io::render_double(kp.kappa)
           << " vs conventional " << io::render_double(kc.kappa) << "\n";
      if (diverges(kp.mcc, kc.mcc))
        os << "# divergence: paper-mode mcc " << io::render_double(kp.mcc) << " vs conventional "
           << io::render_double(kc.mcc) << "\n";
    }
    if (p.has_scores) {
      Curves cv = curves(p.scores, p.truth, positive);
      os << "auc-roc\t" << cv.auc_roc << "\trank-statistic\t" << cv.mann_whitney << "\n";
      os << "auc-pr\t" << cv.auc_pr << "\n";
      os << "roc";
      for (const auto& pt : cv.roc) os << '\t' << pt.x << ',' << pt.y;
      os << "\npr";
      for (const auto& pt : cv.pr) os << '\t' << pt.x << ',' << pt.y;
      os << "\n";
    }
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const rough::input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const rough::precondition_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
