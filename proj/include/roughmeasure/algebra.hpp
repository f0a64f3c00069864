#ifndef ROUGHMEASURE_ALGEBRA_HPP
#define ROUGHMEASURE_ALGEBRA_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "roughmeasure/approx.hpp"
#include "roughmeasure/core.hpp"

namespace rough {

using Val = std::optional<std::size_t>;
using UnaryTable = std::vector<Val>;
using BinaryTable = std::vector<std::vector<Val>>;

inline constexpr std::size_t kAxiomCap3 = 64;  // carrier cap for <=3 quantified variables
inline constexpr std::size_t kAxiomCap4 = 24;  // carrier cap for 4 quantified variables

// Finite bounded quasi-ordered carrier with partial operation tables.
// Recognized unary slots: l1, u1, l2, u2, ls, us, neg, sim.
// Recognized binary slots: vee, wedge, otimes, dot, ominus, oplus, imp_neg, imp_sim.
struct FiniteStructure {
  std::vector<std::string> carrier;
  std::vector<std::vector<bool>> leq;
  std::size_t bot = 0, top = 0;
  std::map<std::string, UnaryTable> unary;
  std::map<std::string, BinaryTable> binary;

  std::size_t size() const { return carrier.size(); }
  bool le(std::size_t a, std::size_t b) const { return leq[a][b]; }
  bool equiv(std::size_t a, std::size_t b) const { return leq[a][b] && leq[b][a]; }

  bool has_unary(const std::string& slot) const { return unary.count(slot) != 0; }
  bool has_binary(const std::string& slot) const { return binary.count(slot) != 0; }

  Val un(const std::string& slot, Val a) const {
    if (!a) return std::nullopt;
    auto it = unary.find(slot);
    if (it == unary.end()) return std::nullopt;
    return it->second[*a];
  }
  Val bin(const std::string& slot, Val a, Val b) const {
    if (!a || !b) return std::nullopt;
    auto it = binary.find(slot);
    if (it == binary.end()) return std::nullopt;
    return it->second[*a][*b];
  }

  void validate() const {
    const std::size_t n = size();
    if (n == 0) throw input_error("empty carrier");
    if (leq.size() != n) throw input_error("leq matrix size mismatch");
    for (const auto& row : leq)
      if (row.size() != n) throw input_error("leq matrix size mismatch");
    for (std::size_t a = 0; a < n; ++a) {
      if (!leq[a][a]) throw input_error("leq is not reflexive at " + carrier[a]);
      if (!leq[bot][a] || !leq[a][top])
        throw input_error("bounds violated at " + carrier[a]);
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (leq[a][b] && leq[b][c] && !leq[a][c])
            throw input_error("leq is not transitive at (" + carrier[a] + "," + carrier[b] + "," +
                              carrier[c] + ")");
    }
    for (const auto& [slot, t] : unary)
      if (t.size() != n) throw input_error("unary table '" + slot + "' size mismatch");
    for (const auto& [slot, t] : binary) {
      if (t.size() != n) throw input_error("binary table '" + slot + "' size mismatch");
      for (const auto& row : t)
        if (row.size() != n) throw input_error("binary table '" + slot + "' size mismatch");
    }
  }
};

// ---------------------------------------------------------------------------
// Terms

struct Term {
  enum Kind { variable, constant, apply } kind = variable;
  std::string symbol;
  std::vector<Term> args;

  static Term var(std::string name) { return {variable, std::move(name), {}}; }
  static Term cons(std::string name) { return {constant, std::move(name), {}}; }
  static Term app(std::string op, std::vector<Term> args) { return {apply, std::move(op), std::move(args)}; }
};

// Strict evaluation: a term is undefined iff any subterm is.
inline Val evaluate_term(const FiniteStructure& s, const Term& t,
                         const std::map<std::string, std::size_t>& assignment) {
  switch (t.kind) {
    case Term::constant:
      if (t.symbol == "bot") return s.bot;
      if (t.symbol == "top") return s.top;
      throw input_error("unknown constant: " + t.symbol);
    case Term::variable: {
      auto it = assignment.find(t.symbol);
      if (it == assignment.end()) throw input_error("unbound variable: " + t.symbol);
      return it->second;
    }
    case Term::apply: {
      if (t.args.size() == 1) {
        if (!s.has_unary(t.symbol)) throw input_error("unknown unary operation: " + t.symbol);
        return s.un(t.symbol, evaluate_term(s, t.args[0], assignment));
      }
      if (t.args.size() == 2) {
        if (!s.has_binary(t.symbol)) throw input_error("unknown binary operation: " + t.symbol);
        return s.bin(t.symbol, evaluate_term(s, t.args[0], assignment),
                     evaluate_term(s, t.args[1], assignment));
      }
      throw input_error("operations must be unary or binary: " + t.symbol);
    }
  }
  throw std::logic_error("unreachable");
}

// Parses "wedge(vee(a,b),top)". Identifiers bot/top are constants, known
// operation names are applications, everything else is a variable.
inline Term parse_term(std::string_view src) {
  std::size_t pos = 0;
  auto skip = [&] { while (pos < src.size() && src[pos] == ' ') ++pos; };
  std::function<Term()> parse = [&]() -> Term {
    skip();
    std::size_t start = pos;
    while (pos < src.size() && (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
      ++pos;
    if (start == pos) throw input_error("term syntax error at offset " + std::to_string(pos));
    std::string id(src.substr(start, pos - start));
    skip();
    if (pos < src.size() && src[pos] == '(') {
      ++pos;
      std::vector<Term> args;
      while (true) {
        args.push_back(parse());
        skip();
        if (pos < src.size() && src[pos] == ',') { ++pos; continue; }
        break;
      }
      if (pos >= src.size() || src[pos] != ')') throw input_error("expected ')' in term");
      ++pos;
      return Term::app(std::move(id), std::move(args));
    }
    if (id == "bot" || id == "top") return Term::cons(id);
    return Term::var(id);
  };
  Term t = parse();
  skip();
  if (pos != src.size()) throw input_error("trailing characters in term");
  return t;
}

// ---------------------------------------------------------------------------
// Axiom checking

enum class AxiomStatus { pass, fail, inapplicable };

struct Counterexample {
  std::vector<std::pair<std::string, std::string>> assignment;  // variable -> element
  std::string detail;
};

struct AxiomResult {
  std::string id;
  AxiomStatus status = AxiomStatus::inapplicable;
  std::vector<Counterexample> counterexamples;
  std::string note;
  bool informational = false;  // reported but excluded from the group verdict
};

struct AxiomReport {
  std::string group;
  std::vector<AxiomResult> axioms;

  bool all_pass() const {
    for (const auto& a : axioms)
      if (!a.informational && a.status == AxiomStatus::fail) return false;
    return true;
  }
  const AxiomResult* find(std::string_view id) const {
    for (const auto& a : axioms)
      if (a.id == id) return &a;
    return nullptr;
  }
};

namespace detail {

inline constexpr std::size_t kMaxCounterexamples = 25;

// s =omega t : if both sides are defined then they are equal.
inline bool weq(Val a, Val b) { return !(a && b) || *a == *b; }
// s =omega* t : if either side is defined then both are and they are equal.
inline bool weqs(Val a, Val b) { return a.has_value() == b.has_value() && (!a || *a == *b); }
// strong equality: both defined and equal.
inline bool seq(Val a, Val b) { return a && b && *a == *b; }
// conditional inequality: holds vacuously when either side is undefined.
inline bool wle(const FiniteStructure& s, Val a, Val b) { return !(a && b) || s.le(*a, *b); }

inline std::string show(const FiniteStructure& s, Val v) {
  return v ? s.carrier[*v] : std::string("undefined");
}

class AxiomChecker {
 public:
  AxiomChecker(const FiniteStructure& s, AxiomReport& report) : s_(s), report_(report) {}

  using Body1 = std::function<std::optional<std::string>(std::size_t)>;
  using Body2 = std::function<std::optional<std::string>(std::size_t, std::size_t)>;
  using Body3 = std::function<std::optional<std::string>(std::size_t, std::size_t, std::size_t)>;
  using Body4 = std::function<std::optional<std::string>(std::size_t, std::size_t, std::size_t, std::size_t)>;

  void cap(std::size_t vars) const {
    std::size_t cap = vars >= 4 ? kAxiomCap4 : kAxiomCap3;
    if (s_.size() > cap)
      throw input_error("carrier size " + std::to_string(s_.size()) + " exceeds the cap " +
                        std::to_string(cap) + " for " + std::to_string(vars) +
                        "-variable axioms");
  }

  void inapplicable(const std::string& id, const std::string& why) {
    AxiomResult r;
    r.id = id;
    r.status = AxiomStatus::inapplicable;
    r.note = why;
    report_.axioms.push_back(std::move(r));
  }

  void check1(const std::string& id, const Body1& body, const std::string& note = "",
              bool informational = false) {
    cap(1);
    AxiomResult r{id, AxiomStatus::pass, {}, note, informational};
    const std::size_t n = s_.size();
    for (std::size_t a = 0; a < n; ++a)
      if (auto d = body(a)) record(r, {{"a", s_.carrier[a]}}, *d);
    report_.axioms.push_back(std::move(r));
  }

  void check2(const std::string& id, const Body2& body, const std::string& note = "",
              bool informational = false) {
    cap(2);
    AxiomResult r{id, AxiomStatus::pass, {}, note, informational};
    const std::size_t n = s_.size();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (auto d = body(a, b)) record(r, {{"a", s_.carrier[a]}, {"b", s_.carrier[b]}}, *d);
    report_.axioms.push_back(std::move(r));
  }

  void check3(const std::string& id, const Body3& body, const std::string& note = "",
              bool informational = false) {
    cap(3);
    AxiomResult r{id, AxiomStatus::pass, {}, note, informational};
    const std::size_t n = s_.size();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (auto d = body(a, b, c))
            record(r, {{"a", s_.carrier[a]}, {"b", s_.carrier[b]}, {"c", s_.carrier[c]}}, *d);
    report_.axioms.push_back(std::move(r));
  }

  void check4(const std::string& id, const Body4& body, const std::string& note = "",
              bool informational = false) {
    cap(4);
    AxiomResult r{id, AxiomStatus::pass, {}, note, informational};
    const std::size_t n = s_.size();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t e = 0; e < n; ++e)
          for (std::size_t c = 0; c < n; ++c)
            if (auto d = body(a, b, e, c))
              record(r,
                     {{"a", s_.carrier[a]}, {"b", s_.carrier[b]}, {"e", s_.carrier[e]},
                      {"c", s_.carrier[c]}},
                     *d);
    report_.axioms.push_back(std::move(r));
  }

 private:
  void record(AxiomResult& r, std::vector<std::pair<std::string, std::string>> assignment,
              std::string detail) {
    r.status = AxiomStatus::fail;
    if (r.counterexamples.size() < kMaxCounterexamples)
      r.counterexamples.push_back({std::move(assignment), std::move(detail)});
  }

  const FiniteStructure& s_;
  AxiomReport& report_;
};

inline const std::vector<std::string> kLowerSlots = {"l1", "l2", "ls"};
inline const std::vector<std::string> kUpperSlots = {"u1", "u2", "us"};

inline void check_implication_properties(const FiniteStructure& s, AxiomChecker& ck,
                                         const std::string& slot, const std::string& prefix,
                                         const std::vector<std::string>& props) {
  auto want = [&](const std::string& p) {
    return std::find(props.begin(), props.end(), p) != props.end();
  };
  if (!s.has_binary(slot)) {
    for (const auto& p : props) ck.inapplicable(prefix + p, "no '" + slot + "' table");
    return;
  }
  auto imp = [&](Val a, Val b) { return s.bin(slot, a, b); };
  if (want("FPA"))
    ck.check3(prefix + "FPA", [&](std::size_t a, std::size_t b, std::size_t c) -> std::optional<std::string> {
      if (s.le(a, b) && !wle(s, imp(b, c), imp(a, c)))
        return "a<=b but not imp(b,c) <= imp(a,c)";
      return std::nullopt;
    });
  if (want("SPM"))
    ck.check3(prefix + "SPM", [&](std::size_t a, std::size_t b, std::size_t c) -> std::optional<std::string> {
      if (s.le(b, c) && !wle(s, imp(a, b), imp(a, c)))
        return "b<=c but not imp(a,b) <= imp(a,c)";
      return std::nullopt;
    });
  auto boundary = [&](const char* id, std::size_t x, std::size_t y, std::size_t expect) {
    if (want(id))
      ck.check1(std::string(prefix) + id, [&, x, y, expect](std::size_t) -> std::optional<std::string> {
        Val v = imp(x, y);
        if (v && *v == expect) return std::nullopt;
        return "expected " + s.carrier[expect] + ", got " + show(s, v);
      });
  };
  boundary("BC1", s.bot, s.bot, s.top);
  boundary("BC2", s.top, s.top, s.top);
  boundary("BC3", s.top, s.bot, s.bot);
  if (want("OP"))
    ck.check2(prefix + "OP", [&](std::size_t a, std::size_t b) -> std::optional<std::string> {
      Val v = imp(a, b);
      if (!v) return std::nullopt;
      bool is_top = *v == s.top;
      if (is_top != s.le(a, b)) return "imp(a,b)=" + show(s, v) + " but a<=b is " + (s.le(a, b) ? "true" : "false");
      return std::nullopt;
    });
  if (want("IBL"))
    ck.check2(prefix + "IBL", [&](std::size_t a, std::size_t b) -> std::optional<std::string> {
      if (!weq(imp(Val{a}, imp(a, b)), imp(a, b))) return "imp(a, imp(a,b)) != imp(a,b)";
      return std::nullopt;
    });
  if (want("IP"))
    ck.check1(prefix + "IP", [&](std::size_t a) -> std::optional<std::string> {
      Val v = imp(a, a);
      if (v && *v != s.top) return "imp(a,a) = " + show(s, v);
      return std::nullopt;
    });
}

}  // namespace detail

inline AxiomReport check_axioms(const FiniteStructure& s, const std::string& group);

namespace detail {

inline void group_quasiorder(const FiniteStructure& s, AxiomChecker& ck) {
  ck.check1("reflexive", [&](std::size_t a) -> std::optional<std::string> {
    if (!s.le(a, a)) return "a is not <= a";
    return std::nullopt;
  });
  ck.check3("transitive", [&](std::size_t a, std::size_t b, std::size_t c) -> std::optional<std::string> {
    if (s.le(a, b) && s.le(b, c) && !s.le(a, c)) return "a<=b<=c but not a<=c";
    return std::nullopt;
  });
  ck.check1("bounded", [&](std::size_t a) -> std::optional<std::string> {
    if (!s.le(s.bot, a)) return "bot not <= a";
    if (!s.le(a, s.top)) return "a not <= top";
    return std::nullopt;
  });
}

inline void group_wpl(const FiniteStructure& s, AxiomChecker& ck) {
  if (!s.has_binary("vee") || !s.has_binary("wedge")) {
    for (const char* id : {"wpl1", "wpl2", "wpl3", "wl12", "wl34"})
      ck.inapplicable(id, "needs both 'vee' and 'wedge' tables");
    return;
  }
  auto vee = [&](Val a, Val b) { return s.bin("vee", a, b); };
  auto wedge = [&](Val a, Val b) { return s.bin("wedge", a, b); };
  ck.check3("wpl1", [&](std::size_t a, std::size_t b, std::size_t c) -> std::optional<std::string> {
    if (b == 0 && c == 0) {  // idempotence checked once per a
      if (!seq(wedge(a, a), Val{a})) return "a^a != a";
      if (!seq(vee(a, a), Val{a})) return "ava != a";
    }
    if (!weq(wedge(wedge(a, b), c), wedge(Val{a}, wedge(b, c)))) return "meet associativity (omega) fails";
    return std::nullopt;
  });
  ck.check3("wpl2", [&](std::size_t a, std::size_t b, std::size_t c) -> std::optional<std::string> {
    if (!weq(vee(vee(a, b), c), vee(Val{a}, vee(b, c)))) return "join associativity (omega) fails";
    return std::nullopt;
  });
  ck.check2("wpl3", [&](std::size_t a, std::size_t b) -> std::optional<std::string> {
    if (!weq(vee(wedge(a, b), Val{a}), Val{a})) return "(a^b)va != a";
    if (!weq(wedge(a, b), wedge(b, a))) return "meet commutativity (omega) fails";
    if (!weq(vee(a, b), vee(b, a))) return "join commutativity (omega) fails";
    return std::nullopt;
  });
  ck.check2("wl12", [&](std::size_t a, std::size_t b) -> std::optional<std::string> {
    if ((seq(vee(a, b), Val{b}) || seq(wedge(a, b), Val{a})) && !s.le(a, b))
      return "avb=b or a^b=a but not a<=b";
    return std::nullopt;
  });
  ck.check3("wl34", [&](std::size_t a, std::size_t b, std::size_t c) -> std::optional<std::string> {
    if ((seq(vee(a, b), Val{c}) || seq(wedge(c, b), Val{a})) && !s.le(a, c))
      return "avb=c or c^b=a but not a<=c";
    return std::nullopt;
  });
}

inline void group_prcqo(const FiniteStructure& s, AxiomChecker& ck) {
  for (const auto& l : kLowerSlots) {
    if (!s.has_unary(l)) {
      ck.inapplicable("qlu1[" + l + "]", "slot absent");
      continue;
    }
    ck.check1("qlu1[" + l + "]", [&](std::size_t x) -> std::optional<std::string> {
      Val xl = s.un(l, x), xll = s.un(l, xl);
      if (!seq(xll, xl)) return "x^ll != x^l";
      if (!wle(s, xl, x)) return "x^l not <= x";
      return std::nullopt;
    });
    ck.check2("qlu-mo[" + l + "]", [&](std::size_t a, std::size_t b) -> std::optional<std::string> {
      if (s.le(a, b) && !wle(s, s.un(l, a), s.un(l, b))) return "a<=b but not a^l <= b^l";
      return std::nullopt;
    });
    if (s.has_binary("wedge"))
      ck.check2("qlu23[" + l + "]", [&](std::size_t a, std::size_t b) -> std::optional<std::string> {
        Val lhs = s.un(l, s.bin("wedge", a, b));
        Val rhs = s.bin("wedge", s.un(l, a), s.un(l, b));
        if (!weq(lhs, rhs))
          return "(a^b)^" + l + " = " + show(s, lhs) + " != " + show(s, rhs) + " = a^" + l + " ^ b^" + l;
        return std::nullopt;
      });
    else
      ck.inapplicable("qlu23[" + l + "]", "no 'wedge' table");
    ck.check1("topbot[" + l + "]", [&](std::size_t a) -> std::optional<std::string> {
      if (a != s.bot) return std::nullopt;
      if (!seq(s.un(l, s.bot), Val{s.bot})) return "bot^l != bot";
      return std::nullopt;
    });
  }
  for (const auto& u : kUpperSlots) {
    if (!s.has_unary(u)) {
      ck.inapplicable("qlu1[" + u + "]", "slot absent");
      continue;
    }
    ck.check1("qlu1[" + u + "]", [&](std::size_t x) -> std::optional<std::string> {
      Val xu = s.un(u, x), xuu = s.un(u, xu);
      if (!wle(s, Val{x}, xu)) return "x not <= x^u";
      if (!wle(s, xu, xuu)) return "x^u not <= x^uu";
      return std::nullopt;
    });
    ck.check2("qlu-mo[" + u + "]", [&](std::size_t a, std::size_t b) -> std::optional<std::string> {
      if (s.le(a, b) && !wle(s, s.un(u, a), s.un(u, b))) return "a<=b but not a^u <= b^u";
      return std::nullopt;
    });
    if (s.has_binary("vee"))
      ck.check2("qlu23[" + u + "]", [&](std::size_t a, std::size_t b) -> std::optional<std::string> {
        Val lhs = s.bin("vee", s.un(u, a), s.un(u, b));
        Val rhs = s.un(u, s.bin("vee", a, b));
        if (!weq(lhs, rhs))
          return "a^" + u + " v b^" + u + " = " + show(s, lhs) + " != " + show(s, rhs) + " = (avb)^" + u;
        return std::nullopt;
      });
    else
      ck.inapplicable("qlu23[" + u + "]", "no 'vee' table");
    ck.check1("topbot[" + u + "]", [&](std::size_t a) -> std::optional<std::string> {
      if (a == s.top && !seq(s.un(u, s.top), Val{s.top})) return "top^u != top";
      if (a == s.bot && !seq(s.un(u, s.bot), Val{s.bot})) return "bot^u != bot";
      return std::nullopt;
    });
  }
}

inline void group_negation(const FiniteStructure& s, AxiomChecker& ck, const std::string& slot) {
  const std::string p = "[" + slot + "]";
  if (!s.has_unary(slot)) {
    for (const char* id : {"N1", "N2", "N3", "N4"}) ck.inapplicable(id + p, "slot absent");
    return;
  }
  auto ng = [&](Val a) { return s.un(slot, a); };
  ck.check1("N1" + p, [&](std::size_t a) -> std::optional<std::string> {
    if (a != s.bot) return std::nullopt;
    if (!seq(ng(Val{s.bot}), Val{s.top})) return "n(bot) != top";
    if (!seq(ng(Val{s.top}), Val{s.bot})) return "n(top) != bot";
    return std::nullopt;
  });
  ck.check2("N2" + p, [&](std::size_t a, std::size_t b) -> std::optional<std::string> {
    if (s.le(a, b) && !wle(s, ng(Val{b}), ng(Val{a}))) return "a<=b but not n(b)<=n(a)";
    return std::nullopt;
  });
  ck.check1("N3" + p, [&](std::size_t a) -> std::optional<std::string> {
    Val nn = ng(ng(Val{a}));
    if (nn && *nn != a) return "n(n(a)) = " + show(s, nn) + " != a";
    if (!nn) return "n(n(a)) undefined";
    return std::nullopt;
  });
  ck.check1("N4" + p, [&](std::size_t a) -> std::optional<std::string> {
    Val v = ng(Val{a});
    if (!v) return "n(a) undefined";
    bool extreme_val = *v == s.bot || *v == s.top;
    bool extreme_arg = a == s.bot || a == s.top;
    if (extreme_val != extreme_arg) return "n(a) in {bot,top} iff a in {bot,top} fails";
    return std::nullopt;
  });
}

inline void group_weak_negation(const FiniteStructure& s, AxiomChecker& ck) {
  if (s.has_unary("neg") && s.has_unary("us")) {
    auto ng = [&](Val a) { return s.un("neg", a); };
    ck.check1("WN1-N", [&](std::size_t a) -> std::optional<std::string> {
      if (a != s.bot) return std::nullopt;
      if (!wle(s, ng(Val{s.bot}), Val{s.top})) return "not neg(bot) <= top";
      Val nt = ng(Val{s.top});
      if (nt && *nt != s.bot) return "neg(top) = " + show(s, nt) + " != bot";
      return std::nullopt;
    });
    ck.check2("WN2-N", [&](std::size_t a, std::size_t b) -> std::optional<std::string> {
      if (!s.le(a, b)) return std::nullopt;
      Val nb = ng(Val{b}), na = ng(Val{a});
      if (!wle(s, nb, s.un("us", nb))) return "not neg(b) <= neg(b)^us";
      if (!wle(s, s.un("us", nb), s.un("us", na))) return "not neg(b)^us <= neg(a)^us";
      return std::nullopt;
    });
    ck.check1("WN3-N", [&](std::size_t a) -> std::optional<std::string> {
      if (!wle(s, ng(ng(Val{a})), s.un("us", Val{a}))) return "not neg(neg(a)) <= a^us";
      return std::nullopt;
    });
  } else {
    for (const char* id : {"WN1-N", "WN2-N", "WN3-N"}) ck.inapplicable(id, "needs 'neg' and 'us'");
  }
  if (s.has_unary("sim") && s.has_unary("ls")) {
    auto sm = [&](Val a) { return s.un("sim", a); };
    ck.check2("WN2-S", [&](std::size_t a, std::size_t b) -> std::optional<std::string> {
      if (!s.le(a, b)) return std::nullopt;
      Val sb = sm(Val{b}), sa = sm(Val{a});
      if (!wle(s, s.un("ls", sb), s.un("ls", sa))) return "not sim(b)^ls <= sim(a)^ls";
      if (!wle(s, s.un("ls", sa), sa)) return "not sim(a)^ls <= sim(a)";
      return std::nullopt;
    });
    ck.check1("WN3-S", [&](std::size_t a) -> std::optional<std::string> {
      if (a != s.bot) return std::nullopt;
      if (!wle(s, Val{s.bot}, sm(Val{s.top}))) return "not bot <= sim(top)";
      Val sb = sm(Val{s.bot});
      if (sb && *sb != s.top) return "sim(bot) = " + show(s, sb) + " != top";
      if (!sb) return "sim(bot) undefined";
      return std::nullopt;
    });
  } else {
    for (const char* id : {"WN2-S", "WN3-S"}) ck.inapplicable(id, "needs 'sim' and 'ls'");
  }
}

inline void group_omm(const FiniteStructure& s, AxiomChecker& ck) {
  if (!s.has_binary("ominus")) {
    for (const char* id : {"omi1", "omi2", "omi3"}) ck.inapplicable(id, "no 'ominus' table");
    return;
  }
  auto om = [&](Val a, Val b) { return s.bin("ominus", a, b); };
  ck.check1("omi1", [&](std::size_t a) -> std::optional<std::string> {
    Val v = om(a, a);
    if (v && *v != s.bot) return "a - a = " + show(s, v) + " != bot";
    return std::nullopt;
  });
  ck.check2("omi2", [&](std::size_t a, std::size_t b) -> std::optional<std::string> {
    if (!s.le(a, b)) return std::nullopt;
    Val v = om(a, b);
    if (v && *v != s.bot) return "a<=b but a - b = " + show(s, v) + " != bot";
    return std::nullopt;
  });
  ck.check3("omi3", [&](std::size_t a, std::size_t b, std::size_t c) -> std::optional<std::string> {
    if (s.le(a, b) && !wle(s, om(a, c), om(b, c))) return "a<=b but not a-c <= b-c";
    return std::nullopt;
  });
}

inline void group_prclai(const FiniteStructure& s, AxiomChecker& ck) {
  auto vee = [&](Val a, Val b) { return s.bin("vee", a, b); };
  auto ot = [&](Val a, Val b) { return s.bin("otimes", a, b); };
  auto dt = [&](Val a, Val b) { return s.bin("dot", a, b); };
  if (s.has_binary("otimes") && s.has_unary("us")) {
    ck.check3("wAasso1", [&](std::size_t a, std::size_t b, std::size_t e) -> std::optional<std::string> {
      auto closed = [&](std::size_t x) {
        Val xu = s.un("us", x);
        return seq(s.un("us", xu), xu);
      };
      if (!(closed(a) && closed(b) && closed(e))) return std::nullopt;
      if (!seq(ot(Val{a}, ot(b, e)), ot(ot(a, b), Val{e}))) return "a*(b*e) != (a*b)*e";
      return std::nullopt;
    });
  } else {
    ck.inapplicable("wAasso1", "needs 'otimes' and 'us'");
  }
  if (s.has_binary("otimes") && s.has_binary("vee")) {
    // checked exactly as printed, with a, b, e, c independent
    ck.check3("wAsso2", [&](std::size_t a, std::size_t b, std::size_t c) -> std::optional<std::string> {
      Val lhs = ot(Val{a}, ot(vee(b, c), Val{a}));
      Val rhs = ot(ot(vee(a, b), Val{c}), Val{c});
      if (!weq(lhs, rhs)) return "lhs = " + show(s, lhs) + " != " + show(s, rhs);
      return std::nullopt;
    }, "variables tied so both sides range over the same letters");
    ck.check4("wAsso2[free]", [&](std::size_t a, std::size_t b, std::size_t e, std::size_t c) -> std::optional<std::string> {
      Val lhs = ot(Val{a}, ot(vee(b, e), Val{a}));
      Val rhs = ot(ot(vee(a, b), Val{c}), Val{c});
      if (!weq(lhs, rhs)) return "lhs = " + show(s, lhs) + " != " + show(s, rhs);
      return std::nullopt;
    }, "variant with all four variables independent", true);
  } else {
    ck.inapplicable("wAsso2", "needs 'otimes' and 'vee'");
  }
  check_implication_properties(s, ck, "imp_sim", "imsc:", {"FPA", "SPM", "BC3", "IBL"});
  check_implication_properties(s, ck, "imp_neg", "inegc:", {"FPA", "IP", "SPM", "BC1", "BC2", "BC3"});
  if (s.has_binary("dot")) {
    ck.check2("dot-comm", [&](std::size_t a, std::size_t b) -> std::optional<std::string> {
      if (!weq(dt(a, b), dt(b, a))) return "a.b != b.a";
      return std::nullopt;
    });
    ck.check3("dot-assoc", [&](std::size_t a, std::size_t b, std::size_t c) -> std::optional<std::string> {
      if (!weq(dt(dt(a, b), Val{c}), dt(Val{a}, dt(b, c)))) return "(a.b).c != a.(b.c)";
      return std::nullopt;
    });
    ck.check1("dot-identity", [&](std::size_t a) -> std::optional<std::string> {
      // the unit can only act on lower-closed elements
      if (s.has_unary("ls") && !seq(s.un("ls", Val{a}), Val{a})) return std::nullopt;
      if (!weq(dt(Val{a}, Val{s.top}), Val{a})) return "a.top != a";
      return std::nullopt;
    }, "unit top, restricted to lower-closed elements");
    ck.check1("dot-identity[printed]", [&](std::size_t a) -> std::optional<std::string> {
      if (!weq(dt(Val{a}, Val{s.bot}), Val{a})) return "a.bot != a";
      return std::nullopt;
    }, "literal reading with unit bot", true);
    ck.check3("dot-order-compat", [&](std::size_t a, std::size_t b, std::size_t c) -> std::optional<std::string> {
      if (s.le(a, b) && (!wle(s, dt(a, c), dt(b, c)) || !wle(s, dt(c, a), dt(c, b))))
        return "a<=b but dot is not isotone";
      return std::nullopt;
    }, "order-compatibility checked as isotonicity in each argument");
  } else {
    for (const char* id : {"dot-comm", "dot-assoc", "dot-identity", "dot-order-compat"})
      ck.inapplicable(id, "no 'dot' table");
  }
  if (s.has_binary("otimes")) {
    ck.check2("otimes-comm", [&](std::size_t a, std::size_t b) -> std::optional<std::string> {
      if (!weq(ot(a, b), ot(b, a))) return "a*b != b*a";
      return std::nullopt;
    });
    ck.check1("otimes-identity", [&](std::size_t a) -> std::optional<std::string> {
      // dually, the unit can only act on upper-closed elements
      if (s.has_unary("us") && !seq(s.un("us", Val{a}), Val{a})) return std::nullopt;
      if (!weq(ot(Val{a}, Val{s.bot}), Val{a})) return "a*bot != a";
      return std::nullopt;
    }, "unit bot, restricted to upper-closed elements");
    ck.check1("otimes-identity[printed]", [&](std::size_t a) -> std::optional<std::string> {
      if (!weq(ot(Val{a}, Val{s.top}), Val{a})) return "a*top != a";
      return std::nullopt;
    }, "literal reading with unit top", true);
    ck.check3("otimes-order-compat", [&](std::size_t a, std::size_t b, std::size_t c) -> std::optional<std::string> {
      if (s.le(a, b) && (!wle(s, ot(a, c), ot(b, c)) || !wle(s, ot(c, a), ot(c, b))))
        return "a<=b but otimes is not isotone";
      return std::nullopt;
    }, "order-compatibility checked as isotonicity in each argument");
  } else {
    for (const char* id : {"otimes-comm", "otimes-identity", "otimes-order-compat"})
      ck.inapplicable(id, "no 'otimes' table");
  }
}

inline void group_difference_poset(const FiniteStructure& s, AxiomChecker& ck,
                                   const BinaryTable* oplus_override = nullptr) {
  if (!s.has_binary("ominus")) {
    for (const char* id : {"dp1", "dp2", "dp3", "dp-cancel"}) ck.inapplicable(id, "no 'ominus' table");
  } else {
    auto om = [&](Val a, Val b) { return s.bin("ominus", a, b); };
    ck.check2("dp1", [&](std::size_t a, std::size_t b) -> std::optional<std::string> {
      bool defined = om(b, a).has_value();
      if (s.le(a, b) != defined)
        return std::string("a<=b is ") + (s.le(a, b) ? "true" : "false") + " but b-a is " +
               (defined ? "defined" : "undefined");
      return std::nullopt;
    });
    ck.check2("dp2", [&](std::size_t a, std::size_t b) -> std::optional<std::string> {
      if (!s.le(a, b)) return std::nullopt;
      Val ba = om(b, a);
      if (!seq(om(Val{b}, ba), Val{a})) return "b-(b-a) != a";
      if (!wle(s, ba, Val{b})) return "not b-a <= b";
      return std::nullopt;
    });
    ck.check3("dp3", [&](std::size_t a, std::size_t b, std::size_t c) -> std::optional<std::string> {
      Val cb = om(c, b), ca = om(c, a), ba = om(b, a);
      bool chain = s.le(a, b) && s.le(b, c);
      bool rhs = cb && ca && ba && s.le(*cb, *ca) && seq(om(ca, cb), ba);
      if (chain != rhs) return chain ? "a<=b<=c but rhs fails" : "rhs holds but not a<=b<=c";
      return std::nullopt;
    });
    ck.check3("dp-cancel", [&](std::size_t a, std::size_t b, std::size_t c) -> std::optional<std::string> {
      if (s.le(c, a) && s.le(c, b) && seq(om(a, c), om(b, c)) && a != b)
        return "a-c = b-c but a != b";
      return std::nullopt;
    });
  }

  const BinaryTable* oplus = oplus_override;
  if (!oplus && s.has_binary("oplus")) oplus = &s.binary.at("oplus");
  if (!oplus) {
    for (const char* id : {"oplus-comm", "oplus-assoc", "oplus-cancel", "oplus-zero", "oplus-idem"})
      ck.inapplicable(id, "no 'oplus' table and none derivable");
    return;
  }
  auto op = [&](Val a, Val b) -> Val {
    if (!a || !b) return std::nullopt;
    return (*oplus)[*a][*b];
  };
  ck.check2("oplus-comm", [&](std::size_t a, std::size_t b) -> std::optional<std::string> {
    if (!weqs(op(a, b), op(b, a))) return "a+b and b+a differ (omega*)";
    return std::nullopt;
  });
  ck.check3("oplus-assoc", [&](std::size_t a, std::size_t b, std::size_t c) -> std::optional<std::string> {
    if (!weqs(op(op(a, b), Val{c}), op(Val{a}, op(b, c)))) return "(a+b)+c and a+(b+c) differ (omega*)";
    return std::nullopt;
  });
  ck.check3("oplus-cancel", [&](std::size_t a, std::size_t b, std::size_t c) -> std::optional<std::string> {
    if (seq(op(a, b), op(a, c)) && b != c) return "a+b = a+c but b != c";
    return std::nullopt;
  });
  ck.check1("oplus-zero", [&](std::size_t a) -> std::optional<std::string> {
    for (std::size_t b = 0; b < s.size(); ++b)
      if (seq(op(a, b), Val{a})) return std::nullopt;
    return "no b with a+b = a";
  });
  ck.check2("oplus-idem", [&](std::size_t a, std::size_t b) -> std::optional<std::string> {
    if (seq(op(op(a, a), Val{b}), Val{a}) && !seq(op(a, a), Val{a}))
      return "(a+a)+b = a but a+a != a";
    return std::nullopt;
  }, "checked as (a+a)+b = a -> a+a = a; the printed converse is reported separately");
  ck.check2("oplus-idem[printed]", [&](std::size_t a, std::size_t b) -> std::optional<std::string> {
    if (seq(op(a, a), Val{a}) && !seq(op(op(a, a), Val{b}), Val{a}))
      return "a+a = a but (a+a)+b != a";
    return std::nullopt;
  }, "literal printed direction", true);
}

inline void group_effect_algebra(const FiniteStructure& s, AxiomChecker& ck,
                                 const BinaryTable* oplus_override = nullptr) {
  const BinaryTable* oplus = oplus_override;
  if (!oplus && s.has_binary("oplus")) oplus = &s.binary.at("oplus");
  if (!oplus) {
    for (const char* id : {"ea-orthocomplement", "ea-zero-sum"})
      ck.inapplicable(id, "no 'oplus' table and none derivable");
    return;
  }
  auto op = [&](Val a, Val b) -> Val {
    if (!a || !b) return std::nullopt;
    return (*oplus)[*a][*b];
  };
  ck.check1("ea-orthocomplement", [&](std::size_t a) -> std::optional<std::string> {
    std::size_t hits = 0;
    for (std::size_t b = 0; b < s.size(); ++b)
      if (seq(op(a, b), Val{s.top})) ++hits;
    if (hits != 1) return "a has " + std::to_string(hits) + " orthocomplements";
    return std::nullopt;
  });
  ck.check2("ea-zero-sum", [&](std::size_t a, std::size_t b) -> std::optional<std::string> {
    if (seq(op(a, a), Val{b}) && !(a == s.bot && b == s.bot))
      return "a+a defined with a != bot";
    return std::nullopt;
  });
}

}  // namespace detail

// Derives one of the paper's defined operations from the ingredient tables.
struct DerivationReport {
  std::string which;
  std::optional<UnaryTable> unary;
  std::optional<BinaryTable> binary;
  std::vector<std::string> notes;  // non-unique bounds, undefined spots
};

inline DerivationReport derive_operation(const FiniteStructure& s, const std::string& which) {
  DerivationReport rep;
  rep.which = which;
  const std::size_t n = s.size();
  auto need_unary = [&](const char* slot) {
    if (!s.has_unary(slot)) throw input_error("derivation of '" + which + "' needs unary table '" + slot + "'");
  };
  auto need_binary = [&](const char* slot) {
    if (!s.has_binary(slot)) throw input_error("derivation of '" + which + "' needs binary table '" + slot + "'");
  };

  if (which == "dot" || which == "otimes") {
    const char* approx = which == "dot" ? "ls" : "us";
    const char* lat = which == "dot" ? "wedge" : "vee";
    need_unary(approx);
    need_binary(lat);
    BinaryTable t(n, std::vector<Val>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        t[a][b] = s.bin(lat, s.un(approx, a), s.un(approx, b));
    rep.binary = std::move(t);
    return rep;
  }

  if (which == "neg" || which == "sim") {
    const char* agg = which == "neg" ? "otimes" : "dot";
    need_binary(agg);
    const std::size_t target = which == "neg" ? s.top : s.bot;
    UnaryTable t(n);
    for (std::size_t a = 0; a < n; ++a) {
      std::vector<std::size_t> zs;
      for (std::size_t z = 0; z < n; ++z)
        if (detail::seq(s.bin(agg, a, z), Val{target})) zs.push_back(z);
      if (zs.empty()) {
        rep.notes.push_back(which + "(" + s.carrier[a] + "): no witnesses, undefined");
        continue;
      }
      // least (neg) / greatest (sim) element of the witness set itself; the
      // extremum must be attained, otherwise the value is undefined
      std::vector<std::size_t> bounds;
      for (auto g : zs) {
        bool is_bound = true;
        for (auto z : zs)
          if (which == "neg" ? !s.le(g, z) : !s.le(z, g)) { is_bound = false; break; }
        if (is_bound) bounds.push_back(g);
      }
      if (bounds.empty()) {
        rep.notes.push_back(which + "(" + s.carrier[a] + "): witness set has no " +
                            (which == "neg" ? "least" : "greatest") + " element, undefined");
        continue;
      }
      bool all_equiv = true;
      for (auto g : bounds)
        if (!s.equiv(bounds.front(), g)) all_equiv = false;
      if (!all_equiv) {
        rep.notes.push_back(which + "(" + s.carrier[a] + "): bound not unique up to order-equivalence, undefined");
        continue;
      }
      if (bounds.size() > 1)
        rep.notes.push_back(which + "(" + s.carrier[a] + "): " + std::to_string(bounds.size()) +
                            " order-equivalent bounds, first in carrier order chosen");
      t[a] = bounds.front();
    }
    rep.unary = std::move(t);
    return rep;
  }

  if (which == "ominus") {
    need_unary("ls");
    need_unary("sim");
    need_binary("wedge");
    BinaryTable t(n, std::vector<Val>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        t[a][b] = s.bin("wedge", s.un("ls", a), s.un("ls", s.un("sim", b)));
    rep.binary = std::move(t);
    return rep;
  }

  if (which == "oplus") {
    need_binary("ominus");
    BinaryTable t(n, std::vector<Val>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t c = 0; c < n; ++c) {
        std::vector<std::size_t> bs;
        for (std::size_t b = 0; b < n; ++b)
          if (detail::seq(s.bin("ominus", b, a), Val{c})) bs.push_back(b);
        if (bs.size() == 1) t[a][c] = bs.front();
        else if (bs.size() > 1)
          rep.notes.push_back("oplus(" + s.carrier[a] + "," + s.carrier[c] +
                              "): ominus is not cancellative here (" + std::to_string(bs.size()) +
                              " candidates), undefined");
      }
    rep.binary = std::move(t);
    return rep;
  }

  throw input_error("unknown derived operation: " + which);
}

inline AxiomReport check_axioms(const FiniteStructure& s, const std::string& group) {
  s.validate();
  AxiomReport report;
  report.group = group;
  detail::AxiomChecker ck(s, report);
  if (group == "quasiorder") {
    detail::group_quasiorder(s, ck);
  } else if (group == "weak-partial-lattice") {
    detail::group_wpl(s, ck);
  } else if (group == "prcqo") {
    detail::group_prcqo(s, ck);
  } else if (group == "classification") {
    const std::size_t n = s.size();
    bool antisym = true;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (a != b && s.le(a, b) && s.le(b, a)) antisym = false;
    bool lattice = antisym;
    for (std::size_t a = 0; a < n && lattice; ++a)
      for (std::size_t b = 0; b < n && lattice; ++b) {
        bool has_lub = false, has_glb = false;
        for (std::size_t z = 0; z < n; ++z) {
          if (s.le(a, z) && s.le(b, z)) {
            bool least = true;
            for (std::size_t w = 0; w < n && least; ++w)
              if (s.le(a, w) && s.le(b, w) && !s.le(z, w)) least = false;
            if (least) has_lub = true;
          }
          if (s.le(z, a) && s.le(z, b)) {
            bool greatest = true;
            for (std::size_t w = 0; w < n && greatest; ++w)
              if (s.le(w, a) && s.le(w, b) && !s.le(w, z)) greatest = false;
            if (greatest) has_glb = true;
          }
        }
        if (!(has_lub && has_glb)) lattice = false;
      }
    AxiomResult r;
    r.id = "classification";
    r.status = AxiomStatus::pass;
    r.note = !antisym ? "PRCQO" : (lattice ? "PRCL" : "PRCPO");
    report.axioms.push_back(std::move(r));
  } else if (group == "negation") {
    detail::group_negation(s, ck, "neg");
    detail::group_negation(s, ck, "sim");
  } else if (group == "weak-negation") {
    detail::group_weak_negation(s, ck);
  } else if (group == "omm") {
    detail::group_omm(s, ck);
  } else if (group == "implication") {
    detail::check_implication_properties(s, ck, "imp_neg", "imp_neg:",
                                         {"FPA", "SPM", "BC1", "BC2", "BC3", "OP", "IBL", "IP"});
    detail::check_implication_properties(s, ck, "imp_sim", "imp_sim:",
                                         {"FPA", "SPM", "BC1", "BC2", "BC3", "OP", "IBL", "IP"});
  } else if (group == "prclai") {
    detail::group_prclai(s, ck);
  } else if (group == "difference-poset" || group == "effect-algebra") {
    std::optional<BinaryTable> derived;
    if (!s.has_binary("oplus") && s.has_binary("ominus")) {
      auto rep = derive_operation(s, "oplus");
      derived = std::move(*rep.binary);
    }
    if (group == "difference-poset")
      detail::group_difference_poset(s, ck, derived ? &*derived : nullptr);
    else
      detail::group_effect_algebra(s, ck, derived ? &*derived : nullptr);
  } else if (group == "graded") {
    bool antisym = true;
    for (std::size_t a = 0; a < s.size() && antisym; ++a)
      for (std::size_t b = 0; b < s.size() && antisym; ++b)
        if (a != b && s.le(a, b) && s.le(b, a)) antisym = false;
    AxiomResult r;
    r.id = "graded";
    if (!antisym) {
      r.status = AxiomStatus::inapplicable;
      r.note = "gradedness is checked for partial orders only";
    } else {
      std::vector<std::size_t> ranks;
      bool ok = detail::poset_graded_ranks(s.leq, ranks);
      r.status = ok ? AxiomStatus::pass : AxiomStatus::fail;
      if (ok) {
        std::string m = "ranks:";
        for (std::size_t i = 0; i < s.size(); ++i)
          m += " " + s.carrier[i] + "=" + std::to_string(ranks[i]);
        r.note = m;
      } else {
        r.counterexamples.push_back({{}, "no rank function with cover increment one exists"});
      }
    }
    report.axioms.push_back(std::move(r));
  } else {
    throw input_error("unknown axiom group: " + group);
  }
  return report;
}

inline const std::vector<std::string> kAxiomGroups = {
    "quasiorder", "weak-partial-lattice", "prcqo",          "classification",
    "negation",   "weak-negation",        "omm",            "implication",
    "prclai",     "difference-poset",     "effect-algebra", "graded"};

// Bridges a concrete granulation into the checker: carrier = all subsets,
// <= is inclusion, vee/wedge are (total) union/intersection, unary slots
// are filled from approximation operators.
inline FiniteStructure rough_powerset_structure(const UniversePtr& u,
                                                const std::map<std::string, Operator>& slots) {
  if (u->size() > powerset_cap()) throw input_error("universe exceeds the exhaustive powerset cap");
  FiniteStructure s;
  const std::size_t count = std::size_t{1} << u->size();
  s.carrier.reserve(count);
  for (std::uint64_t m = 0; m < count; ++m) s.carrier.push_back(ObjectSet(u, m).to_string());
  s.bot = 0;
  s.top = count - 1;
  s.leq.assign(count, std::vector<bool>(count, false));
  for (std::uint64_t a = 0; a < count; ++a)
    for (std::uint64_t b = 0; b < count; ++b) s.leq[a][b] = (a & ~b) == 0;
  BinaryTable vee(count, std::vector<Val>(count)), wedge(count, std::vector<Val>(count));
  for (std::uint64_t a = 0; a < count; ++a)
    for (std::uint64_t b = 0; b < count; ++b) {
      vee[a][b] = static_cast<std::size_t>(a | b);
      wedge[a][b] = static_cast<std::size_t>(a & b);
    }
  s.binary["vee"] = std::move(vee);
  s.binary["wedge"] = std::move(wedge);
  for (const auto& [slot, op] : slots) {
    UnaryTable t(count);
    for (std::uint64_t m = 0; m < count; ++m)
      t[m] = static_cast<std::size_t>(op.apply(ObjectSet(u, m)).bits());
    s.unary[slot] = std::move(t);
  }
  s.validate();
  return s;
}

}  // namespace rough

#endif  // ROUGHMEASURE_ALGEBRA_HPP
