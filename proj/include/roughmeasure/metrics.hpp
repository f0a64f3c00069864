#ifndef ROUGHMEASURE_METRICS_HPP
#define ROUGHMEASURE_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "roughmeasure/core.hpp"

namespace rough {

using Rational = boost::multiprecision::cpp_rational;

// A rate that may be undefined (zero denominator, sign mismatch). The
// reason travels with the value; undefined is never silently defaulted.
template <typename T>
struct Maybe {
  std::optional<T> value;
  std::string reason;  // set when undefined

  static Maybe defined(T v) { return {std::move(v), {}}; }
  static Maybe undefined(std::string why) { return {std::nullopt, std::move(why)}; }
  explicit operator bool() const { return value.has_value(); }
};

inline double to_double(const Rational& r) { return static_cast<double>(r); }

struct ConfusionCounts {
  long long tp = 0, fp = 0, tn = 0, fn = 0;

  long long top() const { return tp + fp; }  // classified positive
  long long ton() const { return tn + fn; }  // classified negative
  long long total() const { return tp + fp + tn + fn; }
};

inline ConfusionCounts confusion(const std::vector<std::string>& predicted,
                                 const std::vector<std::string>& truth, const std::string& positive) {
  if (predicted.size() != truth.size()) throw input_error("predicted/truth length mismatch");
  ConfusionCounts c;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    bool p = predicted[i] == positive;
    bool t = truth[i] == positive;
    if (p && t) ++c.tp;
    else if (p && !t) ++c.fp;
    else if (!p && !t) ++c.tn;
    else ++c.fn;
  }
  return c;
}

enum class RateMode { paper, conventional };

struct RateSet {
  RateMode mode;
  Maybe<Rational> tpr, fpr, tnr, fnr, precision, recall, f_measure, accuracy;
};

namespace detail {
inline Maybe<Rational> ratio(long long num, long long den, const char* what) {
  if (den == 0) return Maybe<Rational>::undefined(std::string(what) + ": zero denominator");
  return Maybe<Rational>::defined(Rational(num, den));
}
}  // namespace detail

// paper mode divides by the *classified* totals (TPR = TP/ToP); conventional
// mode divides by the ground-truth totals (TPR = TP/(TP+FN)).
inline RateSet rates(const ConfusionCounts& c, RateMode mode) {
  RateSet r;
  r.mode = mode;
  if (mode == RateMode::paper) {
    r.tpr = detail::ratio(c.tp, c.top(), "TPR");
    r.fpr = detail::ratio(c.fp, c.ton(), "FPR");
    r.tnr = detail::ratio(c.tn, c.ton(), "TNR");
    r.fnr = detail::ratio(c.fn, c.top(), "FNR");
  } else {
    r.tpr = detail::ratio(c.tp, c.tp + c.fn, "TPR");
    r.fpr = detail::ratio(c.fp, c.fp + c.tn, "FPR");
    r.tnr = detail::ratio(c.tn, c.tn + c.fp, "TNR");
    r.fnr = detail::ratio(c.fn, c.fn + c.tp, "FNR");
  }
  r.precision = detail::ratio(c.tp, c.top(), "precision");
  r.recall = detail::ratio(c.tp, c.tp + c.fn, "recall");
  if (r.precision && r.recall) {
    Rational sum = *r.precision.value + *r.recall.value;
    if (sum == 0)
      r.f_measure = Maybe<Rational>::undefined("F: precision + recall = 0");
    else
      r.f_measure = Maybe<Rational>::defined(2 * *r.precision.value * *r.recall.value / sum);
  } else {
    r.f_measure = Maybe<Rational>::undefined("F: precision or recall undefined");
  }
  r.accuracy = detail::ratio(c.tp + c.tn, c.total(), "accuracy");
  return r;
}

struct KappaMcc {
  RateMode mode;
  Maybe<double> kappa;
  Maybe<Rational> mcc_paper;     // harmonic mean, exact (paper mode)
  Maybe<double> mcc;             // rendered value in either mode
  Maybe<Rational> q1, q2;        // the paper's two quotients (paper mode)
};

// paper mode: Q1 = (TP*TN - FP*FN)/(ToP*(FP+TN)), Q2 with ToN*(TP+FN);
// kappa = sign-preserving geometric mean of Q1,Q2, mcc = their harmonic
// mean. conventional mode: standard Cohen's kappa and the square-root MCC.
inline KappaMcc kappa_mcc(const ConfusionCounts& c, RateMode mode) {
  KappaMcc k;
  k.mode = mode;
  const Rational det = Rational(c.tp) * c.tn - Rational(c.fp) * c.fn;
  if (mode == RateMode::paper) {
    long long d1 = c.top() * (c.fp + c.tn);
    long long d2 = c.ton() * (c.tp + c.fn);
    k.q1 = d1 == 0 ? Maybe<Rational>::undefined("Q1: zero denominator")
                   : Maybe<Rational>::defined(det / d1);
    k.q2 = d2 == 0 ? Maybe<Rational>::undefined("Q2: zero denominator")
                   : Maybe<Rational>::defined(det / d2);
    if (!k.q1 || !k.q2) {
      k.kappa = Maybe<double>::undefined("kappa: Q1 or Q2 undefined");
      k.mcc = Maybe<double>::undefined("mcc: Q1 or Q2 undefined");
      return k;
    }
    const Rational &q1 = *k.q1.value, &q2 = *k.q2.value;
    if ((q1 > 0 && q2 < 0) || (q1 < 0 && q2 > 0)) {
      k.kappa = Maybe<double>::undefined("kappa: Q1 and Q2 differ in sign");
    } else {
      double g = std::sqrt(to_double(q1) * to_double(q2));
      k.kappa = Maybe<double>::defined(q1 < 0 ? -g : g);
    }
    Rational sum = q1 + q2;
    if (sum == 0) {
      k.mcc_paper = Maybe<Rational>::undefined("mcc: Q1 + Q2 = 0");
      k.mcc = Maybe<double>::undefined("mcc: Q1 + Q2 = 0");
    } else {
      k.mcc_paper = Maybe<Rational>::defined(2 * q1 * q2 / sum);
      k.mcc = Maybe<double>::defined(to_double(*k.mcc_paper.value));
    }
  } else {
    // Cohen's kappa = 2(TP*TN - FP*FN) / ((TP+FP)(FP+TN) + (TP+FN)(FN+TN))
    Rational den = Rational(c.tp + c.fp) * (c.fp + c.tn) + Rational(c.tp + c.fn) * (c.fn + c.tn);
    if (den == 0)
      k.kappa = Maybe<double>::undefined("kappa: zero denominator");
    else
      k.kappa = Maybe<double>::defined(to_double(2 * det / den));
    Rational prod = Rational(c.tp + c.fp) * (c.tp + c.fn) * (c.tn + c.fp) * (c.tn + c.fn);
    if (prod == 0)
      k.mcc = Maybe<double>::undefined("mcc: zero denominator");
    else
      k.mcc = Maybe<double>::defined(to_double(det) / std::sqrt(to_double(prod)));
  }
  return k;
}

struct CurvePoint {
  double x, y;  // ROC: (FPR, TPR); PR: (recall, precision)
};

struct Curves {
  std::vector<CurvePoint> roc, pr;
  double auc_roc = 0, auc_pr = 0;
  double mann_whitney = 0;  // independent rank-statistic computation of AUC-ROC
};

// Threshold sweep over distinct scores, ties grouped; AUC by trapezoids.
inline Curves curves(const std::vector<double>& scores, const std::vector<std::string>& truth,
                     const std::string& positive) {
  if (scores.size() != truth.size()) throw input_error("scores/truth length mismatch");
  long long pos = 0, neg = 0;
  for (const auto& t : truth) (t == positive ? pos : neg)++;
  if (pos == 0) throw input_error("degenerate input: no positive-labeled items");
  if (neg == 0) throw input_error("degenerate input: no negative-labeled items");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  Curves out;
  out.roc.push_back({0, 0});
  long long tp = 0, fp = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    double thr = scores[order[i]];
    long long dtp = 0, dfp = 0;
    while (i < order.size() && scores[order[i]] == thr) {
      (truth[order[i]] == positive ? dtp : dfp)++;
      ++i;
    }
    // PR interpolation across a tied group, from the pre-group point
    tp += dtp;
    fp += dfp;
    out.roc.push_back({double(fp) / neg, double(tp) / pos});
    out.pr.push_back({double(tp) / pos, double(tp) / (tp + fp)});
  }
  for (std::size_t j = 1; j < out.roc.size(); ++j)
    out.auc_roc += (out.roc[j].x - out.roc[j - 1].x) * (out.roc[j].y + out.roc[j - 1].y) / 2;
  // PR AUC by trapezoid over recall, from the first attained point
  for (std::size_t j = 1; j < out.pr.size(); ++j)
    out.auc_pr += (out.pr[j].x - out.pr[j - 1].x) * (out.pr[j].y + out.pr[j - 1].y) / 2;
  if (!out.pr.empty()) out.auc_pr += out.pr.front().x * out.pr.front().y;  // leading rectangle

  // Mann-Whitney: P(score_pos > score_neg) + P(tie)/2
  double wins = 0;
  for (std::size_t a = 0; a < scores.size(); ++a) {
    if (truth[a] != positive) continue;
    for (std::size_t b = 0; b < scores.size(); ++b) {
      if (truth[b] == positive) continue;
      if (scores[a] > scores[b]) wins += 1;
      else if (scores[a] == scores[b]) wins += 0.5;
    }
  }
  out.mann_whitney = wins / (double(pos) * double(neg));
  return out;
}

}  // namespace rough

#endif  // ROUGHMEASURE_METRICS_HPP
