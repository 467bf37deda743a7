#include "vadeval/classic_metrics.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>

#include "vadeval/error.hpp"

namespace vadeval {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_aligned(std::span<const double> scores, std::span<const double> labels) {
  if (scores.size() != labels.size())
    throw ValidationError("score and label vectors differ in length (" +
                          std::to_string(scores.size()) + " vs " + std::to_string(labels.size()) +
                          ")");
}

std::vector<double> unique_descending(std::span<const double> scores) {
  std::vector<double> t(scores.begin(), scores.end());
  std::sort(t.begin(), t.end(), std::greater<>());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

void require_positive_mass(double pos) {
  if (!(pos > 0.0)) throw ComputeError("undefined recall: no positive label mass");
}

void require_negative_mass(double neg) {
  if (!(neg > 0.0)) throw ComputeError("undefined FPR: no negative label mass");
}

}  // namespace

LabeledScores concat(std::span<const FrameScoreTrace> preds,
                     std::span<const std::vector<double>> labels) {
  if (preds.empty()) throw ValidationError("no videos");
  if (preds.size() != labels.size())
    throw ValidationError("predictions and labels cover a different number of videos");
  std::size_t n = 0;
  for (std::size_t j = 0; j < preds.size(); ++j) {
    if (preds[j].scores.size() != labels[j].size())
      throw ValidationError("video '" + preds[j].video_id + "': score and label lengths differ");
    n += preds[j].scores.size();
  }
  LabeledScores out;
  out.scores.reserve(n);
  out.labels.reserve(n);
  for (std::size_t j = 0; j < preds.size(); ++j) {
    out.scores.insert(out.scores.end(), preds[j].scores.begin(), preds[j].scores.end());
    out.labels.insert(out.labels.end(), labels[j].begin(), labels[j].end());
  }
  return out;
}

std::vector<double> to_real(std::span<const std::uint8_t> hard) {
  return std::vector<double>(hard.begin(), hard.end());
}

std::vector<std::vector<double>> to_real(std::span<const HardLabels> hard) {
  std::vector<std::vector<double>> out;
  out.reserve(hard.size());
  for (const auto& h : hard) out.push_back(to_real(h));
  return out;
}

ConfusionCounts confusion_at(std::span<const double> scores, std::span<const double> labels,
                             double tau) {
  check_aligned(scores, labels);
  ConfusionCounts c;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] >= tau) {
      c.tp += labels[i];
      c.fp += 1.0 - labels[i];
    } else {
      c.fn += labels[i];
      c.tn += 1.0 - labels[i];
    }
  }
  return c;
}

SweepAccumulator SweepAccumulator::build(std::span<const double> scores,
                                         std::span<const double> labels) {
  check_aligned(scores, labels);
  std::vector<std::pair<double, double>> order(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) order[i] = {scores[i], labels[i]};
  // Full (score desc, label asc) order: equal keys are equal values, so the
  // summation order below is fully determined by the data.
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });

  SweepAccumulator acc;
  double pos = 0.0;
  double neg = 0.0;
  for (std::size_t i = 0; i < order.size();) {
    const double t = order[i].first;
    for (; i < order.size() && order[i].first == t; ++i) {
      pos += order[i].second;
      neg += 1.0 - order[i].second;
    }
    acc.thresholds_.push_back(t);
    acc.cum_pos_.push_back(pos);
    acc.cum_neg_.push_back(neg);
  }
  return acc;
}

Curve roc_curve(const SweepAccumulator& sweep) {
  require_positive_mass(sweep.total_pos());
  require_negative_mass(sweep.total_neg());
  Curve c{CurveKind::roc, {}};
  c.points.reserve(sweep.size() + 1);
  c.points.push_back({0.0, 0.0, kInf});
  const double P = sweep.total_pos();
  const double N = sweep.total_neg();
  for (std::size_t n = 0; n < sweep.size(); ++n)
    c.points.push_back({sweep.cum_neg()[n] / N, sweep.cum_pos()[n] / P, sweep.thresholds()[n]});
  return c;
}

Curve pr_curve(const SweepAccumulator& sweep) {
  require_positive_mass(sweep.total_pos());
  Curve c{CurveKind::pr, {}};
  c.points.reserve(sweep.size() + 1);
  c.points.push_back({0.0, 1.0, kInf});
  const double P = sweep.total_pos();
  for (std::size_t n = 0; n < sweep.size(); ++n) {
    const double tp = sweep.cum_pos()[n];
    const double predicted = tp + sweep.cum_neg()[n];
    c.points.push_back({tp / P, tp / predicted, sweep.thresholds()[n]});
  }
  return c;
}

Curve roc_curve(std::span<const double> scores, std::span<const double> labels) {
  return roc_curve(SweepAccumulator::build(scores, labels));
}

Curve pr_curve(std::span<const double> scores, std::span<const double> labels) {
  return pr_curve(SweepAccumulator::build(scores, labels));
}

double trapezoid_area(const Curve& curve) {
  double area = 0.0;
  for (std::size_t n = 1; n < curve.points.size(); ++n) {
    const auto& a = curve.points[n - 1];
    const auto& b = curve.points[n];
    area += (b.x - a.x) * (a.y + b.y) * 0.5;
  }
  return area;
}

double step_area(const Curve& curve) {
  double area = 0.0;
  for (std::size_t n = 1; n < curve.points.size(); ++n)
    area += (curve.points[n].x - curve.points[n - 1].x) * curve.points[n].y;
  return area;
}

double auc(std::span<const double> scores, std::span<const double> labels) {
  return trapezoid_area(roc_curve(scores, labels));
}

double ap(std::span<const double> scores, std::span<const double> labels) {
  return step_area(pr_curve(scores, labels));
}

double far(std::span<const double> normal_scores, double tau) {
  if (normal_scores.empty()) throw ComputeError("FAR undefined: no normal frames");
  std::size_t alarms = 0;
  for (double s : normal_scores) alarms += s >= tau ? 1 : 0;
  return static_cast<double>(alarms) / static_cast<double>(normal_scores.size());
}

double auc_oracle(std::span<const double> scores, std::span<const double> labels) {
  check_aligned(scores, labels);
  const auto all = confusion_at(scores, labels, -kInf);
  require_positive_mass(all.tp);
  require_negative_mass(all.fp);
  double area = 0.0;
  double prev_x = 0.0;
  double prev_y = 0.0;
  for (double t : unique_descending(scores)) {
    const auto c = confusion_at(scores, labels, t);
    const double x = c.fp / (c.fp + c.tn);
    const double y = c.tp / (c.tp + c.fn);
    area += (x - prev_x) * (y + prev_y) * 0.5;
    prev_x = x;
    prev_y = y;
  }
  return area;
}

double ap_oracle(std::span<const double> scores, std::span<const double> labels) {
  check_aligned(scores, labels);
  require_positive_mass(confusion_at(scores, labels, -kInf).tp);
  double area = 0.0;
  double prev_r = 0.0;
  for (double t : unique_descending(scores)) {
    const auto c = confusion_at(scores, labels, t);
    const double r = c.tp / (c.tp + c.fn);
    const double p = c.tp / (c.tp + c.fp);
    area += (r - prev_r) * p;
    prev_r = r;
  }
  return area;
}

}  // namespace vadeval
