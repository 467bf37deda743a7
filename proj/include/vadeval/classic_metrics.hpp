#pragma once

// Frame-level AUC / AP / FAR over the concatenated dataset.
//
// Labels are real-valued in [0, 1]: hard labels are 0/1, probabilistic
// labels contribute `label` positive mass and `1 - label` negative mass.
// A frame is predicted positive at threshold tau when score >= tau.

#include <span>
#include <vector>

#include "vadeval/model.hpp"

namespace vadeval {

struct LabeledScores {
  std::vector<double> scores;
  std::vector<double> labels;
};

// Concatenates per-video scores and labels in the given (manifest) order.
LabeledScores concat(std::span<const FrameScoreTrace> preds,
                     std::span<const std::vector<double>> labels);

std::vector<double> to_real(std::span<const std::uint8_t> hard);
std::vector<std::vector<double>> to_real(std::span<const HardLabels> hard);

ConfusionCounts confusion_at(std::span<const double> scores, std::span<const double> labels,
                             double tau);

// Scores sorted once, grouped by unique value (descending), with cumulative
// positive and negative mass per group. Every curve is read off this table.
class SweepAccumulator {
 public:
  static SweepAccumulator build(std::span<const double> scores, std::span<const double> labels);

  std::span<const double> thresholds() const { return thresholds_; }
  std::span<const double> cum_pos() const { return cum_pos_; }
  std::span<const double> cum_neg() const { return cum_neg_; }
  double total_pos() const { return cum_pos_.empty() ? 0.0 : cum_pos_.back(); }
  double total_neg() const { return cum_neg_.empty() ? 0.0 : cum_neg_.back(); }
  std::size_t size() const { return thresholds_.size(); }

 private:
  std::vector<double> thresholds_;
  std::vector<double> cum_pos_;
  std::vector<double> cum_neg_;
};

Curve roc_curve(const SweepAccumulator& sweep);
Curve pr_curve(const SweepAccumulator& sweep);
Curve roc_curve(std::span<const double> scores, std::span<const double> labels);
Curve pr_curve(std::span<const double> scores, std::span<const double> labels);

// Trapezoidal area of a ROC curve.
double trapezoid_area(const Curve& curve);
// Step area sum (x_n - x_{n-1}) * y_n; the sentinel point only anchors x_0.
double step_area(const Curve& curve);

double auc(std::span<const double> scores, std::span<const double> labels);
double ap(std::span<const double> scores, std::span<const double> labels);

// Fraction of frames scored >= tau. Callers pass frames of normal videos only.
double far(std::span<const double> normal_scores, double tau);

// Brute-force references: evaluate confusion_at at every unique threshold.
// O(N * T); intended for tests on small inputs.
double auc_oracle(std::span<const double> scores, std::span<const double> labels);
double ap_oracle(std::span<const double> scores, std::span<const double> labels);

}  // namespace vadeval
