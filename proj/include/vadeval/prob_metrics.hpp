#pragma once

// ProbAUC / ProbAP: AUC and AP against averaged multi-round labels,
// normalized between the worst and best achievable curve areas.
//
// The best classifier scores every frame with its own soft label (y~), the
// worst with 1 - y~. Both curves come from the same sweep as any other
// classifier.

#include <span>
#include <utility>
#include <vector>

#include "vadeval/model.hpp"

namespace vadeval {

// Per-frame mean of the rounds' hard labels, aligned with manifest order.
std::vector<ProbLabelTrace> make_prob_labels(std::span<const AnnotationRound> rounds,
                                             const Manifest& manifest);

std::vector<std::vector<double>> probs_of(std::span<const ProbLabelTrace> traces);

// True when every label is exactly 0 or 1.
bool is_hard(std::span<const double> labels);

struct ProbNormalization {
  double raw_area = 0.0;
  double worst_area = 0.0;
  double best_area = 0.0;

  double yellow_area() const { return raw_area - worst_area; }
  double red_area() const { return best_area - raw_area; }
  // (raw - worst) / (best - worst), unclamped.
  double ratio() const;
};

// Bounding curves (best, worst) for soft labels. kind is roc or pr.
std::pair<Curve, Curve> best_worst_curves(std::span<const double> soft_labels, CurveKind kind);

ProbNormalization prob_auc_areas(std::span<const double> scores, std::span<const double> soft_labels);
ProbNormalization prob_ap_areas(std::span<const double> scores, std::span<const double> soft_labels);

// Throws ComputeError when the ratio leaves [0, 1] by more than 1e-9.
double prob_auc(std::span<const double> scores, std::span<const double> soft_labels);
// Clamped to [0, 1]: grouped-tie step areas are not strict extremes.
double prob_ap(std::span<const double> scores, std::span<const double> soft_labels);

}  // namespace vadeval
