#include "vadeval/prob_metrics.hpp"

#include <algorithm>
#include <cmath>

#include "vadeval/classic_metrics.hpp"
#include "vadeval/error.hpp"

namespace vadeval {

namespace {

constexpr double kNoise = 1e-9;
constexpr double kCollapsed = 1e-12;

void require_non_constant(std::span<const double> soft) {
  if (soft.empty()) throw ComputeError("degenerate label distribution: no frames");
  const auto [lo, hi] = std::minmax_element(soft.begin(), soft.end());
  if (*lo == *hi) throw ComputeError("degenerate label distribution: labels are constant");
}

std::vector<double> complement(std::span<const double> v) {
  std::vector<double> out(v.size());
  std::transform(v.begin(), v.end(), out.begin(), [](double x) { return 1.0 - x; });
  return out;
}

void require_collapse_free(const ProbNormalization& n) {
  if (n.best_area - n.worst_area < kCollapsed)
    throw ComputeError("normalization collapsed: best and worst areas coincide");
}

}  // namespace

std::vector<ProbLabelTrace> make_prob_labels(std::span<const AnnotationRound> rounds,
                                             const Manifest& manifest) {
  if (rounds.empty()) throw ValidationError("probabilistic labels need at least one round");
  std::vector<ProbLabelTrace> out;
  out.reserve(manifest.size());
  for (const auto& v : manifest)
    out.push_back({v.video_id, std::vector<double>(static_cast<std::size_t>(v.frame_count), 0.0)});

  // Count votes as integers first so every value is exactly k / R.
  std::vector<std::vector<std::uint32_t>> votes(manifest.size());
  for (std::size_t j = 0; j < manifest.size(); ++j)
    votes[j].assign(static_cast<std::size_t>(manifest[j].frame_count), 0);
  for (const auto& round : rounds) {
    auto hard = expand_round(round, manifest);
    for (std::size_t j = 0; j < manifest.size(); ++j)
      for (std::size_t i = 0; i < hard[j].size(); ++i) votes[j][i] += hard[j][i];
  }
  const double r = static_cast<double>(rounds.size());
  for (std::size_t j = 0; j < manifest.size(); ++j)
    for (std::size_t i = 0; i < votes[j].size(); ++i) out[j].probs[i] = votes[j][i] / r;
  return out;
}

std::vector<std::vector<double>> probs_of(std::span<const ProbLabelTrace> traces) {
  std::vector<std::vector<double>> out;
  out.reserve(traces.size());
  for (const auto& t : traces) out.push_back(t.probs);
  return out;
}

bool is_hard(std::span<const double> labels) {
  return std::all_of(labels.begin(), labels.end(), [](double y) { return y == 0.0 || y == 1.0; });
}

double ProbNormalization::ratio() const { return (raw_area - worst_area) / (best_area - worst_area); }

std::pair<Curve, Curve> best_worst_curves(std::span<const double> soft_labels, CurveKind kind) {
  require_non_constant(soft_labels);
  const auto worst_scores = complement(soft_labels);
  switch (kind) {
    case CurveKind::roc:
      return {roc_curve(soft_labels, soft_labels), roc_curve(worst_scores, soft_labels)};
    case CurveKind::pr:
      return {pr_curve(soft_labels, soft_labels), pr_curve(worst_scores, soft_labels)};
    default:
      throw ValidationError("bounding curves exist only for roc and pr");
  }
}

ProbNormalization prob_auc_areas(std::span<const double> scores,
                                 std::span<const double> soft_labels) {
  auto [best, worst] = best_worst_curves(soft_labels, CurveKind::roc);
  ProbNormalization n;
  n.raw_area = auc(scores, soft_labels);
  n.best_area = trapezoid_area(best);
  n.worst_area = trapezoid_area(worst);
  return n;
}

ProbNormalization prob_ap_areas(std::span<const double> scores,
                                std::span<const double> soft_labels) {
  auto [best, worst] = best_worst_curves(soft_labels, CurveKind::pr);
  ProbNormalization n;
  n.raw_area = ap(scores, soft_labels);
  n.best_area = step_area(best);
  // On hard labels the worst PR curve degenerates to the recall axis; its
  // step area (the positive rate) is an artifact of the final jump.
  n.worst_area = is_hard(soft_labels) ? 0.0 : step_area(worst);
  return n;
}

double prob_auc(std::span<const double> scores, std::span<const double> soft_labels) {
  const auto n = prob_auc_areas(scores, soft_labels);
  require_collapse_free(n);
  const double r = n.ratio();
  if (r < -kNoise || r > 1.0 + kNoise)
    throw ComputeError("ProbAUC outside [0,1]: " + std::to_string(r));
  return std::clamp(r, 0.0, 1.0);
}

double prob_ap(std::span<const double> scores, std::span<const double> soft_labels) {
  const auto n = prob_ap_areas(scores, soft_labels);
  require_collapse_free(n);
  return std::clamp(n.ratio(), 0.0, 1.0);
}

}  // namespace vadeval
