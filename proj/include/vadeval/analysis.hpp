#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "vadeval/model.hpp"

namespace vadeval {

enum class PerturbMode { identity, desc, asc };

PerturbMode parse_perturb_mode(std::string_view s);
std::string_view to_string(PerturbMode m);

// Re-orders each video's in-interval scores (desc: earliest frames get the
// highest scores). Frames outside the intervals are untouched.
std::vector<FrameScoreTrace> perturb_scores(std::span<const FrameScoreTrace> preds,
                                            std::span<const EventInterval> intervals,
                                            PerturbMode mode);

// 1-based ranks, ties share the average of their positions.
std::vector<double> average_ranks(std::span<const double> values);

// Spearman rank-order correlation (Pearson over average ranks).
double srocc(std::span<const double> a, std::span<const double> b);

struct Histogram {
  std::vector<double> edges;    // bins + 1 uniform edges on [0, 1]
  std::vector<double> density;  // fraction of positives per bin; sums to 1 unless empty
  std::size_t positives = 0;
};

// Normalized positions of in-interval positives (score >= tau) over all
// abnormal videos. The last bin is closed on the right.
Histogram position_histogram(std::span<const FrameScoreTrace> preds,
                             std::span<const EventInterval> intervals, double tau,
                             std::size_t bins);

}  // namespace vadeval
