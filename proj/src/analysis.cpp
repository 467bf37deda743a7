#include "vadeval/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>

#include "vadeval/error.hpp"
#include "vadeval/laap.hpp"

namespace vadeval {

namespace {

std::map<std::string, const EventInterval*> intervals_by_id(std::span<const EventInterval> intervals) {
  std::map<std::string, const EventInterval*> out;
  for (const auto& iv : intervals) out.emplace(iv.video_id, &iv);
  return out;
}

}  // namespace

PerturbMode parse_perturb_mode(std::string_view s) {
  if (s == "identity") return PerturbMode::identity;
  if (s == "desc") return PerturbMode::desc;
  if (s == "asc") return PerturbMode::asc;
  throw ValidationError("unknown perturbation mode '" + std::string(s) + "'");
}

std::string_view to_string(PerturbMode m) {
  switch (m) {
    case PerturbMode::identity:
      return "identity";
    case PerturbMode::desc:
      return "desc";
    case PerturbMode::asc:
      return "asc";
  }
  return "identity";
}

std::vector<FrameScoreTrace> perturb_scores(std::span<const FrameScoreTrace> preds,
                                            std::span<const EventInterval> intervals,
                                            PerturbMode mode) {
  std::vector<FrameScoreTrace> out(preds.begin(), preds.end());
  if (mode == PerturbMode::identity) return out;
  const auto by_id = intervals_by_id(intervals);
  for (auto& trace : out) {
    auto it = by_id.find(trace.video_id);
    if (it == by_id.end()) continue;
    const auto& iv = *it->second;
    if (iv.t_start < 0 || iv.t_end > static_cast<std::int64_t>(trace.scores.size()))
      throw ValidationError("event interval for '" + iv.video_id + "' outside its video");
    auto first = trace.scores.begin() + iv.t_start;
    auto last = trace.scores.begin() + iv.t_end;
    if (mode == PerturbMode::desc)
      std::sort(first, last, std::greater<>());
    else
      std::sort(first, last);
  }
  return out;
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + 1 + j);  // mean of i+1 .. j
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

double srocc(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ValidationError("series differ in length");
  if (a.size() < 2) throw ComputeError("undefined correlation: fewer than 2 points");
  const auto ra = average_ranks(a);
  const auto rb = average_ranks(b);
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
  const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
  double cov = 0.0;
  double va = 0.0;
  double vb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    cov += (ra[i] - ma) * (rb[i] - mb);
    va += (ra[i] - ma) * (ra[i] - ma);
    vb += (rb[i] - mb) * (rb[i] - mb);
  }
  if (va == 0.0 || vb == 0.0) throw ComputeError("undefined correlation: constant series");
  return std::clamp(cov / std::sqrt(va * vb), -1.0, 1.0);
}

Histogram position_histogram(std::span<const FrameScoreTrace> preds,
                             std::span<const EventInterval> intervals, double tau,
                             std::size_t bins) {
  if (bins < 1) throw ValidationError("bins must be >= 1");
  if (intervals.empty()) throw ComputeError("position histogram undefined: no abnormal videos");
  Histogram h;
  h.edges.resize(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b)
    h.edges[b] = static_cast<double>(b) / static_cast<double>(bins);
  std::vector<std::size_t> counts(bins, 0);

  std::map<std::string, const FrameScoreTrace*> by_id;
  for (const auto& p : preds) by_id.emplace(p.video_id, &p);
  for (const auto& iv : intervals) {
    auto it = by_id.find(iv.video_id);
    if (it == by_id.end()) throw ValidationError("no predictions for '" + iv.video_id + "'");
    const auto& scores = it->second->scores;
    if (iv.t_start < 0 || iv.t_end > static_cast<std::int64_t>(scores.size()))
      throw ValidationError("event interval for '" + iv.video_id + "' outside its video");
    for (auto f = iv.t_start; f < iv.t_end; ++f) {
      if (scores[static_cast<std::size_t>(f)] < tau) continue;
      const double d = normalized_position(f, iv);
      auto b = static_cast<std::size_t>(d * static_cast<double>(bins));
      ++counts[std::min(b, bins - 1)];
      ++h.positives;
    }
  }
  h.density.assign(bins, 0.0);
  if (h.positives > 0)
    for (std::size_t b = 0; b < bins; ++b)
      h.density[b] = static_cast<double>(counts[b]) / static_cast<double>(h.positives);
  return h;
}

}  // namespace vadeval
