#include "vadeval/laap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "vadeval/classic_metrics.hpp"
#include "vadeval/error.hpp"
#include "vadeval/parallel.hpp"

namespace vadeval {

namespace {

constexpr double kTailMass = 1e-9;

std::int64_t lower_median(std::vector<std::int64_t> v) {
  std::sort(v.begin(), v.end());
  return v[(v.size() - 1) / 2];
}

std::vector<double> decay_weights(double alpha) {
  const std::size_t k = sample_limit(alpha);
  std::vector<double> w(k);
  for (std::size_t i = 0; i < k; ++i) w[i] = std::pow(alpha, -static_cast<double>(i));
  return w;
}

// Smallest alive local index >= x, where removed frames point past
// themselves. Slot `size` is a permanent sentinel.
class NextAlive {
 public:
  explicit NextAlive(std::size_t size) : parent_(size + 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    x = std::min(x, parent_.size() - 1);
    std::size_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) x = std::exchange(parent_[x], root);
    return root;
  }

  void remove(std::size_t x) { parent_[x] = x + 1; }

 private:
  std::vector<std::size_t> parent_;
};

// One video's LaRecall as a step function of the threshold: at any tau in
// (thresholds[r+1], thresholds[r]] the value is larecall[r] (descending).
struct VideoSteps {
  std::vector<double> thresholds;
  std::vector<double> larecall;
};

VideoSteps video_steps(std::span<const double> scores, const EventInterval& interval,
                       const LaApParams& params, std::span<const double> weights) {
  const auto len = static_cast<std::size_t>(interval.length());
  const auto in_interval = scores.subspan(static_cast<std::size_t>(interval.t_start), len);

  std::vector<std::size_t> order(len);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return in_interval[a] != in_interval[b] ? in_interval[a] < in_interval[b] : a < b;
  });

  // Score per local position, precomputed once.
  std::vector<double> position_score(len);
  for (std::size_t i = 0; i < len; ++i)
    position_score[i] =
        decay_score(normalized_position(interval.t_start + static_cast<std::int64_t>(i), interval),
                    params.beta);

  const auto step = static_cast<std::size_t>(params.phi) + 1;
  NextAlive alive(len);
  VideoSteps out;
  // Ascending thresholds: all frames alive at the lowest score, then the
  // frames at each level are removed once that level has been evaluated.
  for (std::size_t i = 0; i < len;) {
    const double level = in_interval[order[i]];
    double num = 0.0;
    double den = 0.0;
    std::size_t k = 0;
    for (std::size_t a = alive.find(0); a < len && k < weights.size(); a = alive.find(a + step), ++k) {
      num += weights[k] * position_score[a];
      den += weights[k];
    }
    out.thresholds.push_back(level);
    out.larecall.push_back(den > 0.0 ? num / den : 0.0);
    for (; i < len && in_interval[order[i]] == level; ++i) alive.remove(order[i]);
  }
  std::reverse(out.thresholds.begin(), out.thresholds.end());
  std::reverse(out.larecall.begin(), out.larecall.end());
  return out;
}

void check_interval(const EventInterval& iv, std::size_t frames) {
  if (iv.t_start < 0 || iv.t_start >= iv.t_end || iv.t_end > static_cast<std::int64_t>(frames))
    throw ValidationError("event interval for '" + iv.video_id + "' outside its video");
}

}  // namespace

EventInterval median_event_interval(std::span<const AnnotationRound> rounds,
                                    const std::string& video_id,
                                    std::vector<std::string>* warnings) {
  std::vector<std::int64_t> firsts;
  std::vector<std::int64_t> lasts;
  for (const auto& round : rounds) {
    const auto list = round.of(video_id);
    if (list.empty()) {
      if (warnings)
        warnings->push_back("round '" + round.round_id + "' leaves video '" + video_id +
                            "' unannotated; excluded from its event interval");
      continue;
    }
    std::int64_t first = list.front().start;
    std::int64_t last = list.front().end - 1;
    for (const auto& iv : list) {
      first = std::min(first, iv.start);
      last = std::max(last, iv.end - 1);
    }
    firsts.push_back(first);
    lasts.push_back(last);
  }
  if (firsts.empty())
    throw ValidationError("no round marks video '" + video_id + "' abnormal");
  return {video_id, lower_median(std::move(firsts)), lower_median(std::move(lasts)) + 1};
}

EventIntervalSet event_intervals(std::span<const AnnotationRound> rounds, const Manifest& manifest) {
  EventIntervalSet set;
  for (const auto& v : manifest) {
    if (!v.abnormal()) continue;
    set.intervals.push_back(median_event_interval(rounds, v.video_id, &set.warnings));
    std::vector<std::int64_t> segments;
    for (const auto& r : rounds) {
      auto n = static_cast<std::int64_t>(r.of(v.video_id).size());
      if (n > 0) segments.push_back(n);
    }
    if (lower_median(std::move(segments)) >= 2) set.multi_event_videos.push_back(v.video_id);
  }
  return set;
}

std::vector<std::uint8_t> threshold_binarize(std::span<const double> scores, double tau) {
  std::vector<std::uint8_t> out(scores.size());
  std::transform(scores.begin(), scores.end(), out.begin(),
                 [tau](double s) { return static_cast<std::uint8_t>(s >= tau ? 1 : 0); });
  return out;
}

SampledDetections sparse_sample(std::span<const std::uint8_t> binary,
                                const EventInterval& interval, std::int64_t phi) {
  if (phi < 1) throw ValidationError("phi must be a positive integer");
  SampledDetections out{interval.video_id, {}};
  const auto end = std::min<std::int64_t>(interval.t_end, static_cast<std::int64_t>(binary.size()));
  for (std::int64_t i = std::max<std::int64_t>(interval.t_start, 0); i < end; ++i) {
    if (!binary[static_cast<std::size_t>(i)]) continue;
    out.frame_indices.push_back(i);
    i += phi;  // next candidate is strictly more than phi frames later
  }
  return out;
}

double decay_score(double delta, double beta) {
  return 1.0 - 1.0 / (1.0 + std::exp(-beta * (2.0 * delta - 1.0)));
}

double normalized_position(std::int64_t frame, const EventInterval& interval) {
  const auto span = interval.t_end - 1 - interval.t_start;
  if (span <= 0) return 0.0;
  return static_cast<double>(frame - interval.t_start) / static_cast<double>(span);
}

std::size_t sample_limit(double alpha) {
  if (!(alpha > 1.0)) throw ValidationError("alpha must be > 1");
  constexpr std::size_t kCap = std::size_t{1} << 24;
  double w = 1.0;
  double sum = 1.0;
  std::size_t k = 1;
  for (; k < kCap; ++k) {
    w /= alpha;
    if (w / sum < kTailMass) break;
    sum += w;
  }
  return k;
}

double larecall_video(const SampledDetections& detections, const EventInterval& interval,
                      const LaApParams& params) {
  params.validate();
  const auto weights = decay_weights(params.alpha);
  const auto n = std::min(detections.frame_indices.size(), weights.size());
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    num += weights[k] *
           decay_score(normalized_position(detections.frame_indices[k], interval), params.beta);
    den += weights[k];
  }
  return den > 0.0 ? num / den : 0.0;
}

double larecall_dataset(std::span<const FrameScoreTrace> preds,
                        std::span<const EventInterval> intervals, double tau,
                        const LaApParams& params) {
  if (intervals.empty()) throw ComputeError("LaRecall undefined: no abnormal events");
  std::map<std::string, const FrameScoreTrace*> by_id;
  for (const auto& p : preds) by_id.emplace(p.video_id, &p);
  double sum = 0.0;
  for (const auto& iv : intervals) {
    auto it = by_id.find(iv.video_id);
    if (it == by_id.end()) throw ValidationError("no predictions for '" + iv.video_id + "'");
    check_interval(iv, it->second->scores.size());
    const auto binary = threshold_binarize(it->second->scores, tau);
    sum += larecall_video(sparse_sample(binary, iv, params.phi), iv, params);
  }
  return sum / static_cast<double>(intervals.size());
}

LaApResult laap(std::span<const FrameScoreTrace> preds, const Manifest& manifest,
                std::span<const EventInterval> intervals, const LaApParams& params,
                unsigned workers) {
  params.validate();
  if (intervals.empty()) throw ComputeError("LaAP undefined: no abnormal videos");
  if (preds.size() != manifest.size())
    throw ValidationError("predictions are not aligned with the manifest");

  const auto index = index_by_id(manifest);
  std::vector<std::size_t> video_of(intervals.size());
  std::vector<std::vector<double>> labels(manifest.size());
  for (std::size_t j = 0; j < manifest.size(); ++j) labels[j].assign(preds[j].scores.size(), 0.0);
  for (std::size_t k = 0; k < intervals.size(); ++k) {
    auto it = index.find(intervals[k].video_id);
    if (it == index.end())
      throw ValidationError("event interval for unknown video '" + intervals[k].video_id + "'");
    video_of[k] = it->second;
    check_interval(intervals[k], preds[it->second].scores.size());
    std::fill(labels[it->second].begin() + intervals[k].t_start,
              labels[it->second].begin() + intervals[k].t_end, 1.0);
  }

  const auto weights = decay_weights(params.alpha);
  std::vector<VideoSteps> steps(intervals.size());
  parallel_for(intervals.size(), workers, [&](std::size_t k) {
    steps[k] = video_steps(preds[video_of[k]].scores, intervals[k], params, weights);
  });

  struct Event {
    double tau;
    std::size_t video;
    double delta;
  };
  std::vector<Event> events;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    double previous = 0.0;
    for (std::size_t r = 0; r < steps[k].thresholds.size(); ++r) {
      events.push_back({steps[k].thresholds[r], k, steps[k].larecall[r] - previous});
      previous = steps[k].larecall[r];
    }
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    return a.tau != b.tau ? a.tau > b.tau : a.video < b.video;
  });

  const auto data = concat(preds, labels);
  const auto sweep = SweepAccumulator::build(data.scores, data.labels);
  const double videos = static_cast<double>(intervals.size());

  LaApResult result;
  result.curve.kind = CurveKind::precision_larecall;
  result.curve.points.reserve(sweep.size() + 1);
  result.curve.points.push_back({0.0, 1.0, std::numeric_limits<double>::infinity()});
  double sum = 0.0;
  double previous = 0.0;
  std::size_t e = 0;
  for (std::size_t n = 0; n < sweep.size(); ++n) {
    const double tau = sweep.thresholds()[n];
    for (; e < events.size() && events[e].tau >= tau; ++e) sum += events[e].delta;
    const double larecall = std::clamp(sum / videos, 0.0, 1.0);
    const double tp = sweep.cum_pos()[n];
    const double precision = tp / (tp + sweep.cum_neg()[n]);
    result.laap += std::max(larecall - previous, 0.0) * precision;
    result.curve.points.push_back({larecall, precision, tau});
    previous = larecall;
  }
  result.laap = std::clamp(result.laap, 0.0, 1.0);
  return result;
}

LaApResult laap(std::span<const FrameScoreTrace> preds, std::span<const AnnotationRound> rounds,
                const Manifest& manifest, const LaApParams& params, unsigned workers) {
  const auto set = event_intervals(rounds, manifest);
  return laap(preds, manifest, set.intervals, params, workers);
}

}  // namespace vadeval
