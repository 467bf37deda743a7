#pragma once

// Latency-aware average precision.
//
// For each threshold, every abnormal video's in-interval detections are
// sparsely sampled (greedy, spacing > phi), scored with a sigmoid decay on
// their normalized position and averaged with weights alpha^-k. The dataset
// LaRecall is the mean over abnormal videos; LaAP is the step area under the
// Precision-LaRecall curve counting only non-negative LaRecall increments.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vadeval/model.hpp"

namespace vadeval {

struct SampledDetections {
  std::string video_id;
  std::vector<std::int64_t> frame_indices;  // ascending
};

struct LaRecallPoint {
  double tau = 0.0;
  double larecall = 0.0;
  double precision = 0.0;
};

// Median aggregation of one video's per-round envelopes. Rounds that leave
// the video unannotated are skipped (noted in `warnings` when given).
// Throws ValidationError when no round marks the video abnormal.
EventInterval median_event_interval(std::span<const AnnotationRound> rounds,
                                    const std::string& video_id,
                                    std::vector<std::string>* warnings = nullptr);

struct EventIntervalSet {
  std::vector<EventInterval> intervals;  // one per abnormal video, manifest order
  std::vector<std::string> multi_event_videos;
  std::vector<std::string> warnings;
};

// Intervals for every abnormal manifest video. A video is multi-event when
// the lower median of its per-round segment counts is at least 2.
EventIntervalSet event_intervals(std::span<const AnnotationRound> rounds, const Manifest& manifest);

std::vector<std::uint8_t> threshold_binarize(std::span<const double> scores, double tau);

// Greedy earliest-first sampling restricted to [t_start, t_end).
SampledDetections sparse_sample(std::span<const std::uint8_t> binary,
                                const EventInterval& interval, std::int64_t phi);

// s(d) = 1 - 1 / (1 + exp(-beta (2d - 1)))
double decay_score(double delta, double beta);

// (frame - t_start) / (t_end - 1 - t_start); 0 for single-frame intervals.
double normalized_position(std::int64_t frame, const EventInterval& interval);

// Number of leading samples whose weight still matters: sampling stops at
// the first k with alpha^-k / sum_{i<k} alpha^-i < 1e-9.
std::size_t sample_limit(double alpha);

double larecall_video(const SampledDetections& detections, const EventInterval& interval,
                      const LaApParams& params);

// Mean LaRecall over `intervals` at one threshold. preds are matched by id.
double larecall_dataset(std::span<const FrameScoreTrace> preds,
                        std::span<const EventInterval> intervals, double tau,
                        const LaApParams& params);

struct LaApResult {
  double laap = 0.0;
  Curve curve;  // x = LaRecall, y = Precision, tau descending
};

// preds must be aligned with manifest order. Precision treats frames inside
// the event intervals as positives and everything else as negatives.
LaApResult laap(std::span<const FrameScoreTrace> preds, const Manifest& manifest,
                std::span<const EventInterval> intervals, const LaApParams& params,
                unsigned workers = 1);

LaApResult laap(std::span<const FrameScoreTrace> preds, std::span<const AnnotationRound> rounds,
                const Manifest& manifest, const LaApParams& params, unsigned workers = 1);

}  // namespace vadeval
