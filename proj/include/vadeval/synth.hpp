#pragma once

// Seeded synthetic detector traces and datasets.
//
// Generator: 64-bit linear congruential recurrence
//   state' = state * 6364136223846793005 + 1442695040888963407  (mod 2^64)
// with uniform doubles taken from the top 53 bits, (state' >> 11) * 2^-53.
// Each video gets its own generator seeded with seed XOR FNV-1a-64(video_id),
// so traces do not depend on the order or number of workers producing them.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "vadeval/model.hpp"

namespace vadeval {

class Lcg64 {
 public:
  static constexpr std::uint64_t kMultiplier = 6364136223846793005ULL;
  static constexpr std::uint64_t kIncrement = 1442695040888963407ULL;

  explicit Lcg64(std::uint64_t state) : state_(state) {}

  std::uint64_t next() {
    state_ = state_ * kMultiplier + kIncrement;
    return state_;
  }
  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  // Uniform integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);

 private:
  std::uint64_t state_;
};

std::uint64_t fnv1a64(std::string_view s);

struct DetectorProfile {
  double onset_lag = 0.0;         // where the elevated block sits: 0 = interval start, 1 = tail
  double rise_width = 0.0;        // fraction of the block spent ramping up to the peak
  double peak_score = 0.9;
  double background_noise = 0.1;  // background scores are noise * U[0,1)
  double coverage = 0.5;          // fraction of the interval occupied by the elevated block
  std::uint64_t seed = 0;

  void validate() const;
};

// Noise is drawn in a fixed order (outside frames, in-interval background,
// block) so profiles differing only in onset_lag permute the same values.
FrameScoreTrace synthesize_video(const DetectorProfile& profile, const VideoMeta& video,
                                 const EventInterval* interval);

std::vector<FrameScoreTrace> synthesize(const DetectorProfile& profile, const Manifest& manifest,
                                        std::span<const EventInterval> intervals);

struct DatasetShape {
  std::size_t videos = 20;
  std::int64_t min_frames = 200;
  std::int64_t max_frames = 600;
  double fps = 30.0;
  double abnormal_fraction = 0.5;
  double min_event = 0.2;  // event length as a fraction of the video
  double max_event = 0.6;
  std::size_t rounds = 4;
  double boundary_jitter = 0.1;  // per-round boundary shift, fraction of event length
  std::uint64_t seed = 1;
};

struct SyntheticDataset {
  Manifest manifest;
  std::vector<AnnotationRound> rounds;  // round 0 reproduces the base events exactly
  std::vector<EventInterval> events;    // base event per abnormal video
};

SyntheticDataset synthesize_dataset(const DatasetShape& shape);

std::vector<FrameScoreTrace> uniform_random_scores(const Manifest& manifest, std::uint64_t seed);

}  // namespace vadeval
