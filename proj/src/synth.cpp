#include "vadeval/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>

#include "vadeval/error.hpp"

namespace vadeval {

namespace {

bool unit(double x) { return x >= 0.0 && x <= 1.0; }

constexpr std::array<const char*, 6> kCategories = {"Abuse",   "Arrest",  "Burglary",
                                                    "Fighting", "Robbery", "Shoplifting"};

}  // namespace

std::int64_t Lcg64::between(std::int64_t lo, std::int64_t hi) {
  if (hi <= lo) return lo;
  const auto span = static_cast<double>(hi - lo + 1);
  return lo + std::min(static_cast<std::int64_t>(uniform() * span), hi - lo);
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

void DetectorProfile::validate() const {
  if (!unit(onset_lag)) throw ValidationError("onset_lag must be in [0,1]");
  if (!unit(rise_width)) throw ValidationError("rise_width must be in [0,1]");
  if (!unit(peak_score)) throw ValidationError("peak_score must be in [0,1]");
  if (!unit(background_noise)) throw ValidationError("background_noise must be in [0,1]");
  if (!(coverage > 0.0 && coverage <= 1.0)) throw ValidationError("coverage must be in (0,1]");
  if (!(peak_score > background_noise))
    throw ValidationError("peak_score must exceed the background level");
}

FrameScoreTrace synthesize_video(const DetectorProfile& profile, const VideoMeta& video,
                                 const EventInterval* interval) {
  profile.validate();
  Lcg64 rng(profile.seed ^ fnv1a64(video.video_id));
  const auto frames = video.frame_count;
  FrameScoreTrace trace{video.video_id, std::vector<double>(static_cast<std::size_t>(frames))};
  const double noise = profile.background_noise;

  std::int64_t s = 0;
  std::int64_t e = 0;
  if (interval) {
    s = std::clamp<std::int64_t>(interval->t_start, 0, frames);
    e = std::clamp<std::int64_t>(interval->t_end, s, frames);
  }
  for (std::int64_t f = 0; f < frames; ++f)
    if (f < s || f >= e) trace.scores[f] = noise * rng.uniform();
  if (e == s) return trace;

  const auto len = e - s;
  const auto block = std::clamp<std::int64_t>(std::llround(profile.coverage * len), 1, len);
  const auto offset = std::llround(profile.onset_lag * static_cast<double>(len - block));
  const auto block_start = s + offset;
  const auto block_end = block_start + block;

  for (std::int64_t f = s; f < e; ++f)
    if (f < block_start || f >= block_end) trace.scores[f] = noise * rng.uniform();

  const auto rise = std::llround(profile.rise_width * static_cast<double>(block));
  for (std::int64_t b = 0; b < block; ++b) {
    const double ramp = b < rise ? static_cast<double>(b + 1) / static_cast<double>(rise + 1) : 1.0;
    trace.scores[block_start + b] = ramp * (profile.peak_score - noise) + noise * rng.uniform();
  }
  return trace;
}

std::vector<FrameScoreTrace> synthesize(const DetectorProfile& profile, const Manifest& manifest,
                                        std::span<const EventInterval> intervals) {
  std::map<std::string, const EventInterval*> by_id;
  for (const auto& iv : intervals) by_id.emplace(iv.video_id, &iv);
  std::vector<FrameScoreTrace> out;
  out.reserve(manifest.size());
  for (const auto& v : manifest) {
    auto it = by_id.find(v.video_id);
    out.push_back(synthesize_video(profile, v, it == by_id.end() ? nullptr : it->second));
  }
  return out;
}

SyntheticDataset synthesize_dataset(const DatasetShape& shape) {
  if (shape.videos == 0) throw ValidationError("synthetic dataset needs at least one video");
  if (shape.min_frames < 1 || shape.max_frames < shape.min_frames)
    throw ValidationError("invalid frame-count range");
  if (!(shape.fps > 0.0)) throw ValidationError("fps must be positive");
  if (!unit(shape.abnormal_fraction) || !unit(shape.min_event) || !unit(shape.max_event) ||
      shape.max_event < shape.min_event || !unit(shape.boundary_jitter))
    throw ValidationError("synthetic dataset fractions must lie in [0,1]");
  if (shape.rounds == 0) throw ValidationError("synthetic dataset needs at least one round");

  Lcg64 rng(shape.seed ^ fnv1a64("dataset"));
  SyntheticDataset ds;
  ds.rounds.resize(shape.rounds);
  for (std::size_t r = 0; r < shape.rounds; ++r) ds.rounds[r].round_id = "r" + std::to_string(r);

  for (std::size_t i = 0; i < shape.videos; ++i) {
    char id[32];
    std::snprintf(id, sizeof id, "v%05zu", i);
    VideoMeta v;
    v.video_id = id;
    v.frame_count = rng.between(shape.min_frames, shape.max_frames);
    v.fps = shape.fps;
    // The first video is always abnormal and the second always normal.
    const bool abnormal = i == 0 || (i != 1 && rng.uniform() < shape.abnormal_fraction);
    v.normality = abnormal ? Normality::abnormal : Normality::normal;
    if (abnormal) {
      v.category = kCategories[static_cast<std::size_t>(rng.between(0, kCategories.size() - 1))];
      const double frac = shape.min_event + (shape.max_event - shape.min_event) * rng.uniform();
      const auto len = std::clamp<std::int64_t>(std::llround(frac * v.frame_count), 1, v.frame_count);
      const auto start = rng.between(0, v.frame_count - len);
      ds.events.push_back({v.video_id, start, start + len});
      const auto jitter = std::llround(shape.boundary_jitter * static_cast<double>(len));
      for (std::size_t r = 0; r < shape.rounds; ++r) {
        std::int64_t a = start;
        std::int64_t b = start + len;
        if (r > 0) {
          a = std::clamp<std::int64_t>(a + rng.between(-jitter, jitter), 0, v.frame_count - 1);
          b = std::clamp<std::int64_t>(b + rng.between(-jitter, jitter), a + 1, v.frame_count);
        }
        ds.rounds[r].intervals[v.video_id] = {FrameInterval{a, b}};
      }
    } else {
      v.category = "Normal";
    }
    ds.manifest.push_back(std::move(v));
  }
  return ds;
}

std::vector<FrameScoreTrace> uniform_random_scores(const Manifest& manifest, std::uint64_t seed) {
  std::vector<FrameScoreTrace> out;
  out.reserve(manifest.size());
  for (const auto& v : manifest) {
    Lcg64 rng(seed ^ fnv1a64(v.video_id));
    FrameScoreTrace t{v.video_id, std::vector<double>(static_cast<std::size_t>(v.frame_count))};
    for (auto& s : t.scores) s = rng.uniform();
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace vadeval
