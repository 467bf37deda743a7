#include "vadeval/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "vadeval/error.hpp"

namespace vadeval {

std::string_view to_string(Normality n) { return n == Normality::abnormal ? "abnormal" : "normal"; }

std::string_view to_string(CurveKind k) {
  switch (k) {
    case CurveKind::roc:
      return "roc";
    case CurveKind::pr:
      return "pr";
    case CurveKind::precision_larecall:
      return "precision_larecall";
  }
  return "unknown";
}

std::span<const FrameInterval> AnnotationRound::of(const std::string& video_id) const {
  auto it = intervals.find(video_id);
  if (it == intervals.end()) return {};
  return it->second;
}

void LaApParams::validate() const {
  if (phi < 1) throw ValidationError("phi must be a positive integer");
  if (!(alpha > 1.0) || !std::isfinite(alpha)) throw ValidationError("alpha must be > 1");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ValidationError("beta must be > 0");
}

namespace {

void push(std::vector<Violation>& out, Severity sev, std::string kind, std::string message) {
  out.push_back(Violation{sev, std::move(kind), std::move(message)});
}

}  // namespace

std::vector<Violation> validate_dataset(const Manifest& manifest,
                                        std::span<const AnnotationRound> rounds,
                                        std::span<const FrameScoreTrace> preds,
                                        const ValidationOptions& options) {
  std::vector<Violation> out;
  std::map<std::string, std::size_t> index;

  for (std::size_t i = 0; i < manifest.size(); ++i) {
    const auto& v = manifest[i];
    if (!index.emplace(v.video_id, i).second)
      push(out, Severity::error, "duplicate_video", "duplicate video id '" + v.video_id + "'");
    if (v.frame_count < 1)
      push(out, Severity::error, "invalid_frame_count",
           "video '" + v.video_id + "': frame_count must be >= 1");
    if (!(v.fps > 0.0))
      push(out, Severity::error, "invalid_fps", "video '" + v.video_id + "': fps must be positive");
  }

  std::vector<std::size_t> rounds_marking(manifest.size(), 0);
  for (const auto& round : rounds) {
    for (const auto& [id, list] : round.intervals) {
      auto it = index.find(id);
      if (it == index.end()) {
        push(out, Severity::error, "unknown_video",
             "round '" + round.round_id + "': unknown video id '" + id + "'");
        continue;
      }
      const auto& meta = manifest[it->second];
      if (!list.empty()) ++rounds_marking[it->second];
      if (!meta.abnormal() && !list.empty())
        push(out, Severity::error, "normal_video_annotated",
             "round '" + round.round_id + "': video '" + id +
                 "' is normal in the manifest but has abnormal intervals");
      for (std::size_t k = 0; k < list.size(); ++k) {
        const auto& iv = list[k];
        if (iv.start < 0 || iv.end > meta.frame_count || iv.start >= iv.end)
          push(out, Severity::error, "interval_out_of_range",
               "round '" + round.round_id + "': video '" + id + "' interval [" +
                   std::to_string(iv.start) + "," + std::to_string(iv.end) +
                   ") outside [0," + std::to_string(meta.frame_count) + ")");
        if (k > 0 && iv.start < list[k - 1].end)
          push(out, Severity::error, "interval_order",
               "round '" + round.round_id + "': video '" + id +
                   "' intervals overlap or are not sorted");
      }
    }
  }

  for (std::size_t i = 0; i < manifest.size(); ++i) {
    const auto& v = manifest[i];
    if (!v.abnormal() || rounds.empty()) continue;
    if (rounds_marking[i] == 0)
      push(out, Severity::error, "abnormal_video_unannotated",
           "video '" + v.video_id + "' is abnormal but no round annotates it");
    else if (rounds_marking[i] < rounds.size())
      push(out, options.partial_abnormal, "abnormal_video_partial",
           "video '" + v.video_id + "' is annotated abnormal by " +
               std::to_string(rounds_marking[i]) + " of " + std::to_string(rounds.size()) +
               " rounds");
  }

  std::vector<bool> seen(manifest.size(), false);
  for (const auto& trace : preds) {
    auto it = index.find(trace.video_id);
    if (it == index.end()) {
      push(out, Severity::error, "unknown_video",
           "predictions: unknown video id '" + trace.video_id + "'");
      continue;
    }
    if (seen[it->second])
      push(out, Severity::error, "duplicate_video",
           "predictions: duplicate trace for '" + trace.video_id + "'");
    seen[it->second] = true;
    const auto& meta = manifest[it->second];
    if (static_cast<std::int64_t>(trace.scores.size()) != meta.frame_count)
      push(out, Severity::error, "length_mismatch",
           "predictions: video '" + trace.video_id + "' has " +
               std::to_string(trace.scores.size()) + " scores, manifest says " +
               std::to_string(meta.frame_count));
    for (std::size_t f = 0; f < trace.scores.size(); ++f) {
      double s = trace.scores[f];
      if (!(s >= 0.0 && s <= 1.0)) {
        push(out, Severity::error, "score_out_of_range",
             "predictions: video '" + trace.video_id + "' frame " + std::to_string(f) +
                 " score out of range");
        break;
      }
    }
  }
  if (!preds.empty()) {
    for (std::size_t i = 0; i < manifest.size(); ++i)
      if (!seen[i])
        push(out, Severity::error, "missing_prediction",
             "predictions: missing video '" + manifest[i].video_id + "'");
  }
  return out;
}

bool has_errors(std::span<const Violation> violations) {
  return std::any_of(violations.begin(), violations.end(),
                     [](const Violation& v) { return v.severity == Severity::error; });
}

HardLabels expand_intervals(std::span<const FrameInterval> intervals, std::int64_t frame_count) {
  HardLabels labels(static_cast<std::size_t>(frame_count), 0);
  for (const auto& iv : intervals) {
    auto lo = std::clamp<std::int64_t>(iv.start, 0, frame_count);
    auto hi = std::clamp<std::int64_t>(iv.end, 0, frame_count);
    std::fill(labels.begin() + lo, labels.begin() + std::max(lo, hi), std::uint8_t{1});
  }
  return labels;
}

std::vector<HardLabels> expand_round(const AnnotationRound& round, const Manifest& manifest) {
  auto index = index_by_id(manifest);
  for (const auto& [id, list] : round.intervals)
    if (!index.contains(id))
      throw ValidationError("round '" + round.round_id + "': unknown video id '" + id + "'");
  std::vector<HardLabels> out;
  out.reserve(manifest.size());
  for (const auto& v : manifest) out.push_back(expand_intervals(round.of(v.video_id), v.frame_count));
  return out;
}

std::vector<FrameInterval> extract_runs(std::span<const std::uint8_t> labels) {
  std::vector<FrameInterval> runs;
  const auto n = static_cast<std::int64_t>(labels.size());
  for (std::int64_t i = 0; i < n;) {
    if (!labels[i]) {
      ++i;
      continue;
    }
    std::int64_t j = i;
    while (j < n && labels[j]) ++j;
    runs.push_back({i, j});
    i = j;
  }
  return runs;
}

std::map<std::string, std::size_t> index_by_id(const Manifest& manifest) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < manifest.size(); ++i) index.emplace(manifest[i].video_id, i);
  return index;
}

Manifest exclude_categories(const Manifest& manifest, std::span<const std::string> excluded) {
  std::set<std::string> drop(excluded.begin(), excluded.end());
  Manifest out;
  for (const auto& v : manifest)
    if (!v.category || !drop.contains(*v.category)) out.push_back(v);
  return out;
}

std::vector<AnnotationRound> restrict_rounds(std::span<const AnnotationRound> rounds,
                                             const Manifest& manifest) {
  auto index = index_by_id(manifest);
  std::vector<AnnotationRound> out;
  out.reserve(rounds.size());
  for (const auto& r : rounds) {
    AnnotationRound kept{r.round_id, {}};
    for (const auto& [id, list] : r.intervals)
      if (index.contains(id)) kept.intervals.emplace(id, list);
    out.push_back(std::move(kept));
  }
  return out;
}

std::vector<FrameScoreTrace> align_predictions(std::span<const FrameScoreTrace> preds,
                                               const Manifest& manifest) {
  std::map<std::string, const FrameScoreTrace*> by_id;
  for (const auto& t : preds) by_id.emplace(t.video_id, &t);
  std::vector<FrameScoreTrace> out;
  out.reserve(manifest.size());
  std::string missing;
  for (const auto& v : manifest) {
    auto it = by_id.find(v.video_id);
    if (it == by_id.end()) {
      missing += (missing.empty() ? "" : ", ") + v.video_id;
      continue;
    }
    out.push_back(*it->second);
  }
  if (!missing.empty()) throw ValidationError("predictions missing videos: " + missing);
  return out;
}

}  // namespace vadeval
