#pragma once

// Domain types shared by every evaluation module, plus dataset validation.
//
// All frame positions are 0-based and every interval is half-open
// [start, end). Seconds only exist at ingest time; the core is frames-only.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vadeval {

enum class Normality { normal, abnormal };

std::string_view to_string(Normality n);

struct VideoMeta {
  std::string video_id;
  std::int64_t frame_count = 0;
  double fps = 0.0;
  Normality normality = Normality::normal;
  std::optional<std::string> category;

  bool abnormal() const { return normality == Normality::abnormal; }
  bool operator==(const VideoMeta&) const = default;
};

using Manifest = std::vector<VideoMeta>;

struct FrameInterval {
  std::int64_t start = 0;
  std::int64_t end = 0;

  std::int64_t length() const { return end - start; }
  bool contains(std::int64_t frame) const { return frame >= start && frame < end; }
  bool operator==(const FrameInterval&) const = default;
};

// One annotator's pass. Videos absent from the map carry no abnormal frames.
struct AnnotationRound {
  std::string round_id;
  std::map<std::string, std::vector<FrameInterval>> intervals;

  // Intervals for a video, or an empty span when the round does not list it.
  std::span<const FrameInterval> of(const std::string& video_id) const;
  bool operator==(const AnnotationRound&) const = default;
};

struct FrameScoreTrace {
  std::string video_id;
  std::vector<double> scores;

  bool operator==(const FrameScoreTrace&) const = default;
};

struct ProbLabelTrace {
  std::string video_id;
  std::vector<double> probs;
};

struct EventInterval {
  std::string video_id;
  std::int64_t t_start = 0;
  std::int64_t t_end = 0;  // exclusive

  std::int64_t length() const { return t_end - t_start; }
  bool operator==(const EventInterval&) const = default;
};

// Real-valued because probabilistic labels contribute fractional mass.
struct ConfusionCounts {
  double tp = 0.0;
  double fp = 0.0;
  double fn = 0.0;
  double tn = 0.0;

  double total() const { return tp + fp + fn + tn; }
};

enum class CurveKind { roc, pr, precision_larecall };

std::string_view to_string(CurveKind k);

struct CurvePoint {
  double x = 0.0;
  double y = 0.0;
  double tau = 0.0;  // +inf for the sentinel point preceding every threshold

  bool operator==(const CurvePoint&) const = default;
};

// Points ordered by strictly decreasing tau.
struct Curve {
  CurveKind kind = CurveKind::roc;
  std::vector<CurvePoint> points;

  bool operator==(const Curve&) const = default;
};

struct LaApParams {
  std::int64_t phi = 16;  // minimum spacing between sampled detections, frames
  double alpha = 2.0;     // weight decay base, w(k) = alpha^-k
  double beta = 7.0;      // steepness of the decay score

  // Throws ValidationError when a parameter leaves its domain.
  void validate() const;
  bool operator==(const LaApParams&) const = default;
};

struct FileDigest {
  std::string path;
  std::string sha256;
  std::int64_t record_count = 0;

  bool operator==(const FileDigest&) const = default;
};

struct MetricReport {
  std::optional<double> auc;
  std::optional<double> ap;
  std::optional<double> prob_auc;
  std::optional<double> prob_ap;
  std::optional<double> laap;
  std::map<double, double> far;  // threshold -> false alarm rate
  LaApParams params;
  std::vector<double> far_thresholds;
  std::vector<std::string> excluded_categories;
  std::int64_t reference_round = 0;
  std::map<std::string, std::string> skipped;  // metric -> reason
  std::map<std::string, std::int64_t> counts;
  std::vector<FileDigest> provenance;

  bool operator==(const MetricReport&) const = default;
};

// ---------------------------------------------------------------------------
// Validation

enum class Severity { warning, error };

struct Violation {
  Severity severity = Severity::error;
  std::string kind;  // stable machine-readable tag, e.g. "length_mismatch"
  std::string message;
};

struct ValidationOptions {
  // Abnormal videos left unannotated by some (but not all) rounds. The
  // default records them as warnings and keeps evaluating.
  Severity partial_abnormal = Severity::warning;
};

std::vector<Violation> validate_dataset(const Manifest& manifest,
                                        std::span<const AnnotationRound> rounds,
                                        std::span<const FrameScoreTrace> preds,
                                        const ValidationOptions& options = {});

bool has_errors(std::span<const Violation> violations);

// ---------------------------------------------------------------------------
// Label expansion

using HardLabels = std::vector<std::uint8_t>;

// Per-video hard labels, aligned with manifest order.
std::vector<HardLabels> expand_round(const AnnotationRound& round, const Manifest& manifest);

HardLabels expand_intervals(std::span<const FrameInterval> intervals, std::int64_t frame_count);

// Maximal runs of ones, as sorted half-open intervals.
std::vector<FrameInterval> extract_runs(std::span<const std::uint8_t> labels);

// Manifest position of every video id.
std::map<std::string, std::size_t> index_by_id(const Manifest& manifest);

// Manifest restricted to videos whose category is not in `excluded`.
Manifest exclude_categories(const Manifest& manifest, std::span<const std::string> excluded);

// Rounds restricted to the videos present in `manifest`.
std::vector<AnnotationRound> restrict_rounds(std::span<const AnnotationRound> rounds,
                                             const Manifest& manifest);

// Traces reordered to manifest order, dropping videos not in the manifest.
// Throws ValidationError when a manifest video has no trace.
std::vector<FrameScoreTrace> align_predictions(std::span<const FrameScoreTrace> preds,
                                               const Manifest& manifest);

}  // namespace vadeval
