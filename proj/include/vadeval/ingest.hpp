#pragma once

// On-disk formats.
//
//   manifest     CSV, header `video_id,frame_count,fps,normality,category`
//   annotations  JSON {"rounds":[{"round_id":..,"videos":{id:[[s,e],..]}}],
//                      "time_unit":"frames"|"seconds"}
//   predictions  JSON Lines, {"video_id":..,"scores":[..]} per video
//   reports      JSON with sorted keys; curves and tables are CSV
//
// Every real written by this module is rounded to 9 significant digits and
// emitted in its shortest round-trip form, so outputs are byte-stable and
// reloading yields exactly the written values.

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vadeval/agreement.hpp"
#include "vadeval/analysis.hpp"
#include "vadeval/model.hpp"

namespace vadeval {

enum class TimeUnit { frames, seconds };

TimeUnit parse_time_unit(std::string_view s);
std::string_view to_string(TimeUnit u);

// 9 significant digits, e.g. 0.123456789.
std::string format_real(double x);
double round_real(double x);

std::string read_file(const std::filesystem::path& path);
// Writes atomically enough for our purposes: truncate then write, throwing
// Error when the path is not writable.
void write_file(const std::filesystem::path& path, std::string_view content);

FileDigest digest_file(const std::filesystem::path& path, std::int64_t record_count);
std::string sha256_hex(std::string_view bytes);

// ---------------------------------------------------------------------------
// Manifest

Manifest parse_manifest(std::string_view text);
Manifest load_manifest(const std::filesystem::path& path);
std::string manifest_to_csv(const Manifest& manifest);

// ---------------------------------------------------------------------------
// Annotations

struct AnnotationSet {
  std::vector<AnnotationRound> rounds;
  TimeUnit time_unit = TimeUnit::frames;
  std::vector<std::string> warnings;  // merged overlapping intervals
};

// `expected` (when given) must agree with the file's time_unit; files
// without one use `expected`, defaulting to frames.
AnnotationSet parse_annotations(std::string_view text, const Manifest& manifest,
                                std::optional<TimeUnit> expected = std::nullopt);
AnnotationSet load_annotations(const std::filesystem::path& path, const Manifest& manifest,
                               std::optional<TimeUnit> expected = std::nullopt);
std::string annotations_to_json(std::span<const AnnotationRound> rounds);

// ---------------------------------------------------------------------------
// Predictions

// Traces in manifest order. Records whose id is in `ignored` are skipped.
std::vector<FrameScoreTrace> parse_predictions(std::string_view text, const Manifest& manifest,
                                               const std::set<std::string>& ignored = {});
std::vector<FrameScoreTrace> load_predictions(const std::filesystem::path& path,
                                              const Manifest& manifest,
                                              const std::set<std::string>& ignored = {});
std::string predictions_to_jsonl(std::span<const FrameScoreTrace> traces);
void write_predictions(std::span<const FrameScoreTrace> traces, const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Reports and curves

std::string report_to_json(const MetricReport& report);
MetricReport parse_report(std::string_view text);
void write_report(const MetricReport& report, const std::filesystem::path& path);
MetricReport load_report(const std::filesystem::path& path);

std::string curve_to_csv(const Curve& curve);
Curve parse_curve(std::string_view text, CurveKind kind);
void write_curve(const Curve& curve, const std::filesystem::path& path);
Curve load_curve(const std::filesystem::path& path, CurveKind kind);

// Raw curve plus its best/worst bounds, distinguished by a `series` column.
std::string prob_curves_to_csv(const Curve& raw, const Curve& best, const Curve& worst);

std::string agreement_to_json(const AgreementReport& report);
std::string deviations_to_csv(const BoundaryStats& stats);
std::string category_confusion_to_csv(const CategoryConfusion& confusion);
std::string histogram_to_csv(const Histogram& histogram);

// `video_id,category` CSV.
std::map<std::string, std::string> load_category_map(const std::filesystem::path& path);

// Numeric CSV with a header row; columns keyed by header name.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;
};
Table parse_table(std::string_view text);
Table load_table(const std::filesystem::path& path);

}  // namespace vadeval
