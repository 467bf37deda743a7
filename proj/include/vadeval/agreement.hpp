#pragma once

// Inter-annotator agreement over frame-level annotation rounds.
//
// Kappa statistics use the concatenated frames of the manifest's abnormal
// videos as the rating universe.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vadeval/model.hpp"

namespace vadeval {

double cohen_kappa(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);
double cohen_kappa(const AnnotationRound& a, const AnnotationRound& b, const Manifest& manifest);

// positives[i] = number of raters labeling frame i abnormal, out of `raters`.
double fleiss_kappa(std::span<const std::uint32_t> positives, std::uint32_t raters);
double fleiss_kappa(std::span<const AnnotationRound> rounds, const Manifest& manifest);

struct VideoDeviation {
  std::string video_id;
  std::size_t rounds_used = 0;
  double start_std = 0.0;     // seconds
  double duration_std = 0.0;  // seconds
  double end_std = 0.0;       // seconds
};

struct BoundaryStats {
  std::vector<VideoDeviation> videos;
  double median_start_std = 0.0;
  double median_duration_std = 0.0;
  double median_end_std = 0.0;
  std::vector<std::string> warnings;
};

BoundaryStats boundary_stats(std::span<const AnnotationRound> rounds, const Manifest& manifest);

struct CategoryConfusion {
  std::vector<std::string> rows;     // original categories, sorted
  std::vector<std::string> columns;  // re-annotated categories, sorted
  std::vector<std::vector<std::size_t>> counts;
  // Row-normalized buckets: same category / another category / "Normal".
  std::vector<double> same;
  std::vector<double> others;
  std::vector<double> normal;
};

inline constexpr const char* kNormalCategory = "Normal";

CategoryConfusion category_confusion(const std::map<std::string, std::string>& original,
                                     const std::map<std::string, std::string>& reannotated);

struct AgreementReport {
  std::vector<std::string> round_ids;
  std::vector<std::vector<double>> pairwise_kappa;
  double fleiss_kappa = 0.0;
  BoundaryStats boundaries;
  std::optional<CategoryConfusion> categories;
  std::int64_t frames = 0;
};

AgreementReport analyze_agreement(std::span<const AnnotationRound> rounds, const Manifest& manifest,
                                  unsigned workers = 1);

}  // namespace vadeval
