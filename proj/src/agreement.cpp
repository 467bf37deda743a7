#include "vadeval/agreement.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "vadeval/error.hpp"
#include "vadeval/parallel.hpp"

namespace vadeval {

namespace {

// Concatenated hard labels of the abnormal videos.
std::vector<std::uint8_t> abnormal_frames(const AnnotationRound& round, const Manifest& manifest) {
  std::vector<std::uint8_t> out;
  for (const auto& v : manifest) {
    if (!v.abnormal()) continue;
    const auto labels = expand_intervals(round.of(v.video_id), v.frame_count);
    out.insert(out.end(), labels.begin(), labels.end());
  }
  return out;
}

double population_std(std::span<const double> v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size()));
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

double cohen_kappa(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  if (a.size() != b.size()) throw ValidationError("raters cover a different number of frames");
  if (a.empty()) throw ComputeError("Cohen's kappa undefined: no frames");
  std::size_t agree = 0;
  std::size_t a1 = 0;
  std::size_t b1 = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    agree += a[i] == b[i] ? 1 : 0;
    a1 += a[i];
    b1 += b[i];
  }
  const double n = static_cast<double>(a.size());
  const double po = agree / n;
  const double pa = a1 / n;
  const double pb = b1 / n;
  const double pe = pa * pb + (1.0 - pa) * (1.0 - pb);
  if (pe == 1.0) {
    if (agree == a.size()) return 1.0;
    throw ComputeError("degenerate marginals");
  }
  return (po - pe) / (1.0 - pe);
}

double cohen_kappa(const AnnotationRound& a, const AnnotationRound& b, const Manifest& manifest) {
  return cohen_kappa(abnormal_frames(a, manifest), abnormal_frames(b, manifest));
}

double fleiss_kappa(std::span<const std::uint32_t> positives, std::uint32_t raters) {
  if (raters < 2) throw ValidationError("Fleiss' kappa needs at least 2 rounds");
  if (positives.empty()) throw ComputeError("Fleiss' kappa undefined: no frames");
  const double n = raters;
  double agreement = 0.0;
  double pos_total = 0.0;
  for (auto p : positives) {
    if (p > raters) throw ValidationError("more positive votes than raters");
    const double k1 = p;
    const double k0 = n - k1;
    agreement += (k1 * k1 + k0 * k0 - n) / (n * (n - 1.0));
    pos_total += k1;
  }
  const double frames = static_cast<double>(positives.size());
  const double p_bar = agreement / frames;
  const double p1 = pos_total / (frames * n);
  const double pe = p1 * p1 + (1.0 - p1) * (1.0 - p1);
  if (pe == 1.0) return 1.0;  // every rater gave every frame the same category
  return (p_bar - pe) / (1.0 - pe);
}

double fleiss_kappa(std::span<const AnnotationRound> rounds, const Manifest& manifest) {
  if (rounds.size() < 2) throw ValidationError("Fleiss' kappa needs at least 2 rounds");
  std::vector<std::uint32_t> positives;
  for (const auto& r : rounds) {
    const auto labels = abnormal_frames(r, manifest);
    if (positives.empty()) positives.assign(labels.size(), 0);
    for (std::size_t i = 0; i < labels.size(); ++i) positives[i] += labels[i];
  }
  return fleiss_kappa(positives, static_cast<std::uint32_t>(rounds.size()));
}

BoundaryStats boundary_stats(std::span<const AnnotationRound> rounds, const Manifest& manifest) {
  if (rounds.size() < 2) throw ValidationError("boundary statistics need at least 2 rounds");
  BoundaryStats out;
  for (const auto& v : manifest) {
    if (!v.abnormal()) continue;
    std::vector<double> starts;
    std::vector<double> durations;
    std::vector<double> ends;
    for (const auto& r : rounds) {
      const auto list = r.of(v.video_id);
      if (list.empty()) continue;
      std::int64_t first = list.front().start;
      std::int64_t last = list.front().end - 1;
      std::int64_t total = 0;
      for (const auto& iv : list) {
        first = std::min(first, iv.start);
        last = std::max(last, iv.end - 1);
        total += iv.length();
      }
      starts.push_back(static_cast<double>(first) / v.fps);
      ends.push_back(static_cast<double>(last + 1) / v.fps);
      durations.push_back(static_cast<double>(total) / v.fps);
    }
    if (starts.size() < 2) {
      out.warnings.push_back("video '" + v.video_id + "' is annotated abnormal by " +
                             std::to_string(starts.size()) +
                             " round(s); excluded from boundary statistics");
      continue;
    }
    out.videos.push_back({v.video_id, starts.size(), population_std(starts),
                          population_std(durations), population_std(ends)});
  }
  std::vector<double> s;
  std::vector<double> d;
  std::vector<double> e;
  for (const auto& vd : out.videos) {
    s.push_back(vd.start_std);
    d.push_back(vd.duration_std);
    e.push_back(vd.end_std);
  }
  out.median_start_std = median(std::move(s));
  out.median_duration_std = median(std::move(d));
  out.median_end_std = median(std::move(e));
  return out;
}

CategoryConfusion category_confusion(const std::map<std::string, std::string>& original,
                                     const std::map<std::string, std::string>& reannotated) {
  std::vector<std::string> only_one_side;
  for (const auto& [id, _] : original)
    if (!reannotated.contains(id)) only_one_side.push_back(id);
  for (const auto& [id, _] : reannotated)
    if (!original.contains(id)) only_one_side.push_back(id);
  if (!only_one_side.empty() || original.empty()) {
    std::string msg = "category maps cover different videos";
    if (original.empty()) msg = "category maps share no videos";
    for (std::size_t i = 0; i < only_one_side.size() && i < 10; ++i)
      msg += (i ? ", " : ": ") + only_one_side[i];
    throw ValidationError(msg);
  }

  std::set<std::string> rows;
  std::set<std::string> cols;
  for (const auto& [id, c] : original) rows.insert(c);
  for (const auto& [id, c] : reannotated) cols.insert(c);

  CategoryConfusion out;
  out.rows.assign(rows.begin(), rows.end());
  out.columns.assign(cols.begin(), cols.end());
  out.counts.assign(out.rows.size(), std::vector<std::size_t>(out.columns.size(), 0));
  out.same.assign(out.rows.size(), 0.0);
  out.others.assign(out.rows.size(), 0.0);
  out.normal.assign(out.rows.size(), 0.0);

  std::vector<std::size_t> row_total(out.rows.size(), 0);
  auto pos = [](const std::vector<std::string>& v, const std::string& key) {
    return static_cast<std::size_t>(std::lower_bound(v.begin(), v.end(), key) - v.begin());
  };
  for (const auto& [id, from] : original) {
    const auto& to = reannotated.at(id);
    const auto r = pos(out.rows, from);
    ++out.counts[r][pos(out.columns, to)];
    ++row_total[r];
    if (to == from)
      out.same[r] += 1.0;
    else if (to == kNormalCategory)
      out.normal[r] += 1.0;
    else
      out.others[r] += 1.0;
  }
  for (std::size_t r = 0; r < out.rows.size(); ++r) {
    const double n = static_cast<double>(row_total[r]);
    out.same[r] /= n;
    out.others[r] /= n;
    out.normal[r] /= n;
  }
  return out;
}

AgreementReport analyze_agreement(std::span<const AnnotationRound> rounds, const Manifest& manifest,
                                  unsigned workers) {
  if (rounds.size() < 2) throw ValidationError("agreement analysis needs at least 2 rounds");
  AgreementReport report;
  std::vector<std::vector<std::uint8_t>> frames(rounds.size());
  parallel_for(rounds.size(), workers,
               [&](std::size_t r) { frames[r] = abnormal_frames(rounds[r], manifest); });
  report.frames = static_cast<std::int64_t>(frames.front().size());

  const auto n = rounds.size();
  report.pairwise_kappa.assign(n, std::vector<double>(n, 1.0));
  for (std::size_t a = 0; a < n; ++a) {
    report.round_ids.push_back(rounds[a].round_id);
    for (std::size_t b = a + 1; b < n; ++b) {
      const double k = cohen_kappa(frames[a], frames[b]);
      report.pairwise_kappa[a][b] = k;
      report.pairwise_kappa[b][a] = k;
    }
  }

  std::vector<std::uint32_t> positives(frames.front().size(), 0);
  for (const auto& f : frames)
    for (std::size_t i = 0; i < f.size(); ++i) positives[i] += f[i];
  report.fleiss_kappa = fleiss_kappa(positives, static_cast<std::uint32_t>(n));
  report.boundaries = boundary_stats(rounds, manifest);
  return report;
}

}  // namespace vadeval
