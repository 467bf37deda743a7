// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "vadeval/agreement.hpp"
#include "vadeval/analysis.hpp"
#include "vadeval/classic_metrics.hpp"
#include "vadeval/ingest.hpp"
#include "vadeval/laap.hpp"
#include "vadeval/prob_metrics.hpp"
#include "vadeval/synth.hpp"

using namespace vadeval;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const char* name, const std::function<Outcome()>& check) {
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::vector<double> complement(const std::vector<double>& y) {
  std::vector<double> out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = 1.0 - y[i];
  return out;
}

int sh(const std::string& cmd) { return std::system((cmd + " > /dev/null 2>&1").c_str()); }

std::string cli() { return VADEVAL_CLI_PATH; }

Outcome degeneration() {
  std::mt19937_64 rng(101);
  double worst = 0.0;
  for (int it = 0; it < 1000; ++it) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng() % (it < 900 ? 500 : 10000));
    auto s = (it % 3 == 0) ? fixture::tied_scores(rng, n, 1 + static_cast<int>(rng() % 20))
                           : fixture::uniform(rng, n);
    auto y = fixture::hard_labels(rng, n, 0.05 + 0.9 * std::uniform_real_distribution<>(0, 1)(rng));
    worst = std::max({worst, std::abs(prob_auc(s, y) - auc(s, y)), std::abs(prob_ap(s, y) - ap(s, y))});
  }
  return {worst <= 1e-9, "1000 instances, max |diff| = " + num(worst)};
}

Outcome extremes() {
  std::mt19937_64 rng(202);
  double worst = 0.0;
  for (int it = 0; it < 1000; ++it) {
    const std::size_t n = 3 + static_cast<std::size_t>(rng() % 2000);
    auto y = fixture::soft_labels(rng, n, 2 + static_cast<int>(rng() % 5));
    const auto inv = complement(y);
    worst = std::max({worst, std::abs(prob_auc(y, y) - 1.0), std::abs(prob_ap(y, y) - 1.0),
                      std::abs(prob_auc(inv, y)), std::abs(prob_ap(inv, y))});
  }
  return {worst <= 1e-9, "1000 soft-label instances, max deviation = " + num(worst)};
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(303);
  double worst = 0.0;
  for (int it = 0; it < 1000; ++it) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng() % 300);
    auto s = fixture::tied_scores(rng, n, 1 + static_cast<int>(rng() % 8));
    auto y = fixture::hard_labels(rng, n, 0.3);
    worst = std::max({worst, std::abs(auc(s, y) - oracle::mann_whitney_auc(s, y)),
                      std::abs(ap(s, y) - oracle::step_ap(s, y))});
  }
  return {worst <= 1e-9, "1000 heavily tied instances, max |diff| = " + num(worst)};
}

struct Scored {
  double auc = 0, ap = 0, laap = 0;
};

Scored evaluate(const SyntheticDataset& ds, const std::vector<FrameScoreTrace>& preds,
                const EventIntervalSet& ev) {
  const auto y = concat(preds, to_real(expand_round(ds.rounds[0], ds.manifest)));
  return {auc(y.scores, y.labels), ap(y.scores, y.labels),
          laap(preds, ds.manifest, ev.intervals, LaApParams{}).laap};
}

Outcome table6_property() {
  int datasets = 0, strict_checked = 0;
  std::string bad;
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    DatasetShape shape;
    shape.videos = 30;
    shape.seed = seed;
    // rounds agree, so the median interval is exactly the labelled segment
    shape.boundary_jitter = 0;
    const auto ds = synthesize_dataset(shape);
    const auto ev = event_intervals(ds.rounds, ds.manifest);
    DetectorProfile profile;
    profile.onset_lag = static_cast<double>(seed % 5) / 4.0;
    profile.rise_width = static_cast<double>(seed % 3) / 2.0;
    profile.coverage = 0.3 + 0.1 * static_cast<double>(seed % 4);
    profile.seed = seed;
    const auto ori = seed % 4 == 0 ? uniform_random_scores(ds.manifest, seed)
                                   : synthesize(profile, ds.manifest, ds.events);
    const auto desc = perturb_scores(ori, ev.intervals, PerturbMode::desc);
    const auto asc = perturb_scores(ori, ev.intervals, PerturbMode::asc);
    const auto o = evaluate(ds, ori, ev), d = evaluate(ds, desc, ev), a = evaluate(ds, asc, ev);
    ++datasets;
    const double drift = std::max({std::abs(o.auc - d.auc), std::abs(o.auc - a.auc),
                                   std::abs(o.ap - d.ap), std::abs(o.ap - a.ap)});
    if (drift > 1e-9) bad += " seed " + std::to_string(seed) + ": auc/ap drift " + num(drift) + ";";
    if (!(d.laap >= o.laap && o.laap >= a.laap))
      bad += " seed " + std::to_string(seed) + ": laap D/O/A " + num(d.laap) + "/" + num(o.laap) +
             "/" + num(a.laap) + ";";
    // in-interval scores are never all equal for these generators
    ++strict_checked;
    if (!(d.laap > o.laap && o.laap > a.laap))
      bad += " seed " + std::to_string(seed) + ": not strict D/O/A " + num(d.laap) + "/" +
             num(o.laap) + "/" + num(a.laap) + ";";
  }
  return {bad.empty(), std::to_string(datasets) + " synthetic datasets, " +
                           std::to_string(strict_checked) + " strict checks" +
                           (bad.empty() ? std::string() : ";" + bad)};
}

Outcome guideline_numerics() {
  const double s34 = decay_score(0.34, 7);
  const double s35 = decay_score(0.35, 7);
  const double s35_direct = 1.0 - 1.0 / (1.0 + std::exp(2.1));
  const double ratio = std::pow(2.0, -7.0) / std::pow(2.0, 0.0);
  const bool ok = s34 > 0.9 && s35 == s35_direct && ratio < 0.01 && decay_score(0.5, 7) == 0.5;
  return {ok, "s(0.34)=" + num(s34) + " s(0.35)=" + format_real(s35) + " w(7)/w(0)=" + num(ratio) +
                  " s(0.5)=" + format_real(decay_score(0.5, 7))};
}

Outcome random_baseline() {
  DatasetShape shape;
  shape.videos = 2400;
  shape.min_frames = 400;
  shape.max_frames = 500;
  shape.abnormal_fraction = 0.5;
  shape.min_event = 0.1;
  shape.max_event = 0.5;
  shape.seed = 77;
  const auto ds = synthesize_dataset(shape);
  const auto preds = uniform_random_scores(ds.manifest, 5);
  const auto hard = concat(preds, to_real(expand_round(ds.rounds[0], ds.manifest)));
  const auto soft = concat(preds, probs_of(make_prob_labels(ds.rounds, ds.manifest)));
  double pos = 0;
  for (double l : hard.labels) pos += l;
  const double rate = pos / static_cast<double>(hard.labels.size());
  const double a = auc(hard.scores, hard.labels), pa = prob_auc(soft.scores, soft.labels);
  const bool ok = hard.labels.size() >= 1000000 && rate >= 0.10 && rate <= 0.25 &&
                  std::abs(a - 0.5) <= 0.01 && std::abs(pa - 0.5) <= 0.01;
  return {ok, std::to_string(hard.labels.size()) + " frames, positive rate " + num(rate) + ", auc " +
                  format_real(a) + ", prob_auc " + format_real(pa)};
}

Outcome agreement_oracles() {
  std::mt19937_64 rng(404);
  double worst = 0.0;
  int fixtures = 0;
  for (int it = 0; fixtures < 150 && it < 1000; ++it) {
    const std::size_t raters = 2 + rng() % 5, items = 4 + rng() % 60;
    std::vector<std::vector<std::uint8_t>> r(raters, std::vector<std::uint8_t>(items));
    const auto p = 1 + rng() % 4;
    for (auto& row : r)
      for (auto& x : row) x = rng() % 5 < p;
    const double f = oracle::fleiss(r), c = oracle::cohen(r[0], r[1]);
    if (!std::isfinite(f) || !std::isfinite(c)) continue;  // constant fixtures
    std::vector<std::uint32_t> pos(items, 0);
    for (const auto& row : r)
      for (std::size_t i = 0; i < items; ++i) pos[i] += row[i];
    worst = std::max({worst, std::abs(fleiss_kappa(pos, static_cast<std::uint32_t>(raters)) - f),
                      std::abs(cohen_kappa(r[0], r[1]) - c)});
    ++fixtures;
  }

  // 4-round Table-2-shaped fixture at 10 fps, hand-computed medians.
  Manifest m;
  for (const char* id : {"a", "b", "c"}) m.push_back(fixture::video(id, 100, true, "", 10));
  std::vector<AnnotationRound> rounds{{"r0", {{"a", {{10, 30}}}, {"b", {{0, 10}}}, {"c", {{0, 10}}}}},
                                      {"r1", {{"a", {{20, 40}}}, {"b", {{0, 10}}}, {"c", {{0, 20}}}}},
                                      {"r2", {{"a", {{30, 50}}}, {"b", {{0, 10}}}, {"c", {{0, 10}}}}},
                                      {"r3", {{"a", {{40, 60}}}, {"b", {{0, 10}}}, {"c", {{0, 20}}}}}};
  const auto rep = analyze_agreement(rounds, m);
  const bool table = rep.boundaries.median_start_std == 0.0 &&
                     rep.boundaries.median_duration_std == 0.0 &&
                     std::abs(rep.boundaries.median_end_std - 0.5) < 1e-12 &&
                     std::abs(rep.boundaries.videos[0].start_std - std::sqrt(1.25)) < 1e-12;
  std::vector<AnnotationRound> same(4, rounds[1]);
  const auto ident = analyze_agreement(same, m);
  bool ones = ident.fleiss_kappa == 1.0;
  for (const auto& row : ident.pairwise_kappa)
    for (double k : row) ones = ones && k == 1.0;
  return {fixtures >= 100 && worst <= 1e-12 && table && ones,
          std::to_string(fixtures) + " fixtures, max |diff| = " + num(worst) +
              ", identical rounds kappa=1: " + (ones ? "yes" : "no") +
              ", table medians (start/duration/end) = " + num(rep.boundaries.median_start_std) + "/" +
              num(rep.boundaries.median_duration_std) + "/" + num(rep.boundaries.median_end_std)};
}

Outcome early_vs_late() {
  DatasetShape shape;
  shape.videos = 40;
  shape.seed = 8;
  const auto ds = synthesize_dataset(shape);
  const auto ev = event_intervals(ds.rounds, ds.manifest);
  DetectorProfile early;
  early.seed = 3;
  auto late = early;
  late.onset_lag = 1.0;
  const auto e = evaluate(ds, synthesize(early, ds.manifest, ds.events), ev);
  const auto l = evaluate(ds, synthesize(late, ds.manifest, ds.events), ev);
  const double drift = std::max(std::abs(e.auc - l.auc), std::abs(e.ap - l.ap));
  return {drift <= 1e-9 && e.laap - l.laap >= 0.1,
          "auc/ap drift " + num(drift) + ", laap early " + format_real(e.laap) + " late " +
              format_real(l.laap)};
}

Outcome far_protocol() {
  DatasetShape shape;
  shape.videos = 30;
  shape.abnormal_fraction = 0.0;
  shape.seed = 12;
  auto ds = synthesize_dataset(shape);
  for (auto& v : ds.manifest) v.normality = Normality::normal;  // video 0 is abnormal by design
  const auto preds = uniform_random_scores(ds.manifest, 9);
  std::vector<double> all;
  for (const auto& t : preds) all.insert(all.end(), t.scores.begin(), t.scores.end());
  bool exact = true;
  for (double tau : {0.5, 0.8}) {
    std::size_t hits = 0;
    for (double s : all) hits += s >= tau;
    exact = exact && far(all, tau) == static_cast<double>(hits) / static_cast<double>(all.size());
  }
  bool monotone = true;
  double prev = 2.0;
  for (int k = 0; k < 100; ++k) {
    const double f = far(all, k / 99.0);
    monotone = monotone && f <= prev;
    prev = f;
  }
  return {exact && monotone, std::to_string(all.size()) + " normal frames, far@0.5=" +
                                 format_real(far(all, 0.5)) + " far@0.8=" + format_real(far(all, 0.8)) +
                                 ", non-increasing: " + (monotone ? "yes" : "no")};
}

Outcome performance(const fs::path& dir) {
  const auto d = (dir / "perf").string();
  if (sh(cli() + " synth-dataset --videos 500 --min-frames 2000 --max-frames 2000 --out " + d) != 0 ||
      sh(cli() + " synth --manifest " + d + "/manifest.csv --annotations " + d +
         "/annotations.json --onset-lag 0.4 --out " + d) != 0)
    return {false, "could not build the dataset"};
  const auto start = std::chrono::steady_clock::now();
  const int rc = sh(cli() + " eval --manifest " + d + "/manifest.csv --annotations " + d +
                    "/annotations.json --predictions " + d + "/predictions.jsonl --out " + d);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const auto rep = load_report(fs::path(d) / "report.json");
  return {rc == 0 && secs < 5.0 && rep.counts.at("frames") == 1000000,
          "eval on 1000000 frames / 500 videos took " + num(secs) + " s"};
}

Outcome determinism(const fs::path& dir) {
  const auto d = (dir / "det").string();
  if (sh(cli() + " synth-dataset --videos 60 --out " + d) != 0) return {false, "synth-dataset failed"};
  const std::string m = d + "/manifest.csv", a = d + "/annotations.json", p = d + "/predictions.jsonl";
  if (sh(cli() + " synth --manifest " + m + " --annotations " + a + " --onset-lag 0.2 --out " + d) != 0)
    return {false, "synth failed"};
  write_file(fs::path(d) / "series.csv", "step,ap,laap\n1,0.5,0.4\n2,0.55,0.5\n3,0.6,0.45\n4,0.62,0.6\n");
  const std::string in = " --manifest " + m + " --annotations " + a;
  const std::vector<std::string> commands{
      "eval" + in + " --predictions " + p,
      "agreement" + in,
      "curves" + in + " --predictions " + p,
      "perturb" + in + " --predictions " + p + " --mode desc",
      "heatmap" + in + " --predictions " + p,
      "synth" + in + " --onset-lag 0.7",
      "synth-dataset --videos 40",
      "correlate --series " + d + "/series.csv",
  };
  std::size_t files = 0;
  for (std::size_t c = 0; c < commands.size(); ++c) {
    for (const char* w : {"1", "8"}) {
      const auto out = d + "/c" + std::to_string(c) + "_w" + w;
      if (std::system((cli() + " " + commands[c] + " --workers " + w + " --out " + out + " > " + out +
                       ".stdout 2>&1").c_str()) != 0 &&
          !fs::exists(out))
        return {false, "command failed: " + commands[c]};
    }
    const auto one = fs::path(d) / ("c" + std::to_string(c) + "_w1");
    const auto eight = fs::path(d) / ("c" + std::to_string(c) + "_w8");
    if (read_file(one.string() + ".stdout") != read_file(eight.string() + ".stdout"))
      return {false, "stdout differs for: " + commands[c]};
    for (const auto& entry : fs::directory_iterator(one)) {
      const auto twin = eight / entry.path().filename();
      if (!fs::exists(twin) || read_file(entry.path()) != read_file(twin))
        return {false, "output differs: " + entry.path().filename().string() + " from " + commands[c]};
      ++files;
    }
  }
  return {files >= 12, std::to_string(commands.size()) + " subcommands, " + std::to_string(files) +
                           " output files byte-identical for --workers 1 vs 8"};
}

}  // namespace

int main() {
  const auto dir = fs::temp_directory_path() / "vadeval_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);

  report(1, "degeneration to classic metrics", degeneration);
  report(2, "normalization extremes", extremes);
  report(3, "oracle equivalence", oracle_equivalence);
  report(4, "perturbation ordering", table6_property);
  report(5, "parameter guideline numerics", guideline_numerics);
  report(6, "random baseline", random_baseline);
  report(7, "agreement oracles", agreement_oracles);
  report(8, "early vs late separation", early_vs_late);
  report(9, "FAR protocol", far_protocol);
  report(10, "performance", [&] { return performance(dir); });
  report(11, "determinism", [&] { return determinism(dir); });

  fs::remove_all(dir);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
