#include "vadeval/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <set>
#include <thread>

#include "vadeval/agreement.hpp"
#include "vadeval/analysis.hpp"
#include "vadeval/classic_metrics.hpp"
#include "vadeval/error.hpp"
#include "vadeval/ingest.hpp"
#include "vadeval/laap.hpp"
#include "vadeval/parallel.hpp"
#include "vadeval/prob_metrics.hpp"
#include "vadeval/synth.hpp"

namespace vadeval::cli {

namespace fs = std::filesystem;

namespace {

struct RunConfig {
  std::string manifest;
  std::string predictions;
  std::string annotations;
  std::string out = ".";
  LaApParams params;
  std::vector<double> far_thresholds{0.5, 0.8};
  std::vector<std::string> excluded;
  double tau = 0.5;
  std::size_t bins = 10;
  std::string mode = "identity";
  unsigned workers = 1;
  std::int64_t reference_round = 0;
  std::string recategorized;
  std::string series;
  std::vector<std::string> columns;
  DetectorProfile profile;
  bool uniform = false;
  DatasetShape shape;
};

struct Inputs {
  Manifest manifest;  // after category exclusion
  std::vector<AnnotationRound> rounds;
  std::vector<FrameScoreTrace> preds;
  std::size_t excluded_videos = 0;
  std::vector<FileDigest> provenance;
};

std::string join(const std::vector<std::string>& items, const char* sep = ",") {
  std::string s;
  for (const auto& x : items) s += (s.empty() ? "" : sep) + x;
  return s;
}

std::string join(const std::vector<double>& items) {
  std::string s;
  for (double x : items) s += (s.empty() ? "" : ",") + format_real(x);
  return s;
}

void print_params(const RunConfig& cfg, std::ostream& out) {
  out << "params: phi=" << cfg.params.phi << " alpha=" << format_real(cfg.params.alpha)
      << " beta=" << format_real(cfg.params.beta) << " far_thresholds=" << join(cfg.far_thresholds)
      << " tau=" << format_real(cfg.tau) << " bins=" << cfg.bins
      << " reference_round=" << cfg.reference_round
      << " exclude_categories=" << join(cfg.excluded) << "\n";
}

fs::path prepare_out(const RunConfig& cfg) {
  fs::path dir(cfg.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory '" + cfg.out + "': " + ec.message());
  return dir;
}

void report_violations(std::span<const Violation> violations, std::ostream& err) {
  for (const auto& v : violations)
    err << (v.severity == Severity::error ? "error" : "warning") << ": " << v.kind << ": "
        << v.message << "\n";
}

// Loads what the subcommand needs and validates it. Videos of excluded
// categories vanish here, before any computation sees them.
Inputs load_inputs(const RunConfig& cfg, bool need_annotations, bool need_predictions,
                   std::ostream& err) {
  Inputs in;
  const auto full = load_manifest(cfg.manifest);
  in.provenance.push_back(digest_file(cfg.manifest, static_cast<std::int64_t>(full.size())));
  in.manifest = exclude_categories(full, cfg.excluded);
  in.excluded_videos = full.size() - in.manifest.size();
  if (in.manifest.empty()) throw ValidationError("no videos left after category exclusion");

  std::set<std::string> ignored;
  {
    const auto kept = index_by_id(in.manifest);
    for (const auto& v : full)
      if (!kept.contains(v.video_id)) ignored.insert(v.video_id);
  }

  if (need_annotations) {
    auto set = load_annotations(cfg.annotations, full);
    for (const auto& w : set.warnings) err << "warning: " << w << "\n";
    in.provenance.push_back(
        digest_file(cfg.annotations, static_cast<std::int64_t>(set.rounds.size())));
    in.rounds = restrict_rounds(set.rounds, in.manifest);
    if (in.rounds.empty()) throw ValidationError("annotations contain no rounds");
  }
  if (need_predictions) {
    in.preds = load_predictions(cfg.predictions, in.manifest, ignored);
    in.provenance.push_back(
        digest_file(cfg.predictions, static_cast<std::int64_t>(in.preds.size())));
  }

  const auto violations = validate_dataset(in.manifest, in.rounds, in.preds);
  report_violations(violations, err);
  if (has_errors(violations)) throw ValidationError("input validation failed");
  return in;
}

std::vector<double> normal_scores(const Inputs& in) {
  std::vector<double> out;
  for (std::size_t j = 0; j < in.manifest.size(); ++j)
    if (!in.manifest[j].abnormal())
      out.insert(out.end(), in.preds[j].scores.begin(), in.preds[j].scores.end());
  return out;
}

const AnnotationRound& reference_round(const RunConfig& cfg, const Inputs& in) {
  if (cfg.reference_round < 0 || cfg.reference_round >= static_cast<std::int64_t>(in.rounds.size()))
    throw ValidationError("reference round " + std::to_string(cfg.reference_round) +
                          " does not exist (" + std::to_string(in.rounds.size()) + " rounds)");
  return in.rounds[static_cast<std::size_t>(cfg.reference_round)];
}

std::string multi_event_reason(const EventIntervalSet& ev) {
  return "multi-event videos violate the single-event assumption: " +
         join(ev.multi_event_videos, ", ");
}

// Runs fn, recording a ComputeError as the metric's skip reason.
template <typename Fn>
void attempt(MetricReport& report, const std::string& metric, Fn&& fn) {
  try {
    fn();
  } catch (const ComputeError& e) {
    report.skipped[metric] = e.what();
  }
}

int cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  cfg.params.validate();
  const auto in = load_inputs(cfg, true, true, err);
  const auto dir = prepare_out(cfg);

  MetricReport report;
  report.params = cfg.params;
  report.far_thresholds = cfg.far_thresholds;
  report.excluded_categories = cfg.excluded;
  report.reference_round = cfg.reference_round;
  report.provenance = in.provenance;

  const auto hard = to_real(expand_round(reference_round(cfg, in), in.manifest));
  const auto classic = concat(in.preds, hard);
  attempt(report, "auc_ap", [&] {
    const auto sweep = SweepAccumulator::build(classic.scores, classic.labels);
    report.auc = trapezoid_area(roc_curve(sweep));
    report.ap = step_area(pr_curve(sweep));
  });

  const auto soft = concat(in.preds, probs_of(make_prob_labels(in.rounds, in.manifest)));
  attempt(report, "prob_auc", [&] { report.prob_auc = prob_auc(soft.scores, soft.labels); });
  attempt(report, "prob_ap", [&] { report.prob_ap = prob_ap(soft.scores, soft.labels); });

  const auto ev = event_intervals(in.rounds, in.manifest);
  for (const auto& w : ev.warnings) err << "warning: " << w << "\n";
  if (!ev.multi_event_videos.empty()) {
    report.skipped["laap"] = multi_event_reason(ev);
  } else {
    attempt(report, "laap", [&] {
      report.laap = laap(in.preds, in.manifest, ev.intervals, cfg.params, cfg.workers).laap;
    });
  }

  const auto normal = normal_scores(in);
  if (normal.empty()) {
    report.skipped["far"] = "no normal videos";
  } else {
    for (double t : cfg.far_thresholds) report.far[t] = far(normal, t);
  }

  std::int64_t frames = 0, abnormal = 0, positives = 0;
  for (const auto& v : in.manifest) {
    frames += v.frame_count;
    abnormal += v.abnormal();
  }
  for (double l : classic.labels) positives += l > 0.5;
  report.counts = {{"videos", static_cast<std::int64_t>(in.manifest.size())},
                   {"abnormal_videos", abnormal},
                   {"normal_videos", static_cast<std::int64_t>(in.manifest.size()) - abnormal},
                   {"excluded_videos", static_cast<std::int64_t>(in.excluded_videos)},
                   {"frames", frames},
                   {"positive_frames", positives},
                   {"rounds", static_cast<std::int64_t>(in.rounds.size())}};

  write_report(report, dir / "report.json");
  print_params(cfg, out);
  auto show = [&out](const char* name, const std::optional<double>& v) {
    out << name << ": " << (v ? format_real(*v) : std::string("skipped")) << "\n";
  };
  show("auc", report.auc);
  show("ap", report.ap);
  show("prob_auc", report.prob_auc);
  show("prob_ap", report.prob_ap);
  show("laap", report.laap);
  for (const auto& [t, v] : report.far) out << "far@" << format_real(t) << ": " << format_real(v) << "\n";
  for (const auto& [m, why] : report.skipped) out << "skipped " << m << ": " << why << "\n";
  return kExitOk;
}

int cmd_agreement(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto in = load_inputs(cfg, true, false, err);
  if (in.rounds.size() < 2)
    throw ValidationError("agreement needs at least 2 rounds, found " + std::to_string(in.rounds.size()));

  std::set<std::string> shared;
  std::set<std::string> any;
  for (std::size_t r = 0; r < in.rounds.size(); ++r) {
    std::set<std::string> ids;
    for (const auto& [id, list] : in.rounds[r].intervals) ids.insert(id);
    any.insert(ids.begin(), ids.end());
    if (r == 0) {
      shared = ids;
    } else {
      std::set<std::string> keep;
      std::set_intersection(shared.begin(), shared.end(), ids.begin(), ids.end(),
                            std::inserter(keep, keep.end()));
      shared = std::move(keep);
    }
  }
  if (!any.empty() && shared.empty()) throw ValidationError("rounds annotate disjoint sets of videos");

  auto report = analyze_agreement(in.rounds, in.manifest, cfg.workers);
  for (const auto& w : report.boundaries.warnings) err << "warning: " << w << "\n";

  const auto dir = prepare_out(cfg);
  if (!cfg.recategorized.empty()) {
    std::map<std::string, std::string> original;
    for (const auto& v : in.manifest)
      original[v.video_id] = v.abnormal() ? v.category.value_or("") : kNormalCategory;
    auto reannotated = load_category_map(cfg.recategorized);
    for (auto it = reannotated.begin(); it != reannotated.end();)
      it = original.contains(it->first) ? std::next(it) : reannotated.erase(it);
    report.categories = category_confusion(original, reannotated);
    write_file(dir / "category_confusion.csv", category_confusion_to_csv(*report.categories));
  }
  write_file(dir / "agreement.json", agreement_to_json(report));
  write_file(dir / "boundary_deviations.csv", deviations_to_csv(report.boundaries));

  print_params(cfg, out);
  out << "fleiss_kappa: " << format_real(report.fleiss_kappa) << "\n"
      << "median_start_std: " << format_real(report.boundaries.median_start_std) << "\n"
      << "median_duration_std: " << format_real(report.boundaries.median_duration_std) << "\n"
      << "median_end_std: " << format_real(report.boundaries.median_end_std) << "\n";
  return kExitOk;
}

int cmd_curves(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  cfg.params.validate();
  const auto in = load_inputs(cfg, true, true, err);
  const auto dir = prepare_out(cfg);

  const auto hard = concat(in.preds, to_real(expand_round(reference_round(cfg, in), in.manifest)));
  const auto sweep = SweepAccumulator::build(hard.scores, hard.labels);
  write_curve(roc_curve(sweep), dir / "roc.csv");
  write_curve(pr_curve(sweep), dir / "pr.csv");

  const auto soft = concat(in.preds, probs_of(make_prob_labels(in.rounds, in.manifest)));
  const auto soft_sweep = SweepAccumulator::build(soft.scores, soft.labels);
  {
    const auto [best, worst] = best_worst_curves(soft.labels, CurveKind::roc);
    write_file(dir / "prob_roc.csv", prob_curves_to_csv(roc_curve(soft_sweep), best, worst));
  }
  {
    const auto [best, worst] = best_worst_curves(soft.labels, CurveKind::pr);
    write_file(dir / "prob_pr.csv", prob_curves_to_csv(pr_curve(soft_sweep), best, worst));
  }

  print_params(cfg, out);
  const auto ev = event_intervals(in.rounds, in.manifest);
  if (!ev.multi_event_videos.empty()) {
    out << "skipped precision_larecall.csv: " << multi_event_reason(ev) << "\n";
  } else {
    write_curve(laap(in.preds, in.manifest, ev.intervals, cfg.params, cfg.workers).curve,
                dir / "precision_larecall.csv");
  }
  return kExitOk;
}

int cmd_perturb(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto mode = parse_perturb_mode(cfg.mode);
  const auto in = load_inputs(cfg, true, true, err);
  const auto ev = event_intervals(in.rounds, in.manifest);
  const auto perturbed = perturb_scores(in.preds, ev.intervals, mode);
  const auto dir = prepare_out(cfg);
  const auto name = "predictions_" + std::string(to_string(mode)) + ".jsonl";
  write_predictions(perturbed, dir / name);
  print_params(cfg, out);
  out << "wrote " << name << "\n";
  return kExitOk;
}

int cmd_correlate(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const auto table = load_table(cfg.series);
  std::size_t a = 0, b = 1;
  if (!cfg.columns.empty()) {
    if (cfg.columns.size() != 2) throw ValidationError("--columns takes exactly two names");
    auto find = [&](const std::string& name) {
      auto it = std::find(table.header.begin(), table.header.end(), name);
      if (it == table.header.end()) throw ValidationError("no column named '" + name + "'");
      return static_cast<std::size_t>(it - table.header.begin());
    };
    a = find(cfg.columns[0]);
    b = find(cfg.columns[1]);
  } else if (table.header.size() < 2) {
    throw ValidationError("series table needs at least two columns");
  }
  const double rho = srocc(table.columns[a], table.columns[b]);

  nlohmann::json doc;
  doc["srocc"] = round_real(rho);
  doc["x"] = table.header[a];
  doc["y"] = table.header[b];
  doc["points"] = table.columns[a].size();
  write_file(prepare_out(cfg) / "srocc.json", doc.dump(2) + "\n");
  out << format_real(rho) << "\n";
  return kExitOk;
}

int cmd_heatmap(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto in = load_inputs(cfg, true, true, err);
  const auto ev = event_intervals(in.rounds, in.manifest);
  const auto hist = position_histogram(in.preds, ev.intervals, cfg.tau, cfg.bins);
  write_file(prepare_out(cfg) / "position_histogram.csv", histogram_to_csv(hist));
  print_params(cfg, out);
  out << "positives: " << hist.positives << "\n";
  return kExitOk;
}

int cmd_synth(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto in = load_inputs(cfg, true, false, err);
  std::vector<FrameScoreTrace> traces;
  if (cfg.uniform) {
    traces = uniform_random_scores(in.manifest, cfg.profile.seed);
  } else {
    cfg.profile.validate();
    const auto ev = event_intervals(in.rounds, in.manifest);
    std::map<std::string, const EventInterval*> by_id;
    for (const auto& iv : ev.intervals) by_id.emplace(iv.video_id, &iv);
    traces.resize(in.manifest.size());
    parallel_for(in.manifest.size(), cfg.workers, [&](std::size_t j) {
      const auto it = by_id.find(in.manifest[j].video_id);
      traces[j] = synthesize_video(cfg.profile, in.manifest[j], it == by_id.end() ? nullptr : it->second);
    });
  }
  write_predictions(traces, prepare_out(cfg) / "predictions.jsonl");
  out << "wrote predictions.jsonl (" << traces.size() << " videos)\n";
  return kExitOk;
}

int cmd_synth_dataset(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const auto ds = synthesize_dataset(cfg.shape);
  const auto dir = prepare_out(cfg);
  write_file(dir / "manifest.csv", manifest_to_csv(ds.manifest));
  write_file(dir / "annotations.json", annotations_to_json(ds.rounds));
  std::int64_t frames = 0;
  for (const auto& v : ds.manifest) frames += v.frame_count;
  out << "wrote manifest.csv and annotations.json (" << ds.manifest.size() << " videos, " << frames
      << " frames, " << ds.rounds.size() << " rounds)\n";
  return kExitOk;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto manifest = load_manifest(cfg.manifest);
  std::vector<AnnotationRound> rounds;
  std::vector<FrameScoreTrace> preds;
  if (!cfg.annotations.empty()) {
    auto set = load_annotations(cfg.annotations, manifest);
    for (const auto& w : set.warnings) err << "warning: " << w << "\n";
    rounds = std::move(set.rounds);
  }
  if (!cfg.predictions.empty()) preds = load_predictions(cfg.predictions, manifest);
  const auto violations = validate_dataset(manifest, rounds, preds);
  report_violations(violations, err);
  if (has_errors(violations)) return kExitInvalid;
  out << "ok: " << manifest.size() << " videos, " << rounds.size() << " rounds, "
      << violations.size() << " warnings\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frame-level video anomaly detection evaluation"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto inputs = [&cfg](CLI::App* sub, bool annotations, bool predictions) {
    sub->add_option("--manifest", cfg.manifest, "video manifest CSV")->required()->check(CLI::ExistingFile);
    if (annotations)
      sub->add_option("--annotations", cfg.annotations, "annotation rounds JSON")
          ->required()
          ->check(CLI::ExistingFile);
    if (predictions)
      sub->add_option("--predictions", cfg.predictions, "prediction JSON Lines")
          ->required()
          ->check(CLI::ExistingFile);
    sub->add_option("--exclude-categories", cfg.excluded, "comma-separated categories to drop")
        ->delimiter(',');
  };
  auto common = [&cfg](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "output directory")->capture_default_str();
    sub->add_option("--workers", cfg.workers, "worker threads")->check(CLI::Range(1u, 1024u));
  };
  auto laap_params = [&cfg](CLI::App* sub) {
    sub->add_option("--phi", cfg.params.phi, "minimum sampling gap (frames)")->capture_default_str();
    sub->add_option("--alpha", cfg.params.alpha, "weight decay base")->capture_default_str();
    sub->add_option("--beta", cfg.params.beta, "decay steepness")->capture_default_str();
  };
  auto reference = [&cfg](CLI::App* sub) {
    sub->add_option("--reference-round", cfg.reference_round, "round providing the hard labels")
        ->capture_default_str();
  };

  auto* eval = app.add_subcommand("eval", "compute the metric report");
  inputs(eval, true, true);
  common(eval);
  laap_params(eval);
  reference(eval);
  eval->add_option("--far-thresholds", cfg.far_thresholds, "FAR thresholds")->delimiter(',');

  auto* agreement = app.add_subcommand("agreement", "inter-round agreement");
  inputs(agreement, true, false);
  common(agreement);
  agreement->add_option("--recategorized", cfg.recategorized, "video_id,category CSV")
      ->check(CLI::ExistingFile);

  auto* curves = app.add_subcommand("curves", "write ROC / PR / Precision-LaRecall curves");
  inputs(curves, true, true);
  common(curves);
  laap_params(curves);
  reference(curves);

  auto* perturb = app.add_subcommand("perturb", "reorder in-interval scores");
  inputs(perturb, true, true);
  common(perturb);
  perturb->add_option("--mode", cfg.mode, "identity, desc or asc")->capture_default_str();

  auto* correlate = app.add_subcommand("correlate", "Spearman correlation of two metric series");
  correlate->add_option("--series", cfg.series, "CSV with one column per metric")
      ->required()
      ->check(CLI::ExistingFile);
  correlate->add_option("--columns", cfg.columns, "the two column names")->delimiter(',');
  common(correlate);

  auto* heatmap = app.add_subcommand("heatmap", "histogram of positive positions within events");
  inputs(heatmap, true, true);
  common(heatmap);
  heatmap->add_option("--tau", cfg.tau, "binarization threshold")->capture_default_str();
  heatmap->add_option("--bins", cfg.bins, "histogram bins")->capture_default_str();

  auto* synth = app.add_subcommand("synth", "synthetic detector predictions");
  inputs(synth, true, false);
  common(synth);
  synth->add_option("--onset-lag", cfg.profile.onset_lag)->capture_default_str();
  synth->add_option("--rise-width", cfg.profile.rise_width)->capture_default_str();
  synth->add_option("--peak", cfg.profile.peak_score)->capture_default_str();
  synth->add_option("--noise", cfg.profile.background_noise)->capture_default_str();
  synth->add_option("--coverage", cfg.profile.coverage)->capture_default_str();
  synth->add_option("--seed", cfg.profile.seed)->capture_default_str();
  synth->add_flag("--uniform", cfg.uniform, "uniform random scores instead of a profile");

  auto* synth_dataset = app.add_subcommand("synth-dataset", "synthetic manifest and annotations");
  common(synth_dataset);
  synth_dataset->add_option("--videos", cfg.shape.videos)->capture_default_str();
  synth_dataset->add_option("--min-frames", cfg.shape.min_frames)->capture_default_str();
  synth_dataset->add_option("--max-frames", cfg.shape.max_frames)->capture_default_str();
  synth_dataset->add_option("--fps", cfg.shape.fps)->capture_default_str();
  synth_dataset->add_option("--abnormal-fraction", cfg.shape.abnormal_fraction)->capture_default_str();
  synth_dataset->add_option("--min-event", cfg.shape.min_event)->capture_default_str();
  synth_dataset->add_option("--max-event", cfg.shape.max_event)->capture_default_str();
  synth_dataset->add_option("--rounds", cfg.shape.rounds)->capture_default_str();
  synth_dataset->add_option("--jitter", cfg.shape.boundary_jitter)->capture_default_str();
  synth_dataset->add_option("--seed", cfg.shape.seed)->capture_default_str();

  auto* validate = app.add_subcommand("validate", "check inputs without computing metrics");
  validate->add_option("--manifest", cfg.manifest)->required()->check(CLI::ExistingFile);
  validate->add_option("--annotations", cfg.annotations)->check(CLI::ExistingFile);
  validate->add_option("--predictions", cfg.predictions)->check(CLI::ExistingFile);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*eval) return cmd_eval(cfg, out, err);
    if (*agreement) return cmd_agreement(cfg, out, err);
    if (*curves) return cmd_curves(cfg, out, err);
    if (*perturb) return cmd_perturb(cfg, out, err);
    if (*correlate) return cmd_correlate(cfg, out, err);
    if (*heatmap) return cmd_heatmap(cfg, out, err);
    if (*synth) return cmd_synth(cfg, out, err);
    if (*synth_dataset) return cmd_synth_dataset(cfg, out, err);
    if (*validate) return cmd_validate(cfg, out, err);
  } catch (const ComputeError& e) {
    err << "computation error: " << e.what() << "\n";
    return kExitCompute;
  } catch (const Error& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitUsage;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace vadeval::cli
