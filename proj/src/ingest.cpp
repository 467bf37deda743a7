#include "vadeval/ingest.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <sstream>

#include "vadeval/error.hpp"

namespace vadeval {

using json = nlohmann::json;

namespace {

const std::string kManifestHeader = "video_id,frame_count,fps,normality,category";

// Splits into lines, dropping a trailing '\r'. Line numbers are index + 1.
std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = nl + 1;
  }
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    auto comma = line.find(',', pos);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(pos));
      break;
    }
    fields.push_back(line.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return fields;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool blank(std::string_view line) { return trim(line).empty(); }

template <typename T>
std::optional<T> parse_number(std::string_view s) {
  s = trim(s);
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

// Real parse that also accepts inf / nan spellings written by format_real.
std::optional<double> parse_real(std::string_view s) {
  s = trim(s);
  if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  return parse_number<double>(s);
}

std::size_t line_of_byte(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

json parse_json(std::string_view text, std::size_t line_offset = 0) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto line = line_offset ? line_offset : line_of_byte(text, e.byte ? e.byte - 1 : 0);
    throw ParseError(std::string("malformed JSON: ") + e.what(), line);
  }
}

json real_json(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round_real(x);
}

json optional_json(const std::optional<double>& x) { return x ? real_json(*x) : json(nullptr); }

std::optional<double> optional_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

std::int64_t frame_value(const json& v, const std::string& where) {
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::floor(d) == d) return static_cast<std::int64_t>(d);
  }
  throw ParseError("frame boundary must be an integer", where);
}

}  // namespace

TimeUnit parse_time_unit(std::string_view s) {
  if (s == "frames") return TimeUnit::frames;
  if (s == "seconds") return TimeUnit::seconds;
  throw ParseError("time_unit must be \"frames\" or \"seconds\"", "time_unit");
}

std::string_view to_string(TimeUnit u) { return u == TimeUnit::frames ? "frames" : "seconds"; }

std::string format_real(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

double round_real(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(format_real(x).c_str(), nullptr);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 computation failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0xf]);
  }
  return hex;
}

FileDigest digest_file(const std::filesystem::path& path, std::int64_t record_count) {
  return {path.string(), sha256_hex(read_file(path)), record_count};
}

// ---------------------------------------------------------------------------
// Manifest

Manifest parse_manifest(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty() || trim(lines[0]) != kManifestHeader)
    throw ParseError("manifest header must be '" + kManifestHeader + "'", 1);
  Manifest out;
  std::map<std::string, std::size_t> seen;
  for (std::size_t n = 1; n < lines.size(); ++n) {
    const auto line_no = n + 1;
    if (blank(lines[n])) continue;
    const auto fields = split_fields(lines[n]);
    if (fields.size() != 5)
      throw ParseError("expected 5 fields, found " + std::to_string(fields.size()), line_no);
    VideoMeta v;
    v.video_id = std::string(trim(fields[0]));
    if (v.video_id.empty()) throw ParseError("empty video_id", line_no, 1);
    auto frames = parse_number<std::int64_t>(fields[1]);
    if (!frames) throw ParseError("frame_count is not an integer", line_no, 2);
    if (*frames < 1) throw ParseError("frame_count must be positive", line_no, 2);
    v.frame_count = *frames;
    auto fps = parse_number<double>(fields[2]);
    if (!fps) throw ParseError("fps is not a number", line_no, 3);
    if (!(*fps > 0.0) || !std::isfinite(*fps)) throw ParseError("fps must be positive", line_no, 3);
    v.fps = *fps;
    const auto normality = trim(fields[3]);
    if (normality == "abnormal")
      v.normality = Normality::abnormal;
    else if (normality == "normal")
      v.normality = Normality::normal;
    else
      throw ParseError("normality must be 'normal' or 'abnormal'", line_no, 4);
    const auto category = trim(fields[4]);
    if (!category.empty()) v.category = std::string(category);
    if (auto [it, inserted] = seen.emplace(v.video_id, line_no); !inserted)
      throw ParseError("duplicate video id '" + v.video_id + "' (first on line " +
                           std::to_string(it->second) + ")",
                       line_no, 1);
    out.push_back(std::move(v));
  }
  return out;
}

Manifest load_manifest(const std::filesystem::path& path) { return parse_manifest(read_file(path)); }

std::string manifest_to_csv(const Manifest& manifest) {
  std::string out = kManifestHeader + "\n";
  for (const auto& v : manifest) {
    out += v.video_id + "," + std::to_string(v.frame_count) + "," + format_real(v.fps) + "," +
           std::string(to_string(v.normality)) + "," + v.category.value_or("") + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Annotations

AnnotationSet parse_annotations(std::string_view text, const Manifest& manifest,
                                std::optional<TimeUnit> expected) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("annotations must be a JSON object", 1);
  AnnotationSet set;
  set.time_unit = expected.value_or(TimeUnit::frames);
  if (doc.contains("time_unit")) {
    if (!doc["time_unit"].is_string()) throw ParseError("time_unit must be a string", "time_unit");
    const auto unit = parse_time_unit(doc["time_unit"].get<std::string>());
    if (expected && unit != *expected)
      throw ParseError("time_unit '" + std::string(to_string(unit)) + "' differs from requested '" +
                           std::string(to_string(*expected)) + "'",
                       "time_unit");
    set.time_unit = unit;
  }
  if (!doc.contains("rounds") || !doc["rounds"].is_array())
    throw ParseError("annotations need a \"rounds\" array", "rounds");

  const auto index = index_by_id(manifest);
  std::set<std::string> round_ids;
  std::size_t r = 0;
  for (const auto& jr : doc["rounds"]) {
    const std::string where_round = "round " + std::to_string(r);
    if (!jr.is_object() || !jr.contains("round_id") || !jr["round_id"].is_string())
      throw ParseError("round needs a string \"round_id\"", where_round);
    AnnotationRound round;
    round.round_id = jr["round_id"].get<std::string>();
    if (!round_ids.insert(round.round_id).second)
      throw ParseError("duplicate round_id '" + round.round_id + "'", where_round);
    const json videos = jr.value("videos", json::object());
    if (!videos.is_object()) throw ParseError("\"videos\" must be an object", where_round);

    for (const auto& [id, jlist] : videos.items()) {
      const std::string where_video = where_round + " '" + round.round_id + "', video '" + id + "'";
      auto it = index.find(id);
      if (it == index.end()) throw ParseError("unknown video id '" + id + "'", where_video);
      const auto& meta = manifest[it->second];
      if (!jlist.is_array()) throw ParseError("intervals must be an array", where_video);

      std::vector<FrameInterval> list;
      for (std::size_t k = 0; k < jlist.size(); ++k) {
        const std::string where = where_video + ", interval " + std::to_string(k);
        const auto& jiv = jlist[k];
        if (!jiv.is_array() || jiv.size() != 2 || !jiv[0].is_number() || !jiv[1].is_number())
          throw ParseError("interval must be a [start, end] pair", where);
        FrameInterval iv;
        if (set.time_unit == TimeUnit::seconds) {
          iv.start = static_cast<std::int64_t>(std::round(jiv[0].get<double>() * meta.fps));
          iv.end = static_cast<std::int64_t>(std::round(jiv[1].get<double>() * meta.fps));
        } else {
          iv.start = frame_value(jiv[0], where);
          iv.end = frame_value(jiv[1], where);
        }
        if (iv.end <= iv.start) throw ParseError("empty interval", where);
        list.push_back(iv);
      }

      std::sort(list.begin(), list.end(),
                [](const FrameInterval& a, const FrameInterval& b) { return a.start < b.start; });
      std::vector<FrameInterval> merged;
      for (const auto& iv : list) {
        if (!merged.empty() && iv.start <= merged.back().end) {
          set.warnings.push_back(where_video + ": merged overlapping intervals [" +
                                 std::to_string(merged.back().start) + "," +
                                 std::to_string(merged.back().end) + ") and [" +
                                 std::to_string(iv.start) + "," + std::to_string(iv.end) + ")");
          merged.back().end = std::max(merged.back().end, iv.end);
        } else {
          merged.push_back(iv);
        }
      }
      if (!merged.empty()) round.intervals[id] = std::move(merged);
    }
    set.rounds.push_back(std::move(round));
    ++r;
  }
  return set;
}

AnnotationSet load_annotations(const std::filesystem::path& path, const Manifest& manifest,
                               std::optional<TimeUnit> expected) {
  return parse_annotations(read_file(path), manifest, expected);
}

std::string annotations_to_json(std::span<const AnnotationRound> rounds) {
  json doc;
  doc["time_unit"] = "frames";
  doc["rounds"] = json::array();
  for (const auto& r : rounds) {
    json videos = json::object();
    for (const auto& [id, list] : r.intervals) {
      json jl = json::array();
      for (const auto& iv : list) jl.push_back({iv.start, iv.end});
      videos[id] = std::move(jl);
    }
    doc["rounds"].push_back({{"round_id", r.round_id}, {"videos", std::move(videos)}});
  }
  return doc.dump(1) + "\n";
}

// ---------------------------------------------------------------------------
// Predictions

std::vector<FrameScoreTrace> parse_predictions(std::string_view text, const Manifest& manifest,
                                               const std::set<std::string>& ignored) {
  const auto index = index_by_id(manifest);
  std::vector<std::optional<FrameScoreTrace>> slots(manifest.size());
  const auto lines = split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const auto line_no = n + 1;
    if (blank(lines[n])) continue;
    const json rec = parse_json(lines[n], line_no);
    if (!rec.is_object() || !rec.contains("video_id") || !rec["video_id"].is_string() ||
        !rec.contains("scores") || !rec["scores"].is_array())
      throw ParseError("record needs \"video_id\" (string) and \"scores\" (array)", line_no);
    auto id = rec["video_id"].get<std::string>();
    if (ignored.contains(id)) continue;
    auto it = index.find(id);
    if (it == index.end()) throw ParseError("unknown video id '" + id + "'", line_no);
    if (slots[it->second]) throw ParseError("duplicate record for '" + id + "'", line_no);

    const auto& js = rec["scores"];
    const auto& meta = manifest[it->second];
    if (static_cast<std::int64_t>(js.size()) != meta.frame_count)
      throw ParseError("length mismatch for '" + id + "': " + std::to_string(js.size()) +
                           " scores, manifest frame_count " + std::to_string(meta.frame_count),
                       line_no);
    FrameScoreTrace trace{std::move(id), {}};
    trace.scores.reserve(js.size());
    for (std::size_t f = 0; f < js.size(); ++f) {
      if (!js[f].is_number())
        throw ParseError("score is not a number in '" + trace.video_id + "' at frame " +
                             std::to_string(f),
                         line_no);
      const double s = js[f].get<double>();
      if (!(s >= 0.0 && s <= 1.0))
        throw ParseError("score out of range in '" + trace.video_id + "' at frame " +
                             std::to_string(f) + ": " + format_real(s),
                         line_no);
      trace.scores.push_back(s);
    }
    slots[it->second] = std::move(trace);
  }

  std::string missing;
  for (std::size_t j = 0; j < manifest.size(); ++j)
    if (!slots[j]) missing += (missing.empty() ? "" : ", ") + manifest[j].video_id;
  if (!missing.empty()) throw ValidationError("predictions missing videos: " + missing);

  std::vector<FrameScoreTrace> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::vector<FrameScoreTrace> load_predictions(const std::filesystem::path& path,
                                              const Manifest& manifest,
                                              const std::set<std::string>& ignored) {
  return parse_predictions(read_file(path), manifest, ignored);
}

std::string predictions_to_jsonl(std::span<const FrameScoreTrace> traces) {
  std::string out;
  for (const auto& t : traces) {
    json rec;
    rec["video_id"] = t.video_id;
    rec["scores"] = t.scores;
    out += rec.dump();
    out += '\n';
  }
  return out;
}

void write_predictions(std::span<const FrameScoreTrace> traces, const std::filesystem::path& path) {
  write_file(path, predictions_to_jsonl(traces));
}

// ---------------------------------------------------------------------------
// Reports and curves

std::string report_to_json(const MetricReport& report) {
  json doc;
  doc["auc"] = optional_json(report.auc);
  doc["ap"] = optional_json(report.ap);
  doc["prob_auc"] = optional_json(report.prob_auc);
  doc["prob_ap"] = optional_json(report.prob_ap);
  doc["laap"] = optional_json(report.laap);
  json far = json::object();
  for (const auto& [tau, v] : report.far) far[format_real(tau)] = real_json(v);
  doc["far"] = std::move(far);

  json params;
  params["phi"] = report.params.phi;
  params["alpha"] = real_json(report.params.alpha);
  params["beta"] = real_json(report.params.beta);
  json thresholds = json::array();
  for (double t : report.far_thresholds) thresholds.push_back(real_json(t));
  params["far_thresholds"] = std::move(thresholds);
  params["excluded_categories"] = report.excluded_categories;
  params["reference_round"] = report.reference_round;
  doc["params"] = std::move(params);

  doc["skipped"] = report.skipped;
  doc["counts"] = report.counts;
  json prov = json::array();
  for (const auto& d : report.provenance)
    prov.push_back({{"path", d.path}, {"sha256", d.sha256}, {"record_count", d.record_count}});
  doc["provenance"] = std::move(prov);
  return doc.dump(2) + "\n";
}

MetricReport parse_report(std::string_view text) {
  const json doc = parse_json(text);
  MetricReport r;
  try {
    r.auc = optional_from(doc, "auc");
    r.ap = optional_from(doc, "ap");
    r.prob_auc = optional_from(doc, "prob_auc");
    r.prob_ap = optional_from(doc, "prob_ap");
    r.laap = optional_from(doc, "laap");
    for (const auto& [key, v] : doc.at("far").items()) {
      auto tau = parse_real(key);
      if (!tau) throw ParseError("far threshold key is not a number", "far");
      r.far[*tau] = v.get<double>();
    }
    const auto& p = doc.at("params");
    r.params.phi = p.at("phi").get<std::int64_t>();
    r.params.alpha = p.at("alpha").get<double>();
    r.params.beta = p.at("beta").get<double>();
    r.far_thresholds = p.at("far_thresholds").get<std::vector<double>>();
    r.excluded_categories = p.at("excluded_categories").get<std::vector<std::string>>();
    r.reference_round = p.at("reference_round").get<std::int64_t>();
    r.skipped = doc.at("skipped").get<std::map<std::string, std::string>>();
    r.counts = doc.at("counts").get<std::map<std::string, std::int64_t>>();
    for (const auto& d : doc.at("provenance"))
      r.provenance.push_back({d.at("path").get<std::string>(), d.at("sha256").get<std::string>(),
                              d.at("record_count").get<std::int64_t>()});
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what(), "report");
  }
  return r;
}

void write_report(const MetricReport& report, const std::filesystem::path& path) {
  write_file(path, report_to_json(report));
}

MetricReport load_report(const std::filesystem::path& path) { return parse_report(read_file(path)); }

std::string curve_to_csv(const Curve& curve) {
  std::string out = "x,y,tau\n";
  for (const auto& p : curve.points)
    out += format_real(p.x) + "," + format_real(p.y) + "," + format_real(p.tau) + "\n";
  return out;
}

Curve parse_curve(std::string_view text, CurveKind kind) {
  const auto lines = split_lines(text);
  if (lines.empty() || trim(lines[0]) != "x,y,tau") throw ParseError("curve header must be 'x,y,tau'", 1);
  Curve c{kind, {}};
  for (std::size_t n = 1; n < lines.size(); ++n) {
    if (blank(lines[n])) continue;
    const auto f = split_fields(lines[n]);
    if (f.size() != 3) throw ParseError("expected 3 fields", n + 1);
    CurvePoint p;
    double* dst[] = {&p.x, &p.y, &p.tau};
    for (std::size_t k = 0; k < 3; ++k) {
      auto v = parse_real(f[k]);
      if (!v) throw ParseError("not a number", n + 1, k + 1);
      *dst[k] = *v;
    }
    c.points.push_back(p);
  }
  return c;
}

void write_curve(const Curve& curve, const std::filesystem::path& path) {
  write_file(path, curve_to_csv(curve));
}

Curve load_curve(const std::filesystem::path& path, CurveKind kind) {
  return parse_curve(read_file(path), kind);
}

std::string prob_curves_to_csv(const Curve& raw, const Curve& best, const Curve& worst) {
  std::string out = "series,x,y,tau\n";
  auto emit = [&out](const char* name, const Curve& c) {
    for (const auto& p : c.points)
      out += std::string(name) + "," + format_real(p.x) + "," + format_real(p.y) + "," +
             format_real(p.tau) + "\n";
  };
  emit("raw", raw);
  emit("best", best);
  emit("worst", worst);
  return out;
}

std::string agreement_to_json(const AgreementReport& report) {
  json doc;
  doc["round_ids"] = report.round_ids;
  // One entry per unordered pair of rounds.
  json pairs = json::array();
  for (std::size_t a = 0; a < report.pairwise_kappa.size(); ++a)
    for (std::size_t b = a + 1; b < report.pairwise_kappa.size(); ++b)
      pairs.push_back({{"rounds", {report.round_ids[a], report.round_ids[b]}},
                       {"kappa", real_json(report.pairwise_kappa[a][b])}});
  doc["pairwise_kappa"] = std::move(pairs);
  doc["fleiss_kappa"] = real_json(report.fleiss_kappa);
  doc["frames"] = report.frames;
  doc["median_start_std"] = real_json(report.boundaries.median_start_std);
  doc["median_duration_std"] = real_json(report.boundaries.median_duration_std);
  doc["median_end_std"] = real_json(report.boundaries.median_end_std);
  doc["videos_in_boundary_stats"] = report.boundaries.videos.size();
  doc["warnings"] = report.boundaries.warnings;
  if (report.categories) {
    const auto& c = *report.categories;
    json rows = json::object();
    for (std::size_t r = 0; r < c.rows.size(); ++r)
      rows[c.rows[r]] = {{"same", real_json(c.same[r])},
                         {"others", real_json(c.others[r])},
                         {"normal", real_json(c.normal[r])}};
    doc["category_confusion"] = std::move(rows);
  }
  return doc.dump(2) + "\n";
}

std::string deviations_to_csv(const BoundaryStats& stats) {
  std::string out = "video_id,rounds,start_std,duration_std,end_std\n";
  for (const auto& v : stats.videos)
    out += v.video_id + "," + std::to_string(v.rounds_used) + "," + format_real(v.start_std) + "," +
           format_real(v.duration_std) + "," + format_real(v.end_std) + "\n";
  return out;
}

std::string category_confusion_to_csv(const CategoryConfusion& c) {
  std::string out = "original,same,others,normal";
  for (const auto& col : c.columns) out += "," + col;
  out += "\n";
  for (std::size_t r = 0; r < c.rows.size(); ++r) {
    out += c.rows[r] + "," + format_real(c.same[r]) + "," + format_real(c.others[r]) + "," +
           format_real(c.normal[r]);
    for (auto n : c.counts[r]) out += "," + std::to_string(n);
    out += "\n";
  }
  return out;
}

std::string histogram_to_csv(const Histogram& h) {
  std::string out = "bin_left,bin_right,density\n";
  for (std::size_t b = 0; b < h.density.size(); ++b)
    out += format_real(h.edges[b]) + "," + format_real(h.edges[b + 1]) + "," +
           format_real(h.density[b]) + "\n";
  return out;
}

std::map<std::string, std::string> load_category_map(const std::filesystem::path& path) {
  const auto text = read_file(path);
  const auto lines = split_lines(text);
  if (lines.empty() || trim(lines[0]) != "video_id,category")
    throw ParseError("category map header must be 'video_id,category'", 1);
  std::map<std::string, std::string> out;
  for (std::size_t n = 1; n < lines.size(); ++n) {
    if (blank(lines[n])) continue;
    const auto f = split_fields(lines[n]);
    if (f.size() != 2) throw ParseError("expected 2 fields", n + 1);
    if (!out.emplace(std::string(trim(f[0])), std::string(trim(f[1]))).second)
      throw ParseError("duplicate video id '" + std::string(trim(f[0])) + "'", n + 1, 1);
  }
  return out;
}

Table parse_table(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty() || blank(lines[0])) throw ParseError("table needs a header row", 1);
  Table t;
  for (auto h : split_fields(lines[0])) t.header.emplace_back(trim(h));
  t.columns.resize(t.header.size());
  for (std::size_t n = 1; n < lines.size(); ++n) {
    if (blank(lines[n])) continue;
    const auto f = split_fields(lines[n]);
    if (f.size() != t.header.size())
      throw ParseError("expected " + std::to_string(t.header.size()) + " fields", n + 1);
    for (std::size_t k = 0; k < f.size(); ++k) {
      auto v = parse_real(f[k]);
      if (!v) throw ParseError("not a number", n + 1, k + 1);
      t.columns[k].push_back(*v);
    }
  }
  return t;
}

Table load_table(const std::filesystem::path& path) { return parse_table(read_file(path)); }

}  // namespace vadeval
