#include <doctest.h>

#include <algorithm>

#include "vadeval/error.hpp"
#include "vadeval/synth.hpp"

using namespace vadeval;

TEST_CASE("lcg reference values") {
  Lcg64 g(0);
  CHECK(g.next() == 1442695040888963407ULL);
  CHECK(g.next() == 1442695040888963407ULL * 6364136223846793005ULL + 1442695040888963407ULL);
  Lcg64 h(42);
  for (int i = 0; i < 1000; ++i) {
    const double u = h.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const auto k = h.between(-3, 3);
    CHECK(k >= -3);
    CHECK(k <= 3);
  }
  CHECK(fnv1a64("") == 14695981039346656037ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("traces are reproducible and order-free") {
  VideoMeta v{"clip", 200, 30, Normality::abnormal, {}};
  EventInterval iv{"clip", 50, 150};
  DetectorProfile p;
  p.seed = 9;
  CHECK(synthesize_video(p, v, &iv) == synthesize_video(p, v, &iv));
  p.seed = 10;
  auto other = synthesize_video(p, v, &iv);
  p.seed = 9;
  CHECK_FALSE(other == synthesize_video(p, v, &iv));
}

TEST_CASE("block placement follows onset lag") {
  VideoMeta v{"clip", 200, 30, Normality::abnormal, {}};
  EventInterval iv{"clip", 50, 150};
  DetectorProfile early;
  early.coverage = 0.3;
  auto lag1 = early;
  lag1.onset_lag = 1.0;
  auto e = synthesize_video(early, v, &iv).scores;
  auto l = synthesize_video(lag1, v, &iv).scores;
  CHECK(e[50] > 0.8);
  CHECK(e[120] < 0.1);
  CHECK(l[50] < 0.1);
  CHECK(l[149] > 0.8);
  for (int f = 0; f < 50; ++f) CHECK(e[f] == l[f]);
  // same multiset inside the interval
  std::vector<double> a(e.begin() + 50, e.begin() + 150), b(l.begin() + 50, l.begin() + 150);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  CHECK(a == b);
}

TEST_CASE("normal videos are background only") {
  VideoMeta v{"n", 100, 30, Normality::normal, {}};
  DetectorProfile p;
  auto t = synthesize_video(p, v, nullptr);
  CHECK(*std::max_element(t.scores.begin(), t.scores.end()) < p.background_noise);
}

TEST_CASE("profile validation") {
  DetectorProfile p;
  p.onset_lag = 1.5;
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p = {};
  p.peak_score = 0.05;
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p = {};
  p.coverage = 0.0;
  CHECK_THROWS_AS(p.validate(), ValidationError);
}

TEST_CASE("synthetic datasets") {
  DatasetShape shape;
  shape.videos = 50;
  auto ds = synthesize_dataset(shape);
  CHECK(ds.manifest.size() == 50);
  CHECK(ds.manifest[0].abnormal());
  CHECK_FALSE(ds.manifest[1].abnormal());
  CHECK(ds.rounds.size() == 4);
  std::size_t abnormal = 0;
  for (const auto& v : ds.manifest) {
    CHECK(v.frame_count >= shape.min_frames);
    CHECK(v.frame_count <= shape.max_frames);
    abnormal += v.abnormal();
  }
  CHECK(ds.events.size() == abnormal);
  for (const auto& e : ds.events) {
    const auto r0 = ds.rounds[0].of(e.video_id);
    REQUIRE(r0.size() == 1);
    CHECK(r0[0] == FrameInterval{e.t_start, e.t_end});
    for (const auto& r : ds.rounds) CHECK(r.of(e.video_id).size() == 1);
  }
  auto again = synthesize_dataset(shape);
  CHECK(again.manifest == ds.manifest);
  CHECK(again.rounds == ds.rounds);
  shape.videos = 0;
  CHECK_THROWS_AS(synthesize_dataset(shape), ValidationError);
}

TEST_CASE("uniform scores") {
  Manifest m{{"a", 1000, 30, Normality::normal, {}}};
  auto t = uniform_random_scores(m, 3);
  double mean = 0;
  for (double s : t[0].scores) mean += s / 1000;
  CHECK(mean == doctest::Approx(0.5).epsilon(0.1));
  CHECK(uniform_random_scores(m, 3) == t);
}
