#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "vadeval/classic_metrics.hpp"
#include "vadeval/error.hpp"
#include "vadeval/prob_metrics.hpp"

using namespace vadeval;

TEST_CASE("probabilistic labels are vote fractions") {
  Manifest m{fixture::video("a", 6, true), fixture::video("b", 3, false)};
  std::vector<AnnotationRound> rounds{{"r0", {{"a", {{0, 3}}}}},
                                      {"r1", {{"a", {{1, 4}}}}},
                                      {"r2", {{"a", {{2, 5}}}}}};
  auto p = make_prob_labels(rounds, m);
  CHECK(p[0].probs == std::vector<double>{1.0 / 3, 2.0 / 3, 1, 2.0 / 3, 1.0 / 3, 0});
  CHECK(p[1].probs == std::vector<double>{0, 0, 0});
  CHECK(is_hard(std::vector<double>{0, 1, 1}));
  CHECK_FALSE(is_hard(p[0].probs));
}

TEST_CASE("single round degenerates to the classic metrics") {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 100; ++it) {
    const std::size_t n = 2 + rng() % 80;
    auto s = fixture::tied_scores(rng, n, 1 + static_cast<int>(rng() % 9));
    auto y = fixture::hard_labels(rng, n, 0.4);
    CHECK(std::abs(prob_auc(s, y) - auc(s, y)) <= 1e-9);
    CHECK(std::abs(prob_ap(s, y) - ap(s, y)) <= 1e-9);
  }
}

TEST_CASE("best and worst classifiers hit the bounds") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 100; ++it) {
    const std::size_t n = 3 + rng() % 80;
    auto y = fixture::soft_labels(rng, n, 4);
    std::vector<double> worst(n);
    for (std::size_t i = 0; i < n; ++i) worst[i] = 1 - y[i];
    CHECK(prob_auc(y, y) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(prob_ap(y, y) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(prob_auc(worst, y)) <= 1e-9);
    CHECK(std::abs(prob_ap(worst, y)) <= 1e-9);
  }
}

TEST_CASE("raw ProbAUC area matches a weighted pair count") {
  std::mt19937_64 rng(9);
  for (int it = 0; it < 50; ++it) {
    const std::size_t n = 3 + rng() % 30;
    auto s = fixture::tied_scores(rng, n, 5);
    auto y = fixture::soft_labels(rng, n, 4);
    auto areas = prob_auc_areas(s, y);
    CHECK(areas.raw_area == doctest::Approx(oracle::mann_whitney_auc(s, y)).epsilon(1e-12));
    CHECK(areas.best_area == doctest::Approx(oracle::mann_whitney_auc(y, y)).epsilon(1e-12));
    std::vector<double> inv(n);
    for (std::size_t i = 0; i < n; ++i) inv[i] = 1 - y[i];
    CHECK(areas.worst_area == doctest::Approx(oracle::mann_whitney_auc(inv, y)).epsilon(1e-12));
    // The normalized gap splits into the two shaded regions.
    CHECK(areas.yellow_area() + areas.red_area() ==
          doctest::Approx(areas.best_area - areas.worst_area).epsilon(1e-12));
    CHECK(areas.yellow_area() >= -1e-12);
    CHECK(areas.red_area() >= -1e-12);
  }
}

TEST_CASE("worst PR area is zero for hard labels") {
  std::vector<double> y{0, 1, 1, 0, 0};
  std::vector<double> s{0.2, 0.9, 0.3, 0.4, 0.1};
  auto a = prob_ap_areas(s, y);
  CHECK(a.worst_area == 0.0);
  CHECK(a.best_area == 1.0);
  CHECK(a.ratio() == doctest::Approx(ap(s, y)));
}

TEST_CASE("bounding curves") {
  std::vector<double> y{0, 0.5, 1, 1};
  auto [best, worst] = best_worst_curves(y, CurveKind::roc);
  CHECK(trapezoid_area(best) > trapezoid_area(worst));
  CHECK_THROWS_AS(best_worst_curves(y, CurveKind::precision_larecall), ValidationError);
}

TEST_CASE("degenerate label sets") {
  std::vector<double> s{0.1, 0.2, 0.3};
  CHECK_THROWS_WITH_AS(prob_auc(s, std::vector<double>{0.5, 0.5, 0.5}),
                       doctest::Contains("degenerate label distribution"), ComputeError);
  CHECK_THROWS_AS(prob_ap(s, std::vector<double>{0, 0, 0}), ComputeError);
  CHECK_THROWS_AS(make_prob_labels({}, Manifest{}), ValidationError);
}

TEST_CASE("ProbAP stays in the unit interval") {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 200; ++it) {
    const std::size_t n = 3 + rng() % 30;
    auto s = fixture::tied_scores(rng, n, 3);
    auto y = fixture::soft_labels(rng, n, 2);
    const double v = prob_ap(s, y);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("raising a fully-abnormal frame never lowers ProbAUC") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 100; ++it) {
    const std::size_t n = 3 + rng() % 30;
    auto s = fixture::uniform(rng, n);
    auto y = fixture::soft_labels(rng, n, 4);
    const double before = prob_auc(s, y);
    s[0] = std::min(1.0, s[0] + 0.3);  // y[0] == 1
    CHECK(prob_auc(s, y) >= before - 1e-12);
  }
}

TEST_CASE("ratio equals yellow over yellow plus red") {
  std::vector<double> s{0.3, 0.7, 0.2, 0.9, 0.5}, y{0, 0.5, 0.25, 1, 0.75};
  auto a = prob_auc_areas(s, y);
  CHECK(a.ratio() == doctest::Approx(a.yellow_area() / (a.yellow_area() + a.red_area())));
  CHECK(prob_auc(s, y) == doctest::Approx(a.ratio()));
}
