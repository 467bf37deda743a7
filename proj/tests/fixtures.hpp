#pragma once

#include <random>
#include <string>
#include <vector>

#include "vadeval/model.hpp"

namespace fixture {

inline vadeval::VideoMeta video(std::string id, std::int64_t frames, bool abnormal,
                                std::string category = "", double fps = 30.0) {
  vadeval::VideoMeta v{std::move(id), frames, fps,
                       abnormal ? vadeval::Normality::abnormal : vadeval::Normality::normal, {}};
  if (!category.empty()) v.category = std::move(category);
  return v;
}

// Scores drawn from a small grid so ties are common.
inline std::vector<double> tied_scores(std::mt19937_64& rng, std::size_t n, int levels) {
  std::uniform_int_distribution<int> d(0, levels);
  std::vector<double> s(n);
  for (auto& x : s) x = static_cast<double>(d(rng)) / levels;
  return s;
}

inline std::vector<double> uniform(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> d(0.0, 1.0);
  std::vector<double> s(n);
  for (auto& x : s) x = d(rng);
  return s;
}

// Hard labels with at least one of each class.
inline std::vector<double> hard_labels(std::mt19937_64& rng, std::size_t n, double p) {
  std::bernoulli_distribution d(p);
  std::vector<double> y(n);
  for (auto& v : y) v = d(rng) ? 1.0 : 0.0;
  y[0] = 1.0;
  if (n > 1) y[1] = 0.0;
  return y;
}

// Soft labels k / rounds with both extremes and one fractional frame
// present (n >= 3, rounds >= 2).
inline std::vector<double> soft_labels(std::mt19937_64& rng, std::size_t n, int rounds) {
  std::uniform_int_distribution<int> d(0, rounds);
  std::vector<double> y(n);
  for (auto& v : y) v = static_cast<double>(d(rng)) / rounds;
  y[0] = 1.0;
  y[1] = 0.0;
  y[2] = 1.0 / rounds;
  return y;
}

}  // namespace fixture
