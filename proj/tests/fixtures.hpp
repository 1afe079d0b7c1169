#pragma once

// Shared measure generators for the solver tests and the acceptance run.

#include "hyperbisect/testmap.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace fixtures {

using hyperbisect::testmap::DiscreteMeasure;

// Four uniform samples of unit disks whose centers are drawn in [0, 10]^2,
// at least 2.5 apart so the supports are disjoint.
inline std::vector<DiscreteMeasure> four_disks(std::uint64_t instance, std::size_t points = 200) {
  std::mt19937_64 rng(1000 + instance);
  std::uniform_real_distribution<double> u(0, 1), c(0, 10);
  std::vector<std::array<double, 2>> centers;
  while (centers.size() < 4) {
    const std::array<double, 2> z{c(rng), c(rng)};
    bool ok = true;
    for (const auto& o : centers) ok = ok && std::hypot(z[0] - o[0], z[1] - o[1]) > 2.5;
    if (ok) centers.push_back(z);
  }
  std::vector<DiscreteMeasure> ms;
  for (const auto& z : centers) {
    std::vector<std::vector<double>> pts;
    for (std::size_t p = 0; p < points; ++p) {
      const double r = std::sqrt(u(rng)), th = 2 * std::numbers::pi * u(rng);
      pts.push_back({z[0] + r * std::cos(th), z[1] + r * std::sin(th)});
    }
    ms.emplace_back(2, std::move(pts));
  }
  return ms;
}

// Three 1-D measures on [0,1], [10,11], [20,21]: two cut points cannot
// bisect all three.
inline std::vector<DiscreteMeasure> three_segments(std::size_t points = 50) {
  std::vector<DiscreteMeasure> ms;
  for (double start : {0.0, 10.0, 20.0}) {
    std::vector<std::vector<double>> pts;
    for (std::size_t i = 0; i < points; ++i) {
      pts.push_back({start + (static_cast<double>(i) + 0.5) / static_cast<double>(points)});
    }
    ms.emplace_back(1, std::move(pts));
  }
  return ms;
}

// Five disjoint arcs of the curve t -> (t, t(t-1)/2) in the plane; a pair of
// lines meets the curve at most four times, so one arc stays uncut.
inline std::vector<DiscreteMeasure> five_curve_arcs(std::size_t points = 60) {
  std::vector<DiscreteMeasure> ms;
  for (int r = 0; r < 5; ++r) {
    std::vector<std::vector<double>> pts;
    for (std::size_t i = 0; i < points; ++i) {
      const double t = 3.0 * r + 1 + (static_cast<double>(i) + 0.5) / static_cast<double>(points);
      pts.push_back({t, t * (t - 1) / 2});
    }
    ms.emplace_back(2, std::move(pts));
  }
  return ms;
}

}  // namespace fixtures
