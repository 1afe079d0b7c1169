#pragma once

// Numerical search for a k-element arrangement bisecting j discrete measures.
//
// The hard imbalance is piecewise constant in the arrangement, so the search
// minimizes a softened version
//
//   f_T(w) = sum_i ( sum_x weight(x) tanh(p_H(x) / T) / total_i )^2
//
// with Nelder-Mead, lowering T in stages, from several seeded random starts.
// A start succeeds only if the hard imbalance, recomputed with exact signs in
// the caller's coordinates, is within tolerance.

#include "hyperbisect/testmap.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <future>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

namespace hyperbisect::testmap {

struct SolverConfig {
  double tolerance = 1e-2;  // max relative imbalance accepted
  std::size_t max_restarts = 32;
  std::uint64_t seed = 0;
  std::vector<double> temperatures{1.0, 0.1, 0.01};  // multiples of the data diameter
  std::size_t evaluations_per_stage = 0;             // 0: 400 per unknown
  std::size_t polish_iterations = 4000;              // hard-sign local search after annealing
  std::size_t threads = 0;                           // 0: hardware concurrency
};

enum class SolveStatus { found, not_found };

struct SolveResult {
  SolveStatus status = SolveStatus::not_found;
  std::vector<Direction> directions;         // unit vectors in R^{d+1}
  std::vector<AffineHyperplane> hyperplanes;
  std::vector<double> imbalances;            // |phi_i| / total_i
  std::vector<double> boundary_mass;
  std::size_t restarts_used = 0;
  std::uint64_t seed = 0;

  double max_imbalance() const {
    return imbalances.empty() ? std::numeric_limits<double>::infinity()
                              : *std::max_element(imbalances.begin(), imbalances.end());
  }
};

/// max_i |phi_i| / total_i, recomputed with hard signs.
inline std::vector<double> relative_imbalances(std::span<const DiscreteMeasure> measures,
                                               std::span<const AffineHyperplane> hs) {
  auto eval = phi_with_diagnostics(measures, hs);
  std::vector<double> out;
  for (std::size_t i = 0; i < measures.size(); ++i) {
    out.push_back(std::abs(eval.values[i]) / measures[i].total());
  }
  return out;
}

namespace detail {

using Objective = std::function<double(const std::vector<double>&)>;

/// Plain Nelder-Mead with standard coefficients; returns the best vertex.
inline std::vector<double> nelder_mead(const Objective& f, std::vector<double> start, double step,
                                       std::size_t max_evals) {
  const std::size_t n = start.size();
  std::vector<std::vector<double>> simplex{start};
  for (std::size_t i = 0; i < n; ++i) {
    auto v = start;
    v[i] += step;
    simplex.push_back(std::move(v));
  }
  std::vector<double> values;
  for (const auto& v : simplex) values.push_back(f(v));
  std::size_t evals = simplex.size();

  std::vector<std::size_t> order(n + 1);
  while (evals < max_evals) {
    for (std::size_t i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
    const auto best = order.front(), worst = order.back(), second = order[n - 1];
    if (values[worst] - values[best] <= 1e-14 * (1 + std::abs(values[best]))) break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t c = 0; c < n; ++c) centroid[c] += simplex[i][c] / static_cast<double>(n);
    }
    auto along = [&](double t) {
      std::vector<double> p(n);
      for (std::size_t c = 0; c < n; ++c) p[c] = centroid[c] + t * (simplex[worst][c] - centroid[c]);
      return p;
    };
    auto reflected = along(-1.0);
    const double fr = f(reflected);
    ++evals;
    if (fr < values[best]) {
      auto expanded = along(-2.0);
      const double fe = f(expanded);
      ++evals;
      if (fe < fr) {
        simplex[worst] = std::move(expanded);
        values[worst] = fe;
      } else {
        simplex[worst] = std::move(reflected);
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      simplex[worst] = std::move(reflected);
      values[worst] = fr;
      continue;
    }
    auto contracted = fr < values[worst] ? along(-0.5) : along(0.5);
    const double fc = f(contracted);
    ++evals;
    if (fc < std::min(fr, values[worst])) {
      simplex[worst] = std::move(contracted);
      values[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t c = 0; c < n; ++c) {
        simplex[i][c] = simplex[best][c] + 0.5 * (simplex[i][c] - simplex[best][c]);
      }
      values[i] = f(simplex[i]);
      ++evals;
    }
  }
  const auto best = static_cast<std::size_t>(
      std::min_element(values.begin(), values.end()) - values.begin());
  return simplex[best];
}

// Measures rescaled to mean 0 and radius 1; flat copies for fast evaluation.
struct NormalizedProblem {
  std::size_t d = 0;
  std::vector<double> center;
  double scale = 1;
  std::vector<std::vector<double>> coords;  // per measure, point-major
  std::vector<std::vector<double>> weights;
  std::vector<double> totals;

  explicit NormalizedProblem(std::span<const DiscreteMeasure> measures) {
    d = measures.front().dim();
    center.assign(d, 0.0);
    std::size_t count = 0;
    for (const auto& m : measures) {
      for (const auto& x : m.points()) {
        for (std::size_t c = 0; c < d; ++c) center[c] += x[c];
        ++count;
      }
    }
    for (auto& c : center) c /= static_cast<double>(count);
    double radius = 0;
    for (const auto& m : measures) {
      for (const auto& x : m.points()) {
        double r2 = 0;
        for (std::size_t c = 0; c < d; ++c) r2 += (x[c] - center[c]) * (x[c] - center[c]);
        radius = std::max(radius, std::sqrt(r2));
      }
    }
    scale = radius > 0 ? radius : 1.0;
    for (const auto& m : measures) {
      std::vector<double> flat;
      for (const auto& x : m.points()) {
        for (std::size_t c = 0; c < d; ++c) flat.push_back((x[c] - center[c]) / scale);
      }
      coords.push_back(std::move(flat));
      weights.push_back(m.weights());
      totals.push_back(m.total());
    }
  }

  // Value of the product functional for raw (unnormalized) direction
  // parameters; each block of d+1 is scaled to unit length first.
  double soft_objective(const std::vector<double>& params, std::size_t k, double temperature) const {
    std::vector<double> w = params;
    for (std::size_t h = 0; h < k; ++h) {
      double n = 0;
      for (std::size_t c = 0; c <= d; ++c) n += w[h * (d + 1) + c] * w[h * (d + 1) + c];
      n = std::sqrt(n);
      if (n == 0) return std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c <= d; ++c) w[h * (d + 1) + c] /= n;
    }
    double total = 0;
    for (std::size_t i = 0; i < coords.size(); ++i) {
      double acc = 0;
      const std::size_t npts = weights[i].size();
      for (std::size_t p = 0; p < npts; ++p) {
        const double* x = &coords[i][p * d];
        double prod = 1;
        for (std::size_t h = 0; h < k; ++h) {
          const double* wh = &w[h * (d + 1)];
          double v = wh[d];
          for (std::size_t c = 0; c < d; ++c) v += wh[c] * x[c];
          prod *= v;
        }
        acc += weights[i][p] * std::tanh(prod / temperature);
      }
      acc /= totals[i];
      total += acc * acc;
    }
    return total;
  }

  // Sum of squared relative imbalances with exact signs.
  double hard_objective(const std::vector<double>& w, std::size_t k) const {
    double total = 0;
    for (std::size_t i = 0; i < coords.size(); ++i) {
      double acc = 0;
      const std::size_t npts = weights[i].size();
      for (std::size_t p = 0; p < npts; ++p) {
        const double* x = &coords[i][p * d];
        int s = 1;
        for (std::size_t h = 0; h < k && s != 0; ++h) {
          const double* wh = &w[h * (d + 1)];
          double v = wh[d];
          for (std::size_t c = 0; c < d; ++c) v += wh[c] * x[c];
          s = v == 0 ? 0 : (v < 0 ? -s : s);
        }
        acc += s * weights[i][p];
      }
      acc /= totals[i];
      total += acc * acc;
    }
    return total;
  }

  // Random local moves on one hyperplane at a time, accepted when the hard
  // objective does not get worse; the step shrinks on long failure streaks.
  std::vector<double> polish_hard(std::vector<double> w, std::size_t k, std::mt19937_64& rng,
                                  std::size_t iterations) const {
    std::normal_distribution<double> gauss;
    std::uniform_int_distribution<std::size_t> pick(0, k - 1);
    double best = hard_objective(w, k);
    double step = 0.02;
    std::size_t misses = 0;
    for (std::size_t it = 0; it < iterations && best > 0; ++it) {
      auto trial = w;
      const std::size_t h = pick(rng);
      for (std::size_t c = 0; c <= d; ++c) trial[h * (d + 1) + c] += step * gauss(rng);
      const double v = hard_objective(trial, k);
      if (v <= best) {
        if (v < best) misses = 0;
        best = v;
        w = std::move(trial);
      } else if (++misses > 200) {
        step = std::max(step * 0.5, 1e-6);
        misses = 0;
      }
    }
    return w;
  }

  // Back to the caller's coordinates: p(y) = <y, u> + c with
  // y = (x - center) / scale.
  AffineHyperplane denormalize(std::span<const double> w) const {
    AffineHyperplane h;
    double shift = 0;
    for (std::size_t c = 0; c < d; ++c) {
      h.normal.push_back(w[c] / scale);
      shift += w[c] * center[c] / scale;
    }
    h.offset = shift - w[d];
    return h;
  }
};

struct Attempt {
  bool found = false;
  std::vector<AffineHyperplane> hyperplanes;
  std::vector<double> imbalances;
};

inline Attempt run_restart(std::span<const DiscreteMeasure> measures, const NormalizedProblem& prob,
                           std::size_t k, const SolverConfig& cfg, std::size_t restart) {
  const std::size_t d = prob.d;
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(restart), 0x6879u};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> offset(-0.6, 0.6);

  std::vector<double> params;
  for (std::size_t h = 0; h < k; ++h) {
    std::vector<double> u(d);
    double n = 0;
    do {
      n = 0;
      for (auto& x : u) {
        x = gauss(rng);
        n += x * x;
      }
    } while (n == 0);
    n = std::sqrt(n);
    for (auto& x : u) params.push_back(x / n);
    params.push_back(offset(rng));
  }

  const double diameter = 2.0;  // normalized data lies in the unit ball
  const std::size_t evals =
      cfg.evaluations_per_stage ? cfg.evaluations_per_stage : 400 * params.size();
  double step = 0.3;
  for (double t : cfg.temperatures) {
    const double temperature = t * diameter;
    // Nelder-Mead stalls on collapsed simplices; rebuild it a few times.
    for (int round = 0; round < 3; ++round) {
      params = nelder_mead([&](const auto& p) { return prob.soft_objective(p, k, temperature); },
                           params, step, evals);
    }
    step *= 0.3;
  }
  params = prob.polish_hard(params, k, rng, cfg.polish_iterations);

  Attempt out;
  for (std::size_t h = 0; h < k; ++h) {
    std::span<const double> w(params.data() + h * (d + 1), d + 1);
    out.hyperplanes.push_back(prob.denormalize(w));
  }
  for (const auto& h : out.hyperplanes) {
    if (std::all_of(h.normal.begin(), h.normal.end(), [](double x) { return x == 0.0; })) return out;
  }
  out.imbalances = relative_imbalances(measures, out.hyperplanes);
  out.found = *std::max_element(out.imbalances.begin(), out.imbalances.end()) <= cfg.tolerance;
  return out;
}

// One measure on the line, one cut: scan the sorted atoms and the gaps
// between them for the cut with the smallest imbalance.
inline AffineHyperplane weighted_median_cut(const DiscreteMeasure& m) {
  std::vector<std::pair<double, double>> atoms;
  for (std::size_t i = 0; i < m.size(); ++i) atoms.emplace_back(m.points()[i][0], m.weights()[i]);
  std::sort(atoms.begin(), atoms.end());
  double best_cut = atoms.front().first - 1, best = m.total(), below = 0;
  for (std::size_t i = 0; i < atoms.size();) {
    std::size_t e = i;
    double at = 0;
    while (e < atoms.size() && atoms[e].first == atoms[i].first) at += atoms[e++].second;
    // cut on the atom, then in the gap after it
    const double above = m.total() - below - at;
    if (std::abs(above - below) < best) {
      best = std::abs(above - below);
      best_cut = atoms[i].first;
    }
    below += at;
    const double next = e < atoms.size() ? atoms[e].first : atoms[i].first + 2;
    if (std::abs(m.total() - 2 * below) < best) {
      best = std::abs(m.total() - 2 * below);
      best_cut = atoms[i].first + (next - atoms[i].first) / 2;
    }
    i = e;
  }
  return AffineHyperplane{{1.0}, best_cut};
}

}  // namespace detail

/// Searches for k hyperplanes in R^d bisecting every measure to within
/// cfg.tolerance (relative). Restarts run in parallel batches; the lowest
/// successful restart index wins, so the result does not depend on threads.
inline SolveResult solve_bisection(std::span<const DiscreteMeasure> measures, std::size_t k,
                                   std::size_t d, const SolverConfig& cfg = {}) {
  if (measures.empty()) throw std::invalid_argument("solver needs at least one measure");
  if (k < 1 || d < 1) throw std::invalid_argument("solver needs k, d >= 1");
  for (const auto& m : measures) {
    if (m.dim() != d) throw std::invalid_argument("measure dimension differs from d");
    if (!(m.total() > 0)) throw std::invalid_argument("measure has zero total mass");
  }
  if (cfg.temperatures.empty()) throw std::invalid_argument("solver needs at least one temperature");

  SolveResult result;
  result.seed = cfg.seed;
  if (d == 1 && k == 1 && measures.size() == 1) {
    result.status = SolveStatus::found;
    result.hyperplanes = {detail::weighted_median_cut(measures.front())};
    result.restarts_used = 1;
  }

  const detail::NormalizedProblem prob(measures);
  std::size_t threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());

  for (std::size_t first = 0; first < cfg.max_restarts && result.status != SolveStatus::found;
       first += threads) {
    const std::size_t last = std::min(cfg.max_restarts, first + threads);
    std::vector<std::future<detail::Attempt>> batch;
    for (std::size_t r = first; r < last; ++r) {
      batch.push_back(std::async(threads > 1 ? std::launch::async : std::launch::deferred,
                                 [&, r] { return detail::run_restart(measures, prob, k, cfg, r); }));
    }
    for (std::size_t r = first; r < last; ++r) {
      auto attempt = batch[r - first].get();
      if (!attempt.found) continue;
      result.status = SolveStatus::found;
      result.hyperplanes = std::move(attempt.hyperplanes);
      result.restarts_used = r + 1;
      break;
    }
    if (result.status == SolveStatus::found) break;
  }
  if (result.status == SolveStatus::not_found) {
    result.restarts_used = cfg.max_restarts;
    return result;
  }
  // Re-verify with hard signs, independently of the soft objective.
  auto eval = phi_with_diagnostics(measures, std::span<const AffineHyperplane>(result.hyperplanes));
  for (std::size_t i = 0; i < measures.size(); ++i) {
    result.imbalances.push_back(std::abs(eval.values[i]) / measures[i].total());
  }
  result.boundary_mass = std::move(eval.boundary_mass);
  for (const auto& h : result.hyperplanes) result.directions.push_back(hyperplane_to_sphere(h));
  if (result.max_imbalance() > cfg.tolerance) result.status = SolveStatus::not_found;
  return result;
}

}  // namespace hyperbisect::testmap
