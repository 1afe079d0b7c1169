#pragma once

// Test maps for discrete measures.
//
// An oriented affine hyperplane in R^d is a unit vector w = (u, c) in
// R^{d+1}: lifting x to (x, 1) gives the functional p(x) = <x, u> + c. The
// poles u = 0 are hyperplanes at infinity. For a k-tuple of such vectors and
// j measures,
//
//   Phi(w_1..w_k)_i = mu_i{p_H > 0} - mu_i{p_H < 0},   p_H = p_1 * ... * p_k,
//
// vanishes exactly when the arrangement bisects every measure, and on the
// join, Psi(sum lambda_i w_i) = (lambda_i - 1/k)_i (+) (prod lambda_i) Phi(w).
// Both are equivariant under signed permutations (beta_1..beta_k) x| tau.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hyperbisect::testmap {

inline constexpr double kUnitTolerance = 1e-9;

/// Weighted point cloud in R^d; weights strictly positive.
class DiscreteMeasure {
 public:
  DiscreteMeasure(std::size_t dim, std::vector<std::vector<double>> points, std::vector<double> weights)
      : dim_(dim), points_(std::move(points)), weights_(std::move(weights)) {
    if (dim_ < 1) throw std::invalid_argument("measure dimension must be positive");
    if (points_.size() != weights_.size()) {
      throw std::invalid_argument("measure has " + std::to_string(points_.size()) + " points but " +
                                  std::to_string(weights_.size()) + " weights");
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (points_[i].size() != dim_) throw std::invalid_argument("measure point has wrong dimension");
      for (double c : points_[i]) {
        if (!std::isfinite(c)) throw std::invalid_argument("measure coordinate is not finite");
      }
      if (!(weights_[i] > 0) || !std::isfinite(weights_[i])) {
        throw std::invalid_argument("measure weights must be positive and finite");
      }
    }
    total_ = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  }

  /// Unit weights.
  DiscreteMeasure(std::size_t dim, std::vector<std::vector<double>> points)
      : DiscreteMeasure(dim, points, std::vector<double>(points.size(), 1.0)) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<std::vector<double>>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }
  double total() const { return total_; }

 private:
  std::size_t dim_;
  std::vector<std::vector<double>> points_;
  std::vector<double> weights_;
  double total_ = 0;
};

/// p(x) = <x, normal> - offset, as for exact hyperplanes.
struct AffineHyperplane {
  std::vector<double> normal;
  double offset = 0;

  double operator()(std::span<const double> x) const {
    double acc = -offset;
    for (std::size_t i = 0; i < normal.size(); ++i) acc += normal[i] * x[i];
    return acc;
  }
};

using Direction = std::vector<double>;  // unit vector in R^{d+1}

inline double norm(std::span<const double> v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

inline void require_unit(std::span<const double> w) {
  if (w.size() < 2) throw std::invalid_argument("direction must live in R^{d+1} with d >= 1");
  if (std::abs(norm(w) - 1.0) > kUnitTolerance) {
    throw std::invalid_argument("direction is not a unit vector");
  }
}

/// Hyperplane whose height-one lift has normal w, orientation preserved;
/// nullopt for the two poles (hyperplanes at infinity).
inline std::optional<AffineHyperplane> sphere_to_hyperplane(std::span<const double> w) {
  require_unit(w);
  const std::size_t d = w.size() - 1;
  AffineHyperplane h{std::vector<double>(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(d)), -w[d]};
  for (double x : h.normal) {
    if (x != 0.0) return h;
  }
  return std::nullopt;
}

/// Inverse of sphere_to_hyperplane: normalizes (normal, -offset).
inline Direction hyperplane_to_sphere(const AffineHyperplane& h) {
  Direction w = h.normal;
  w.push_back(-h.offset);
  const double n = norm(w);
  if (n == 0) throw std::invalid_argument("zero functional has no sphere point");
  for (auto& x : w) x /= n;
  return w;
}

struct PhiEvaluation {
  std::vector<double> values;         // one per measure
  std::vector<double> boundary_mass;  // mass lying exactly on the union of hyperplanes
};

inline std::vector<AffineHyperplane> finite_hyperplanes(std::span<const Direction> arrangement,
                                                        std::size_t d) {
  std::vector<AffineHyperplane> hs;
  for (const auto& w : arrangement) {
    if (w.size() != d + 1) throw std::invalid_argument("direction dimension does not match measures");
    auto h = sphere_to_hyperplane(w);
    if (!h) throw std::domain_error("hyperplane at infinity is outside the numerical domain");
    hs.push_back(std::move(*h));
  }
  return hs;
}

/// sign(p_1(x) ... p_k(x)) as a product of exact signs.
inline int arrangement_sign(std::span<const AffineHyperplane> hs, std::span<const double> x) {
  int s = 1;
  for (const auto& h : hs) {
    const double v = h(x);
    if (v == 0) return 0;
    if (v < 0) s = -s;
  }
  return s;
}

inline PhiEvaluation phi_with_diagnostics(std::span<const DiscreteMeasure> measures,
                                          std::span<const AffineHyperplane> hs) {
  PhiEvaluation out;
  for (const auto& m : measures) {
    double v = 0, boundary = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      const int s = arrangement_sign(hs, m.points()[i]);
      if (s == 0) boundary += m.weights()[i];
      v += s * m.weights()[i];
    }
    out.values.push_back(v);
    out.boundary_mass.push_back(boundary);
  }
  return out;
}

inline PhiEvaluation phi_with_diagnostics(std::span<const DiscreteMeasure> measures,
                                          std::span<const Direction> arrangement) {
  if (measures.empty()) throw std::invalid_argument("phi needs at least one measure");
  const auto hs = finite_hyperplanes(arrangement, measures.front().dim());
  return phi_with_diagnostics(measures, std::span<const AffineHyperplane>(hs));
}

/// mu_i{p_H > 0} - mu_i{p_H < 0} for every measure; points on the union
/// contribute nothing.
inline std::vector<double> phi(std::span<const DiscreteMeasure> measures,
                               std::span<const Direction> arrangement) {
  return phi_with_diagnostics(measures, arrangement).values;
}

/// A point sum lambda_i w_i of the k-fold join of S^d.
struct JoinPoint {
  std::vector<double> lambdas;
  std::vector<Direction> directions;

  std::size_t k() const { return lambdas.size(); }

  void validate() const {
    if (lambdas.empty() || lambdas.size() != directions.size()) {
      throw std::invalid_argument("join point needs k lambdas and k directions");
    }
    double s = 0;
    for (double l : lambdas) {
      if (l < 0) throw std::invalid_argument("join coordinates must be nonnegative");
      s += l;
    }
    if (std::abs(s - 1.0) > 1e-12) throw std::invalid_argument("join coordinates must sum to 1");
    for (const auto& w : directions) {
      if (std::abs(norm(w) - 1.0) > 1e-12) throw std::invalid_argument("join direction is not unit");
    }
  }
};

struct PsiValue {
  std::vector<double> w_part;  // in W_k: sums to zero
  std::vector<double> v_part;  // in V^j

  friend bool operator==(const PsiValue&, const PsiValue&) = default;
};

inline PsiValue psi(std::span<const DiscreteMeasure> measures, const JoinPoint& x) {
  x.validate();
  const auto k = static_cast<double>(x.k());
  PsiValue out;
  double product = 1;
  for (double l : x.lambdas) {
    out.w_part.push_back(l - 1.0 / k);
    product *= l;
  }
  // On the faces lambda_1 ... lambda_k = 0 the value does not see the measures.
  if (product == 0) {
    out.v_part.assign(measures.size(), 0.0);
    return out;
  }
  out.v_part = phi(measures, x.directions);
  for (auto& v : out.v_part) v *= product;
  return out;
}

/// (beta_1, ..., beta_k) x| tau in the group of signed permutations;
/// permutation[i] = tau(i), 0-based.
struct GroupElement {
  std::vector<std::uint8_t> signs;
  std::vector<std::size_t> permutation;

  static GroupElement identity(std::size_t k) {
    GroupElement g{std::vector<std::uint8_t>(k, 0), std::vector<std::size_t>(k)};
    std::iota(g.permutation.begin(), g.permutation.end(), std::size_t{0});
    return g;
  }
  static GroupElement sign_flip(std::size_t k, std::size_t i) {
    auto g = identity(k);
    g.signs.at(i) = 1;
    return g;
  }
  static GroupElement transposition(std::size_t k, std::size_t a, std::size_t b) {
    auto g = identity(k);
    std::swap(g.permutation.at(a), g.permutation.at(b));
    return g;
  }

  std::size_t k() const { return permutation.size(); }

  void validate() const {
    if (signs.size() != permutation.size()) throw std::invalid_argument("group element size mismatch");
    std::vector<bool> seen(permutation.size(), false);
    for (auto p : permutation) {
      if (p >= permutation.size() || seen[p]) throw std::invalid_argument("not a permutation");
      seen[p] = true;
    }
    for (auto b : signs) {
      if (b > 1) throw std::invalid_argument("sign bits must be 0 or 1");
    }
  }

  std::vector<std::size_t> inverse_permutation() const {
    std::vector<std::size_t> inv(permutation.size());
    for (std::size_t i = 0; i < permutation.size(); ++i) inv[permutation[i]] = i;
    return inv;
  }

  /// Parity of beta_1 + ... + beta_k.
  int character() const {
    int s = 1;
    for (auto b : signs) s = b ? -s : s;
    return s;
  }

  /// (g * h) acts as g after h.
  friend GroupElement operator*(const GroupElement& g, const GroupElement& h) {
    const std::size_t k = g.k();
    if (h.k() != k) throw std::invalid_argument("group elements of different rank");
    const auto ginv = g.inverse_permutation();
    GroupElement out{std::vector<std::uint8_t>(k), std::vector<std::size_t>(k)};
    for (std::size_t i = 0; i < k; ++i) {
      out.permutation[i] = g.permutation[h.permutation[i]];
      out.signs[i] = static_cast<std::uint8_t>(g.signs[i] ^ h.signs[ginv[i]]);
    }
    return out;
  }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

/// Slot i of g.x receives (-1)^{beta_i} times slot tau^{-1}(i) of x.
inline std::vector<Direction> act_on_product(const GroupElement& g, std::span<const Direction> ws) {
  g.validate();
  if (ws.size() != g.k()) throw std::invalid_argument("configuration has wrong length");
  const auto inv = g.inverse_permutation();
  std::vector<Direction> out(ws.size());
  for (std::size_t i = 0; i < ws.size(); ++i) {
    out[i] = ws[inv[i]];
    if (g.signs[i]) {
      for (auto& x : out[i]) x = -x;
    }
  }
  return out;
}

inline JoinPoint act_on_join(const GroupElement& g, const JoinPoint& x) {
  if (x.k() != g.k()) throw std::invalid_argument("join point has wrong length");
  JoinPoint out;
  out.directions = act_on_product(g, x.directions);
  const auto inv = g.inverse_permutation();
  for (std::size_t i = 0; i < x.k(); ++i) out.lambdas.push_back(x.lambdas[inv[i]]);
  return out;
}

/// W_k by permuting coordinates, V by the product of the signs.
inline PsiValue act_on_target(const GroupElement& g, const PsiValue& y) {
  g.validate();
  if (y.w_part.size() != g.k()) throw std::invalid_argument("W_k component has wrong length");
  const auto inv = g.inverse_permutation();
  PsiValue out;
  for (std::size_t i = 0; i < y.w_part.size(); ++i) out.w_part.push_back(y.w_part[inv[i]]);
  const int chi = g.character();
  for (double v : y.v_part) out.v_part.push_back(chi * v);
  return out;
}

}  // namespace hyperbisect::testmap
