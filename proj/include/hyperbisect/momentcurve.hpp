#pragma once

// Exact constructions on the binomial moment curve
//
//   alpha(t) = (C(t,1), C(t,2), ..., C(t,d)),
//
// which every affine hyperplane meets in at most d points. For j disjoint
// parameter intervals, an arrangement of k hyperplanes bisects all of them
// (with the measure uniform in t) iff each interval contains exactly one
// crossing, at its midpoint. This makes the bisecting arrangements a finite,
// exactly enumerable set.

#include "hyperbisect/exact.hpp"
#include "hyperbisect/rational_poly.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iterator>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hyperbisect::moment {

using Point = std::vector<Rational>;

/// C(t, i) as a polynomial in t: t (t-1) ... (t-i+1) / i!.
inline RationalPoly binomial_poly(std::size_t i) {
  RationalPoly p = RationalPoly::constant(1);
  for (std::size_t r = 0; r < i; ++r) {
    p = p * RationalPoly::linear_factor(Rational(static_cast<long long>(r)));
  }
  return Rational(1, factorial(i)) * p;
}

inline Point moment_point(const Rational& t, std::size_t d) {
  if (d < 1) throw std::invalid_argument("moment_point needs d >= 1");
  Point x;
  x.reserve(d);
  Rational c = 1;
  for (std::size_t i = 1; i <= d; ++i) {
    c = c * (t - static_cast<long long>(i - 1)) / static_cast<long long>(i);
    x.push_back(c);
  }
  return x;
}

/// The oriented hyperplane H(u, a) with functional p(x) = <x, u> - a.
class OrientedHyperplane {
 public:
  OrientedHyperplane(std::vector<Rational> normal, Rational offset)
      : normal_(std::move(normal)), offset_(std::move(offset)) {
    if (normal_.empty()) throw std::invalid_argument("hyperplane in dimension 0");
    if (std::all_of(normal_.begin(), normal_.end(), [](const Rational& x) { return x == 0; })) {
      throw degenerate_input("hyperplane normal is the zero vector");
    }
  }

  std::size_t dim() const { return normal_.size(); }
  const std::vector<Rational>& normal() const { return normal_; }
  const Rational& offset() const { return offset_; }

  Rational operator()(std::span<const Rational> x) const {
    if (x.size() != normal_.size()) throw std::invalid_argument("point has wrong dimension");
    Rational acc = -offset_;
    for (std::size_t i = 0; i < x.size(); ++i) acc += normal_[i] * x[i];
    return acc;
  }

  /// H(-u, -a).
  OrientedHyperplane flipped() const {
    auto u = normal_;
    for (auto& x : u) x = -x;
    return {std::move(u), -offset_};
  }

  /// Representative of the hyperplane up to orientation and positive scale:
  /// the first nonzero normal coordinate is 1.
  OrientedHyperplane canonical() const {
    const Rational lead = *std::find_if(normal_.begin(), normal_.end(),
                                        [](const Rational& x) { return x != 0; });
    auto u = normal_;
    for (auto& x : u) x /= lead;
    return {std::move(u), offset_ / lead};
  }

  /// t -> p(alpha(t)), a polynomial of degree <= d.
  RationalPoly curve_polynomial() const {
    RationalPoly p = RationalPoly::constant(-offset_);
    for (std::size_t i = 0; i < normal_.size(); ++i) {
      if (normal_[i] != 0) p = p + normal_[i] * binomial_poly(i + 1);
    }
    return p;
  }

  friend bool operator==(const OrientedHyperplane&, const OrientedHyperplane&) = default;

  friend bool operator<(const OrientedHyperplane& a, const OrientedHyperplane& b) {
    if (a.normal_ != b.normal_) {
      return std::lexicographical_compare(a.normal_.begin(), a.normal_.end(), b.normal_.begin(),
                                          b.normal_.end());
    }
    return a.offset_ < b.offset_;
  }

 private:
  std::vector<Rational> normal_;
  Rational offset_;
};

/// Same hyperplane, possibly with opposite orientation or different scale.
inline bool same_hyperplane(const OrientedHyperplane& a, const OrientedHyperplane& b) {
  return a.dim() == b.dim() && a.canonical() == b.canonical();
}

/// The unique hyperplane through d affinely independent points of R^d, in
/// canonical form.
inline OrientedHyperplane hyperplane_through(std::span<const Point> points) {
  const std::size_t d = points.size();
  if (d == 0) throw std::invalid_argument("hyperplane_through needs at least one point");
  // Rows [x_i | -1]; the kernel (u, a) of this d x (d+1) system is the answer.
  std::vector<std::vector<Rational>> m;
  for (const auto& x : points) {
    if (x.size() != d) throw std::invalid_argument("hyperplane_through needs d points in R^d");
    auto row = x;
    row.push_back(Rational(-1));
    m.push_back(std::move(row));
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col <= d && row < d; ++col) {
    auto it = std::find_if(m.begin() + static_cast<std::ptrdiff_t>(row), m.end(),
                           [&](const auto& r) { return r[col] != 0; });
    if (it == m.end()) continue;
    std::iter_swap(m.begin() + static_cast<std::ptrdiff_t>(row), it);
    const Rational piv = m[row][col];
    for (auto& v : m[row]) v /= piv;
    for (std::size_t r = 0; r < d; ++r) {
      if (r == row || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (std::size_t c = col; c <= d; ++c) m[r][c] -= f * m[row][c];
    }
    pivot_cols.push_back(col);
    ++row;
  }
  if (pivot_cols.size() < d) throw degenerate_input("points are affinely dependent");
  std::size_t free_col = 0;
  while (std::find(pivot_cols.begin(), pivot_cols.end(), free_col) != pivot_cols.end()) ++free_col;
  std::vector<Rational> kernel(d + 1, Rational(0));
  kernel[free_col] = 1;
  for (std::size_t r = 0; r < d; ++r) kernel[pivot_cols[r]] = -m[r][free_col];
  Rational offset = kernel.back();
  kernel.pop_back();
  return OrientedHyperplane(std::move(kernel), std::move(offset)).canonical();
}

/// True iff t -> p(alpha(t)) vanishes at every listed parameter and nowhere
/// else on the real line.
inline bool curve_roots_check(const OrientedHyperplane& h, std::span<const Rational> params) {
  for (std::size_t i = 1; i < params.size(); ++i) {
    if (!(params[i - 1] < params[i])) {
      throw std::invalid_argument("curve parameters must be strictly increasing");
    }
  }
  const RationalPoly p = h.curve_polynomial();
  for (const auto& t : params) {
    if (p(t) != 0) return false;
  }
  return count_real_roots(p) == static_cast<int>(params.size());
}

/// An ordered k-tuple of oriented hyperplanes.
struct Arrangement {
  std::vector<OrientedHyperplane> hyperplanes;

  std::size_t size() const { return hyperplanes.size(); }

  /// No two members coincide, also after flipping orientation.
  bool is_essential() const {
    for (std::size_t r = 0; r < hyperplanes.size(); ++r) {
      for (std::size_t s = r + 1; s < hyperplanes.size(); ++s) {
        if (same_hyperplane(hyperplanes[r], hyperplanes[s])) return false;
      }
    }
    return true;
  }

  friend bool operator==(const Arrangement&, const Arrangement&) = default;
  friend bool operator<(const Arrangement& a, const Arrangement& b) {
    return std::lexicographical_compare(a.hyperplanes.begin(), a.hyperplanes.end(),
                                        b.hyperplanes.begin(), b.hyperplanes.end());
  }
};

/// j disjoint parameter intervals (t_r^1, t_r^2) on the moment curve in R^d,
/// plus ell anchor parameters 0, 1, ..., ell-1 lying before all intervals.
class IntervalFamily {
 public:
  IntervalFamily(std::size_t d, std::vector<Rational> params, std::size_t anchor_count = 0)
      : d_(d), params_(std::move(params)), anchors_(anchor_count) {
    if (d_ < 1) throw std::invalid_argument("interval family needs d >= 1");
    if (params_.empty() || params_.size() % 2 != 0) {
      throw std::invalid_argument("interval family needs a positive even number of parameters");
    }
    for (std::size_t i = 1; i < params_.size(); ++i) {
      if (!(params_[i - 1] < params_[i])) {
        throw std::invalid_argument("interval parameters must be strictly increasing");
      }
    }
    if (anchors_ > 0 && !(Rational(static_cast<long long>(anchors_ - 1)) < params_.front())) {
      throw std::invalid_argument("anchors 0..ell-1 must precede the first interval");
    }
  }

  std::size_t d() const { return d_; }
  std::size_t j() const { return params_.size() / 2; }
  std::size_t anchor_count() const { return anchors_; }
  const std::vector<Rational>& params() const { return params_; }

  std::pair<Rational, Rational> interval(std::size_t r) const {
    return {params_.at(2 * r), params_.at(2 * r + 1)};
  }
  Rational midpoint_parameter(std::size_t r) const {
    return (params_.at(2 * r) + params_.at(2 * r + 1)) / 2;
  }
  Point midpoint(std::size_t r) const { return moment_point(midpoint_parameter(r), d_); }
  Point anchor(std::size_t s) const {
    return moment_point(Rational(static_cast<long long>(s)), d_);
  }

 private:
  std::size_t d_;
  std::vector<Rational> params_;
  std::size_t anchors_;
};

/// Exact test that the arrangement bisects every interval's length measure:
/// inside each interval the product polynomial t -> prod_i p_i(alpha(t)) has
/// exactly one root, it is simple, and it sits at the midpoint.
inline bool verify_bisection(const Arrangement& arr, const IntervalFamily& family) {
  if (arr.hyperplanes.empty()) return false;
  std::vector<RationalPoly> restricted;
  for (const auto& h : arr.hyperplanes) {
    if (h.dim() != family.d()) return false;
    restricted.push_back(h.curve_polynomial());
  }
  for (std::size_t r = 0; r < family.j(); ++r) {
    const auto [lo, hi] = family.interval(r);
    const Rational mid = family.midpoint_parameter(r);
    int roots = 0;
    const RationalPoly* crossing = nullptr;
    for (const auto& q : restricted) {
      const int n = count_roots_in_open_interval(q, lo, hi);
      roots += n;
      if (n > 0) crossing = &q;
    }
    if (roots != 1) return false;
    if ((*crossing)(mid) != 0 || crossing->derivative()(mid) == 0) return false;
  }
  return true;
}

namespace detail {

// Calls visit(blocks) for every partition of items into blocks of the given
// size, blocks unordered; each block keeps the input order.
inline void for_each_block_partition(
    std::vector<std::size_t> items, std::size_t block_size,
    const std::function<void(const std::vector<std::vector<std::size_t>>&)>& visit) {
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<bool> used(items.size(), false);
  std::function<void()> recurse = [&] {
    auto first = std::find(used.begin(), used.end(), false);
    if (first == used.end()) {
      visit(blocks);
      return;
    }
    const auto lead = static_cast<std::size_t>(first - used.begin());
    std::vector<std::size_t> block{items[lead]};
    used[lead] = true;
    std::function<void(std::size_t)> extend = [&](std::size_t from) {
      if (block.size() == block_size) {
        blocks.push_back(block);
        recurse();
        blocks.pop_back();
        return;
      }
      for (std::size_t i = from; i < items.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        block.push_back(items[i]);
        extend(i + 1);
        block.pop_back();
        used[i] = false;
      }
    };
    extend(lead + 1);
    used[lead] = false;
  };
  if (block_size == 0 || items.size() % block_size != 0) {
    throw std::invalid_argument("items do not split into blocks of that size");
  }
  recurse();
}

inline void for_each_subset(std::size_t n, std::size_t size,
                            const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (chosen.size() == size) {
      visit(chosen);
      return;
    }
    for (std::size_t i = from; i + (size - chosen.size()) <= n; ++i) {
      chosen.push_back(i);
      rec(i + 1);
      chosen.pop_back();
    }
  };
  rec(0);
}

}  // namespace detail

struct Enumeration {
  std::vector<Arrangement> arrangements;  // canonical, sorted
  std::size_t candidates = 0;
  std::size_t rejected = 0;  // candidates that failed exact verification

  // False when some candidate failed verification: the family is not in
  // general position and the count law need not hold.
  bool generic() const { return rejected == 0; }
};

/// All k-element arrangements bisecting the family, up to order and
/// orientation. Without anchors (j = d k) each arrangement is a partition of
/// the midpoints into k blocks of size d. With ell anchors
/// (j = (d - ell) k + ell) one hyperplane passes through d midpoints and the
/// other k-1 each pass through d - ell midpoints plus all anchors.
inline Enumeration enumerate_bisections(const IntervalFamily& family, std::size_t k) {
  const std::size_t d = family.d();
  const std::size_t j = family.j();
  const std::size_t ell = family.anchor_count();
  if (k < 1) throw std::invalid_argument("enumerate_bisections needs k >= 1");
  if (ell == 0 && j != d * k) {
    throw std::invalid_argument("need j == d*k, got j = " + std::to_string(j));
  }
  if (ell > 0) {
    if (k < 2) throw std::invalid_argument("anchored enumeration needs k >= 2");
    if (ell >= d) throw std::invalid_argument("anchored enumeration needs ell <= d - 1");
    if (j != (d - ell) * k + ell) {
      throw std::invalid_argument("need j == (d-ell)*k + ell, got j = " + std::to_string(j));
    }
  }

  std::vector<Point> midpoints;
  for (std::size_t r = 0; r < j; ++r) midpoints.push_back(family.midpoint(r));
  std::vector<Point> anchors;
  for (std::size_t s = 0; s < ell; ++s) anchors.push_back(family.anchor(s));

  auto through = [&](const std::vector<std::size_t>& block, bool anchored) {
    std::vector<Point> pts;
    if (anchored) pts = anchors;
    for (auto r : block) pts.push_back(midpoints[r]);
    return hyperplane_through(pts);
  };

  Enumeration out;
  auto consider = [&](Arrangement arr) {
    ++out.candidates;
    if (verify_bisection(arr, family) && arr.is_essential()) {
      out.arrangements.push_back(std::move(arr));
    } else {
      ++out.rejected;
    }
  };

  std::vector<std::size_t> all(j);
  for (std::size_t r = 0; r < j; ++r) all[r] = r;

  if (ell == 0) {
    detail::for_each_block_partition(all, d, [&](const auto& blocks) {
      Arrangement arr;
      for (const auto& b : blocks) arr.hyperplanes.push_back(through(b, false));
      std::sort(arr.hyperplanes.begin(), arr.hyperplanes.end());
      consider(std::move(arr));
    });
  } else {
    detail::for_each_subset(j, d, [&](const std::vector<std::size_t>& free_block) {
      std::vector<std::size_t> rest;
      std::set_difference(all.begin(), all.end(), free_block.begin(), free_block.end(),
                          std::back_inserter(rest));
      detail::for_each_block_partition(rest, d - ell, [&](const auto& blocks) {
        // Anchored hyperplanes first (sorted), the free one last.
        Arrangement arr;
        for (const auto& b : blocks) arr.hyperplanes.push_back(through(b, true));
        std::sort(arr.hyperplanes.begin(), arr.hyperplanes.end());
        arr.hyperplanes.push_back(through(free_block, false));
        consider(std::move(arr));
      });
    });
  }
  std::sort(out.arrangements.begin(), out.arrangements.end());
  return out;
}

/// Closed-form number of bisecting arrangements, up to order and orientation:
///   ell = 0:  (1/k!) C(dk; d, ..., d)
///   ell > 0:  C((d-ell)k + ell; d) (1/(k-1)!) C((d-ell)(k-1); d-ell, ..., d-ell)
inline BigInt count_bisections(std::uint64_t d, std::uint64_t k, std::uint64_t ell = 0) {
  if (d < 1 || k < 1) throw std::invalid_argument("count_bisections needs d, k >= 1");
  if (ell > 0 && (ell >= d || k < 2)) {
    throw std::invalid_argument("count_bisections needs 1 <= ell <= d-1 and k >= 2");
  }
  auto unordered_blocks = [](std::uint64_t size, std::uint64_t blocks) {
    BigInt v = factorial(size * blocks);
    const BigInt f = factorial(size);
    for (std::uint64_t i = 0; i < blocks; ++i) v /= f;
    return BigInt(v / factorial(blocks));
  };
  if (ell == 0) return unordered_blocks(d, k);
  return binomial((d - ell) * k + ell, d) * unordered_blocks(d - ell, k - 1);
}

}  // namespace hyperbisect::moment
