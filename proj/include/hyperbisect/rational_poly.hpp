#pragma once

// Dense univariate polynomials over Q with exact division, gcd and Sturm
// root counting. Sized for curve restrictions of degree <= d, so nothing
// here tries to be asymptotically clever.

#include "hyperbisect/exact.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hyperbisect {

class RationalPoly {
 public:
  RationalPoly() = default;
  // Coefficients from the constant term upward.
  explicit RationalPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static RationalPoly constant(Rational v) { return RationalPoly({std::move(v)}); }
  // t - root
  static RationalPoly linear_factor(const Rational& root) { return RationalPoly({-root, Rational(1)}); }

  bool is_zero() const { return c_.empty(); }
  // Degree of the zero polynomial is reported as -1.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coefficients() const { return c_; }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  Rational operator()(const Rational& t) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  RationalPoly derivative() const {
    std::vector<Rational> out;
    for (std::size_t i = 1; i < c_.size(); ++i) out.push_back(c_[i] * static_cast<long long>(i));
    return RationalPoly(std::move(out));
  }

  friend RationalPoly operator+(const RationalPoly& a, const RationalPoly& b) {
    std::vector<Rational> out(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] += b.c_[i];
    return RationalPoly(std::move(out));
  }

  friend RationalPoly operator-(const RationalPoly& a) {
    auto out = a.c_;
    for (auto& x : out) x = -x;
    return RationalPoly(std::move(out));
  }

  friend RationalPoly operator-(const RationalPoly& a, const RationalPoly& b) { return a + (-b); }

  friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return RationalPoly(std::move(out));
  }

  friend RationalPoly operator*(const Rational& s, const RationalPoly& p) {
    return RationalPoly::constant(s) * p;
  }

  // Euclidean division: *this = q * divisor + r with deg r < deg divisor.
  std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& divisor) const {
    if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> rem = c_;
    const int dd = divisor.degree();
    std::vector<Rational> quot(std::max(0, degree() - dd + 1));
    for (int i = degree(); i >= dd; --i) {
      const Rational coef = rem[static_cast<std::size_t>(i)] / divisor.leading();
      quot[static_cast<std::size_t>(i - dd)] = coef;
      if (coef == 0) continue;
      for (int j = 0; j <= dd; ++j) {
        rem[static_cast<std::size_t>(i - dd + j)] -= coef * divisor.c_[static_cast<std::size_t>(j)];
      }
    }
    rem.resize(static_cast<std::size_t>(std::max(dd, 0)));
    return {RationalPoly(std::move(quot)), RationalPoly(std::move(rem))};
  }

  RationalPoly monic() const {
    if (is_zero()) return {};
    const Rational lead = leading();
    auto out = c_;
    for (auto& x : out) x /= lead;
    return RationalPoly(std::move(out));
  }

  friend bool operator==(const RationalPoly&, const RationalPoly&) = default;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Rational> c_;
};

inline RationalPoly gcd(RationalPoly a, RationalPoly b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// Sturm chain of the squarefree part of p (p nonzero).
inline std::vector<RationalPoly> sturm_chain(const RationalPoly& p) {
  if (p.is_zero()) throw std::domain_error("Sturm chain of the zero polynomial");
  const RationalPoly squarefree = p.divmod(gcd(p, p.derivative())).first;
  std::vector<RationalPoly> chain{squarefree, squarefree.derivative()};
  while (!chain.back().is_zero()) {
    chain.push_back(-chain[chain.size() - 2].divmod(chain.back()).second);
  }
  chain.pop_back();
  return chain;
}

namespace detail {

inline int sign_variations(const std::vector<int>& signs) {
  int count = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

inline int variations_at(const std::vector<RationalPoly>& chain, const Rational& t) {
  std::vector<int> signs;
  for (const auto& q : chain) signs.push_back(q(t).sign());
  return sign_variations(signs);
}

inline int variations_at_infinity(const std::vector<RationalPoly>& chain, bool positive) {
  std::vector<int> signs;
  for (const auto& q : chain) {
    int s = q.leading().sign();
    if (!positive && q.degree() % 2 == 1) s = -s;
    signs.push_back(s);
  }
  return sign_variations(signs);
}

}  // namespace detail

/// Number of distinct real roots of p in the open interval (lo, hi).
inline int count_roots_in_open_interval(RationalPoly p, const Rational& lo, const Rational& hi) {
  if (p.is_zero()) throw std::domain_error("root count of the zero polynomial");
  if (!(lo < hi)) return 0;
  for (const Rational* end : {&lo, &hi}) {
    while (p.degree() > 0 && p(*end) == 0) p = p.divmod(RationalPoly::linear_factor(*end)).first;
  }
  if (p.degree() <= 0) return 0;
  const auto chain = sturm_chain(p);
  return detail::variations_at(chain, lo) - detail::variations_at(chain, hi);
}

/// Number of distinct real roots of p.
inline int count_real_roots(const RationalPoly& p) {
  if (p.is_zero()) throw std::domain_error("root count of the zero polynomial");
  if (p.degree() <= 0) return 0;
  const auto chain = sturm_chain(p);
  return detail::variations_at_infinity(chain, false) - detail::variations_at_infinity(chain, true);
}

}  // namespace hyperbisect
