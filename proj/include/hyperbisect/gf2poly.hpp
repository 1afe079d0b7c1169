#pragma once

// Multivariate polynomials over F_2 modulo <t_1^cap, ..., t_k^cap>, and the
// membership test for (t_1 + ... + t_k)^j in that monomial ideal.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperbisect::gf2 {

using Exponents = std::vector<std::uint32_t>;

class F2Poly {
 public:
  F2Poly(std::uint32_t num_vars, std::uint32_t cap) : num_vars_(num_vars), cap_(cap) {
    if (num_vars == 0) throw std::invalid_argument("F2Poly needs at least one variable");
    if (cap == 0) throw std::invalid_argument("F2Poly needs a positive exponent cap");
  }

  static F2Poly one(std::uint32_t num_vars, std::uint32_t cap) {
    F2Poly p(num_vars, cap);
    p.toggle(Exponents(num_vars, 0));
    return p;
  }

  std::uint32_t num_vars() const { return num_vars_; }
  std::uint32_t cap() const { return cap_; }
  const std::set<Exponents>& monomials() const { return monomials_; }
  std::size_t size() const { return monomials_.size(); }
  bool is_zero() const { return monomials_.empty(); }
  bool contains(const Exponents& e) const { return monomials_.count(e) != 0; }

  // Adds the monomial with coefficient 1 (F_2 addition); monomials at or
  // above the cap are zero and ignored.
  void toggle(const Exponents& e) {
    if (e.size() != num_vars_) throw std::invalid_argument("exponent vector has wrong length");
    if (std::any_of(e.begin(), e.end(), [&](auto a) { return a >= cap_; })) return;
    if (auto it = monomials_.find(e); it != monomials_.end()) {
      monomials_.erase(it);
    } else {
      monomials_.insert(e);
    }
  }

  F2Poly& operator+=(const F2Poly& other) {
    check_compatible(other);
    for (const auto& e : other.monomials_) toggle(e);
    return *this;
  }

  // Multiplication by t_1 + ... + t_k: k shifted copies summed mod 2.
  F2Poly times_variable_sum() const {
    F2Poly out(num_vars_, cap_);
    for (const auto& e : monomials_) {
      for (std::uint32_t i = 0; i < num_vars_; ++i) {
        if (e[i] + 1 >= cap_) continue;
        Exponents shifted = e;
        ++shifted[i];
        out.toggle(shifted);
      }
    }
    return out;
  }

  friend bool operator==(const F2Poly&, const F2Poly&) = default;

 private:
  void check_compatible(const F2Poly& other) const {
    if (other.num_vars_ != num_vars_ || other.cap_ != cap_) {
      throw std::invalid_argument("F2Poly operands live in different rings");
    }
  }

  std::uint32_t num_vars_;
  std::uint32_t cap_;
  std::set<Exponents> monomials_;
};

/// (t_1 + ... + t_k)^j reduced modulo <t_i^(d+1)>, by j-fold multiplication.
inline F2Poly truncated_power_of_sum(std::uint32_t j, std::uint32_t k, std::uint32_t d) {
  if (j < 1 || k < 1 || d < 1) throw std::invalid_argument("j, k, d must be positive");
  F2Poly p = F2Poly::one(k, d + 1);
  for (std::uint32_t step = 0; step < j && !p.is_zero(); ++step) p = p.times_variable_sum();
  return p;
}

/// Membership via explicit expansion.
inline bool ideal_member_by_expansion(std::uint32_t j, std::uint32_t k, std::uint32_t d) {
  return truncated_power_of_sum(j, k, d).is_zero();
}

namespace detail {

inline std::vector<std::uint64_t> binary_digits_descending(std::uint64_t j) {
  std::vector<std::uint64_t> bits;
  for (int b = 63; b >= 0; --b) {
    if ((j >> b) & 1U) bits.push_back(std::uint64_t{1} << b);
  }
  return bits;
}

inline bool distribute(const std::vector<std::uint64_t>& bits, std::size_t next,
                       std::vector<std::uint64_t>& parts, std::uint64_t cap) {
  if (next == bits.size()) return true;
  const auto bit = bits[next];
  for (std::size_t g = 0; g < parts.size(); ++g) {
    if (parts[g] + bit > cap) continue;
    // Groups with equal load are interchangeable; try only the first.
    bool duplicate = false;
    for (std::size_t h = 0; h < g; ++h) duplicate = duplicate || parts[h] == parts[g];
    if (duplicate) continue;
    parts[g] += bit;
    if (distribute(bits, next + 1, parts, cap)) return true;
    parts[g] -= bit;
  }
  return false;
}

}  // namespace detail

/// A composition j = a_1 + ... + a_k with pairwise bitwise-disjoint parts,
/// each at most d, if one exists. By Kummer's theorem these are exactly the
/// monomials t^a with odd coefficient that survive truncation.
inline std::optional<std::vector<std::uint64_t>> carry_free_composition(std::uint64_t j,
                                                                        std::uint64_t k,
                                                                        std::uint64_t d) {
  if (k == 0) throw std::invalid_argument("k must be positive");
  std::vector<std::uint64_t> parts(k, 0);
  if (detail::distribute(detail::binary_digits_descending(j), 0, parts, d)) return parts;
  return std::nullopt;
}

inline bool ideal_member_by_composition(std::uint64_t j, std::uint64_t k, std::uint64_t d) {
  return !carry_free_composition(j, k, d).has_value();
}

/// Decides (t_1 + ... + t_k)^j in <t_1^(d+1), ..., t_k^(d+1)>.
inline bool ideal_member(std::uint64_t j, std::uint64_t k, std::uint64_t d) {
  if (j < 1 || k < 1 || d < 1) throw std::invalid_argument("j, k, d must be positive");
  return ideal_member_by_composition(j, k, d);
}

/// Smallest d with (t_1 + ... + t_k)^j outside <t_i^(d+1)>. Always exists:
/// putting every binary digit of j into one part gives d = j.
inline std::uint64_t min_nonmember_cap(std::uint64_t j, std::uint64_t k) {
  if (j < 1 || k < 1) throw std::invalid_argument("j, k must be positive");
  std::uint64_t lo = std::max<std::uint64_t>((j + k - 1) / k,
                                             std::uint64_t{1} << (63 - std::countl_zero(j)));
  std::uint64_t hi = j;
  while (lo < hi) {
    const auto mid = lo + (hi - lo) / 2;
    if (carry_free_composition(j, k, mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

inline std::string to_string(const Exponents& e) {
  std::string s = "(";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(e[i]);
  }
  return s + ")";
}

}  // namespace hyperbisect::gf2
