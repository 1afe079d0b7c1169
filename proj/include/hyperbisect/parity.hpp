#pragma once

// p-adic valuations of factorials (Legendre) and the parity tests built on
// them. Everything here works in machine words; the big-integer route is only
// used by the tests as an oracle.

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperbisect::parity {

enum class Parity { even, odd };

inline std::string_view to_string(Parity p) { return p == Parity::odd ? "odd" : "even"; }

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t q = 2; q * q <= p; ++q) {
    if (p % q == 0) return false;
  }
  return true;
}

struct PadicProfile {
  std::uint64_t n = 0;
  std::uint64_t p = 2;
  std::uint64_t valuation = 0;  // largest e with p^e | n!
  std::uint64_t digit_sum = 0;  // sum of base-p digits of n
};

inline std::uint64_t digit_sum(std::uint64_t n, std::uint64_t p) {
  std::uint64_t s = 0;
  for (; n > 0; n /= p) s += n % p;
  return s;
}

namespace detail {

inline std::uint64_t floor_sum_valuation(std::uint64_t n, std::uint64_t p) {
  std::uint64_t v = 0;
  for (std::uint64_t q = n / p; q > 0; q /= p) v += q;
  return v;
}

inline void require_prime(std::uint64_t p) {
  if (!is_prime(p)) {
    throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
  }
}

}  // namespace detail

/// Profile of n! at the prime p. The valuation is computed twice, once as
/// sum_i floor(n / p^i) and once as (n - digit_sum) / (p - 1); a disagreement
/// is a logic error.
inline PadicProfile padic_profile(std::uint64_t n, std::uint64_t p) {
  detail::require_prime(p);
  PadicProfile out{n, p, detail::floor_sum_valuation(n, p), digit_sum(n, p)};
  const std::uint64_t numer = n - out.digit_sum;
  if (numer % (p - 1) != 0 || numer / (p - 1) != out.valuation) {
    throw std::logic_error("Legendre forms disagree for n = " + std::to_string(n));
  }
  return out;
}

inline std::uint64_t legendre_valuation(std::uint64_t n, std::uint64_t p) {
  return padic_profile(n, p).valuation;
}

inline std::uint64_t factorial_v2(std::uint64_t n) {
  return n - static_cast<std::uint64_t>(std::popcount(n));
}

/// Parity of the multinomial coefficient n! / (k_1! ... k_t!).
inline Parity multinomial_parity(std::uint64_t n, std::span<const std::uint64_t> parts) {
  std::uint64_t total = 0;
  std::uint64_t parts_valuation = 0;
  for (auto k : parts) {
    if (k > n - total) throw std::invalid_argument("parts sum exceeds n");
    total += k;
    parts_valuation += factorial_v2(k);
  }
  if (total != n) throw std::invalid_argument("parts do not sum to n");
  return factorial_v2(n) == parts_valuation ? Parity::odd : Parity::even;
}

/// Kummer form of the same test: the parts are pairwise bitwise disjoint and
/// their union is n.
inline bool carry_free(std::uint64_t n, std::span<const std::uint64_t> parts) {
  std::uint64_t seen = 0;
  for (auto k : parts) {
    if ((seen & k) != 0) return false;
    seen |= k;
  }
  return seen == n;
}

inline bool is_power_of_two(std::uint64_t d) { return d != 0 && (d & (d - 1)) == 0; }

/// 2-adic valuation of (1/k!) * C(dk; d, ..., d), the number of unordered
/// partitions of a dk-set into k blocks of size d.
inline std::uint64_t lemma_i_valuation(std::uint64_t d, std::uint64_t k) {
  return factorial_v2(d * k) - factorial_v2(k) - k * factorial_v2(d);
}

inline Parity lemma_i_parity(std::uint64_t d, std::uint64_t k) {
  if (d < 1) throw std::invalid_argument("lemma_i_parity needs d >= 1");
  if (k < 2) throw std::invalid_argument("lemma_i_parity needs k >= 2");
  const Parity direct = lemma_i_valuation(d, k) == 0 ? Parity::odd : Parity::even;
  const Parity closed = is_power_of_two(d) ? Parity::odd : Parity::even;
  if (direct != closed) {
    throw std::logic_error("lemma (i) valuation disagrees with the power-of-two form");
  }
  return direct;
}

/// 2-adic valuation of C((d-l)k+l; d) * (1/(k-1)!) * C((d-l)(k-1); d-l, ..., d-l).
inline std::uint64_t lemma_ii_valuation(std::uint64_t d, std::uint64_t k, std::uint64_t ell) {
  const std::uint64_t j = (d - ell) * k + ell;
  const std::uint64_t rest = (d - ell) * (k - 1);
  const std::uint64_t binom_v = factorial_v2(j) - factorial_v2(d) - factorial_v2(j - d);
  const std::uint64_t blocks_v =
      factorial_v2(rest) - factorial_v2(k - 1) - (k - 1) * factorial_v2(d - ell);
  return binom_v + blocks_v;
}

/// True when d = 2^a + ell for some a >= 1 and k is odd.
inline bool lemma_ii_closed_form(std::uint64_t d, std::uint64_t k, std::uint64_t ell) {
  return k % 2 == 1 && d > ell && d - ell >= 2 && is_power_of_two(d - ell);
}

inline Parity lemma_ii_parity(std::uint64_t d, std::uint64_t k, std::uint64_t ell) {
  if (k < 2) throw std::invalid_argument("lemma_ii_parity needs k >= 2");
  if (ell < 1 || ell + 1 > d) {
    throw std::invalid_argument("lemma_ii_parity needs 1 <= ell <= d - 1");
  }
  const Parity direct = lemma_ii_valuation(d, k, ell) == 0 ? Parity::odd : Parity::even;
  // The closed form is claimed for 2 <= 2*ell <= d - 1, but it reads the
  // second factor as a partition count into k - 1 >= 2 blocks. For k = 2 the
  // count is just C(2d - ell, d), odd e.g. at (d, ell) = (4, 1).
  if (2 * ell <= d - 1 && k >= 3) {
    const Parity closed = lemma_ii_closed_form(d, k, ell) ? Parity::odd : Parity::even;
    if (direct != closed) {
      throw std::logic_error("lemma (ii) valuation disagrees with the closed form");
    }
  }
  return direct;
}

}  // namespace hyperbisect::parity
