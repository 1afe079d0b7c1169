#include "hyperbisect/parity.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <gtest/gtest.h>

#include <cstdint>
#include <functional>
#include <vector>

using namespace hyperbisect;
using namespace hyperbisect::parity;
using boost::multiprecision::cpp_int;

namespace {

cpp_int fact(std::uint64_t n) {
  cpp_int r = 1;
  for (std::uint64_t i = 2; i <= n; ++i) r *= i;
  return r;
}

cpp_int multinomial(const std::vector<std::uint64_t>& parts) {
  std::uint64_t n = 0;
  for (auto p : parts) n += p;
  cpp_int r = fact(n);
  for (auto p : parts) r /= fact(p);
  return r;
}

Parity parity_of(const cpp_int& v) { return (v & 1) == 1 ? Parity::odd : Parity::even; }

// (1/k!) C(dk; d,...,d) by big integers.
cpp_int lemma_i_value(std::uint64_t d, std::uint64_t k) {
  return multinomial(std::vector<std::uint64_t>(k, d)) / fact(k);
}

cpp_int lemma_ii_value(std::uint64_t d, std::uint64_t k, std::uint64_t ell) {
  const std::uint64_t n = (d - ell) * k + ell;
  return multinomial({d, n - d}) * multinomial(std::vector<std::uint64_t>(k - 1, d - ell)) / fact(k - 1);
}

}  // namespace

TEST(Legendre, Examples) {
  EXPECT_EQ(legendre_valuation(0, 2), 0u);
  EXPECT_EQ(legendre_valuation(4, 2), 3u);
  EXPECT_EQ(legendre_valuation(10, 2), 8u);
  EXPECT_EQ(legendre_valuation(10, 5), 2u);
  EXPECT_EQ(factorial_v2(10), 8u);
}

TEST(Legendre, NonPrimeRejected) {
  EXPECT_THROW(legendre_valuation(10, 4), std::invalid_argument);
  EXPECT_THROW(legendre_valuation(10, 1), std::invalid_argument);
  EXPECT_THROW(legendre_valuation(10, 0), std::invalid_argument);
}

TEST(Legendre, ProfileFields) {
  const auto prof = padic_profile(100, 3);
  EXPECT_EQ(prof.digit_sum, 4u);  // 100 = 10201_3
  EXPECT_EQ(prof.valuation, 48u);
  EXPECT_EQ(prof.valuation * 2, 100 - prof.digit_sum);
}

TEST(Legendre, FormsAgreeUpToOneMillion) {
  for (std::uint64_t p : {2u, 3u, 5u}) {
    for (std::uint64_t n = 0; n <= 1'000'000; ++n) {
      const auto fs = detail::floor_sum_valuation(n, p);
      ASSERT_EQ(fs * (p - 1), n - digit_sum(n, p)) << "n=" << n << " p=" << p;
    }
  }
}

TEST(Legendre, MatchesFactorizationSmall) {
  for (std::uint64_t p : {2u, 3u, 5u, 7u}) {
    for (std::uint64_t n = 0; n <= 40; ++n) {
      cpp_int f = fact(n);
      std::uint64_t v = 0;
      while (f % p == 0) {
        f /= p;
        ++v;
      }
      EXPECT_EQ(legendre_valuation(n, p), v) << n << " " << p;
    }
  }
}

TEST(MultinomialParity, Examples) {
  const std::vector<std::uint64_t> two_two{2, 2}, two_one{2, 1}, single{9};
  EXPECT_EQ(multinomial_parity(4, two_two), Parity::even);
  EXPECT_EQ(multinomial_parity(3, two_one), Parity::odd);
  EXPECT_EQ(multinomial_parity(9, single), Parity::odd);
  EXPECT_EQ(multinomial_parity(0, std::vector<std::uint64_t>{}), Parity::odd);
}

TEST(MultinomialParity, SumMismatchRejected) {
  const std::vector<std::uint64_t> parts{2, 1};
  EXPECT_THROW(multinomial_parity(4, parts), std::invalid_argument);
}

// Every composition of every n <= 20 into up to 4 parts (and all of them
// into 2 parts), against exact big-integer multinomials.
TEST(MultinomialParity, AgreesWithBigIntegersUpTo20) {
  std::size_t checked = 0;
  std::vector<std::uint64_t> parts;
  std::function<void(std::uint64_t, std::size_t)> rec = [&](std::uint64_t rest, std::size_t slots) {
    if (slots == 1) {
      parts.push_back(rest);
      const std::uint64_t n = [&] {
        std::uint64_t s = 0;
        for (auto p : parts) s += p;
        return s;
      }();
      ASSERT_EQ(multinomial_parity(n, parts), parity_of(multinomial(parts)));
      ASSERT_EQ(carry_free(n, parts), parity_of(multinomial(parts)) == Parity::odd);
      ++checked;
      parts.pop_back();
      return;
    }
    for (std::uint64_t a = 0; a <= rest; ++a) {
      parts.push_back(a);
      rec(rest - a, slots - 1);
      parts.pop_back();
    }
  };
  for (std::uint64_t n = 0; n <= 20; ++n) {
    for (std::size_t slots = 1; slots <= 4; ++slots) rec(n, slots);
  }
  EXPECT_GT(checked, 10000u);
}

// Compositions with positive parts of n <= 12 (all lengths).
TEST(MultinomialParity, AllPositiveCompositionsUpTo12) {
  for (std::uint64_t n = 1; n <= 12; ++n) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
      std::vector<std::uint64_t> parts{1};
      for (std::uint64_t b = 0; b + 1 < n; ++b) {
        if (mask >> b & 1) {
          parts.push_back(1);
        } else {
          ++parts.back();
        }
      }
      ASSERT_EQ(multinomial_parity(n, parts), parity_of(multinomial(parts)));
    }
  }
}

TEST(LemmaI, Examples) {
  EXPECT_EQ(lemma_i_parity(2, 2), Parity::odd);
  EXPECT_EQ(lemma_i_parity(3, 2), Parity::even);
  for (std::uint64_t k = 2; k <= 10; ++k) EXPECT_EQ(lemma_i_parity(1, k), Parity::odd);
  EXPECT_EQ(lemma_i_value(3, 2), 10);
}

TEST(LemmaI, Preconditions) {
  EXPECT_THROW(lemma_i_parity(0, 2), std::invalid_argument);
  EXPECT_THROW(lemma_i_parity(2, 1), std::invalid_argument);
}

TEST(LemmaI, OddExactlyAtPowersOfTwo) {
  for (std::uint64_t d = 1; d <= 16; ++d) {
    for (std::uint64_t k = 2; k <= 8; ++k) {
      const bool pow2 = d == 1 || d == 2 || d == 4 || d == 8 || d == 16;
      EXPECT_EQ(lemma_i_parity(d, k) == Parity::odd, pow2) << d << " " << k;
      EXPECT_EQ(lemma_i_parity(d, k), parity_of(lemma_i_value(d, k))) << d << " " << k;
    }
  }
}

TEST(LemmaII, Examples) {
  EXPECT_EQ(lemma_ii_parity(3, 3, 1), Parity::odd);
  EXPECT_EQ(lemma_ii_value(3, 3, 1), 105);
  EXPECT_EQ(lemma_ii_parity(3, 2, 1), Parity::even);
  EXPECT_EQ(lemma_ii_value(3, 2, 1), 10);
  EXPECT_EQ(lemma_ii_parity(2, 3, 1), Parity::even);
  EXPECT_EQ(lemma_ii_value(2, 3, 1), 6);
}

TEST(LemmaII, EllOutOfRange) {
  EXPECT_THROW(lemma_ii_parity(3, 3, 0), std::invalid_argument);
  EXPECT_THROW(lemma_ii_parity(3, 3, 3), std::invalid_argument);
  EXPECT_THROW(lemma_ii_parity(3, 1, 1), std::invalid_argument);
}

TEST(LemmaII, AgreesWithBigIntegers) {
  for (std::uint64_t d = 2; d <= 12; ++d) {
    for (std::uint64_t k = 2; k <= 7; ++k) {
      for (std::uint64_t ell = 1; ell <= d - 1; ++ell) {
        EXPECT_EQ(lemma_ii_parity(d, k, ell), parity_of(lemma_ii_value(d, k, ell)))
            << d << " " << k << " " << ell;
      }
    }
  }
}

TEST(LemmaII, ClosedFormInRange) {
  for (std::uint64_t d = 3; d <= 12; ++d) {
    for (std::uint64_t k = 3; k <= 7; ++k) {
      for (std::uint64_t ell = 1; 2 * ell <= d - 1; ++ell) {
        const bool expected = k % 2 == 1 && d - ell >= 2 && is_power_of_two(d - ell);
        EXPECT_EQ(lemma_ii_parity(d, k, ell) == Parity::odd, expected) << d << " " << k << " " << ell;
      }
    }
  }
}

// With k = 2 the closed form is wrong: the count is C(2d - ell, d), and for
// d <= 12 it is odd at exactly these in-range triples although k is even.
TEST(LemmaII, ClosedFormFailsForTwoBlocks) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> odd_cases;
  for (std::uint64_t d = 3; d <= 12; ++d) {
    for (std::uint64_t ell = 1; 2 * ell <= d - 1; ++ell) {
      EXPECT_EQ(lemma_ii_value(d, 2, ell), multinomial({d, d - ell}));
      if (lemma_ii_parity(d, 2, ell) == Parity::odd) odd_cases.emplace_back(d, ell);
    }
  }
  const std::vector<std::pair<std::uint64_t, std::uint64_t>> expected{{4, 1}, {8, 1}, {8, 2}, {8, 3}, {9, 3}};
  EXPECT_EQ(odd_cases, expected);
  EXPECT_EQ(lemma_ii_value(4, 2, 1), 35);
}
