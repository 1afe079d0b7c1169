#pragma once

// Membership verdicts for triples (d, j, k): "every j proper measures in R^d
// can be bisected by some k-element hyperplane arrangement".
//
// Sufficient criteria, checked in this fixed order:
//   HAM_SANDWICH  k == 1 and d >= j
//   THM25_I       j == d0 * k with d0 = 2^a <= d
//   THM25_II      k odd, d0 = 2^a + l <= d, a >= 1, 1 <= l <= 2^a - 1,
//                 j == (d0 - l) * k + l
//   THM1_IDEAL    (t_1 + ... + t_k)^j is not in <t_i^(d0+1)> for some d0 <= d
// Necessary condition: d * k >= j, witnessed by disjoint intervals on the
// moment curve.

#include "hyperbisect/gf2poly.hpp"
#include "hyperbisect/parity.hpp"

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperbisect::lambda {

enum class Status { in, not_in, unknown };

enum class Criterion { ham_sandwich, thm25_i, thm25_ii, thm1_ideal, moment_curve_necessity, none };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::in: return "IN";
    case Status::not_in: return "NOT_IN";
    case Status::unknown: return "UNKNOWN";
  }
  return "?";
}

inline std::string to_string(Criterion c) {
  switch (c) {
    case Criterion::ham_sandwich: return "HAM_SANDWICH";
    case Criterion::thm25_i: return "THM25_I";
    case Criterion::thm25_ii: return "THM25_II";
    case Criterion::thm1_ideal: return "THM1_IDEAL";
    case Criterion::moment_curve_necessity: return "MOMENT_CURVE_NECESSITY";
    case Criterion::none: return "NONE";
  }
  return "?";
}

struct Certificate {
  Criterion kind = Criterion::none;
  std::optional<std::uint64_t> d0;   // dimension at which the criterion fires
  std::optional<std::uint64_t> a;    // exponent of the power of two
  std::optional<std::uint64_t> ell;  // anchor count for THM25_II

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

// e.g. "THM25_II(d0=3,a=1,l=1)", "THM1_IDEAL(d0=2)", "NONE"
inline std::string to_string(const Certificate& c) {
  std::string s = to_string(c.kind);
  std::vector<std::string> args;
  if (c.d0) args.push_back("d0=" + std::to_string(*c.d0));
  if (c.a) args.push_back("a=" + std::to_string(*c.a));
  if (c.ell) args.push_back("l=" + std::to_string(*c.ell));
  if (!args.empty()) {
    s += "(";
    for (std::size_t i = 0; i < args.size(); ++i) s += (i ? "," : "") + args[i];
    s += ")";
  }
  return s;
}

struct Verdict {
  std::uint64_t d = 0, j = 0, k = 0;
  Status status = Status::unknown;
  Certificate certificate;

  std::optional<std::uint64_t> witness_d0() const { return certificate.d0; }
};

// Each criterion reports the smallest d0 at which it certifies (d0, j, k);
// every criterion then covers all d >= d0.

inline std::optional<Certificate> ham_sandwich(std::uint64_t j, std::uint64_t k) {
  if (k != 1) return std::nullopt;
  return Certificate{Criterion::ham_sandwich, j, std::nullopt, std::nullopt};
}

inline std::optional<Certificate> thm25_i(std::uint64_t j, std::uint64_t k) {
  if (k < 2 || j % k != 0) return std::nullopt;
  const std::uint64_t d0 = j / k;
  if (!parity::is_power_of_two(d0)) return std::nullopt;
  return Certificate{Criterion::thm25_i, d0, static_cast<std::uint64_t>(std::countr_zero(d0)),
                     std::nullopt};
}

inline std::optional<Certificate> thm25_ii(std::uint64_t j, std::uint64_t k) {
  if (k < 3 || k % 2 == 0) return std::nullopt;
  // j = 2^a * k + l with 1 <= l <= 2^a - 1, so d0 = j - 2^a * (k - 1);
  // several a may qualify, keep the smallest d0.
  std::optional<Certificate> best;
  for (std::uint64_t a = 1; a < 63; ++a) {
    const std::uint64_t pow = std::uint64_t{1} << a;
    if (pow > j / k) break;
    const std::uint64_t base = pow * k;
    if (base >= j) break;
    const std::uint64_t ell = j - base;
    if (ell > pow - 1) continue;
    const std::uint64_t d0 = pow + ell;
    if (!best || d0 < *best->d0) best = Certificate{Criterion::thm25_ii, d0, a, ell};
  }
  return best;
}

inline std::optional<Certificate> thm1_ideal(std::uint64_t j, std::uint64_t k) {
  return Certificate{Criterion::thm1_ideal, gf2::min_nonmember_cap(j, k), std::nullopt,
                     std::nullopt};
}

inline Verdict verdict(std::uint64_t d, std::uint64_t j, std::uint64_t k) {
  if (d < 1 || j < 1 || k < 1) throw std::invalid_argument("d, j, k must be positive");
  Verdict v{d, j, k, Status::unknown, {}};
  if (d * k < j) {
    v.status = Status::not_in;
    v.certificate.kind = Criterion::moment_curve_necessity;
    return v;
  }
  for (auto candidate : {ham_sandwich(j, k), thm25_i(j, k), thm25_ii(j, k), thm1_ideal(j, k)}) {
    if (candidate && *candidate->d0 <= d) {
      v.status = Status::in;
      v.certificate = *candidate;
      return v;
    }
  }
  return v;
}

struct FrontierRow {
  std::uint64_t j = 0;
  std::uint64_t d_conjecture = 0;
  std::optional<std::uint64_t> d_thm1;
  std::optional<std::uint64_t> d_thm25i;
  std::optional<std::uint64_t> d_thm25ii;

  friend bool operator==(const FrontierRow&, const FrontierRow&) = default;
};

struct FrontierTable {
  std::uint64_t k = 0;
  std::uint64_t search_bound = 0;  // 0: criteria searched for d <= 4*j on each row
  std::vector<FrontierRow> rows;
};

inline FrontierRow frontier_row(std::uint64_t j, std::uint64_t k, std::uint64_t search_bound) {
  auto within = [&](const std::optional<Certificate>& c) -> std::optional<std::uint64_t> {
    if (c && *c->d0 <= search_bound) return c->d0;
    return std::nullopt;
  };
  return FrontierRow{j, (j + k - 1) / k, within(thm1_ideal(j, k)), within(thm25_i(j, k)),
                     within(thm25_ii(j, k))};
}

/// Per j <= j_max: the conjectured minimal d = ceil(j/k) and the minimal d
/// each proven criterion certifies. search_bound = 0 selects 4*j per row.
inline FrontierTable frontier_table(std::uint64_t k, std::uint64_t j_max,
                                    std::uint64_t search_bound = 0) {
  if (k < 2) throw std::invalid_argument("frontier_table needs k >= 2");
  if (j_max < 1) throw std::invalid_argument("frontier_table needs j_max >= 1");
  FrontierTable t;
  t.k = k;
  t.search_bound = search_bound;
  for (std::uint64_t j = 1; j <= j_max; ++j) {
    t.rows.push_back(frontier_row(j, k, search_bound == 0 ? 4 * j : search_bound));
  }
  return t;
}

}  // namespace hyperbisect::lambda
