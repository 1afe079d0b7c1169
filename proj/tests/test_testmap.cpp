#include "hyperbisect/momentcurve.hpp"
#include "hyperbisect/testmap.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

using namespace hyperbisect;
using namespace hyperbisect::testmap;

namespace {

Direction random_unit(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Direction w(n);
  for (auto& x : w) x = g(rng);
  const double s = norm(w);
  for (auto& x : w) x /= s;
  return w;
}

DiscreteMeasure random_measure(std::size_t d, std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> c(-3, 3), w(0.1, 2);
  std::vector<std::vector<double>> pts(n, std::vector<double>(d));
  std::vector<double> ws(n);
  for (auto& p : pts) {
    for (auto& x : p) x = c(rng);
  }
  for (auto& x : ws) x = w(rng);
  return {d, std::move(pts), std::move(ws)};
}

GroupElement random_element(std::size_t k, std::mt19937_64& rng) {
  GroupElement g = GroupElement::identity(k);
  std::shuffle(g.permutation.begin(), g.permutation.end(), rng);
  std::bernoulli_distribution coin;
  for (auto& b : g.signs) b = coin(rng) ? 1 : 0;
  return g;
}

std::vector<double> random_lambdas(std::size_t k, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.05, 1);
  std::vector<double> l(k);
  for (auto& x : l) x = u(rng);
  const double s = std::accumulate(l.begin(), l.end(), 0.0);
  for (auto& x : l) x /= s;
  // restore an exact sum of one on the last coordinate
  l.back() = 1.0 - std::accumulate(l.begin(), l.end() - 1, 0.0);
  return l;
}

void expect_near_all(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], tol) << "component " << i;
}

}  // namespace

TEST(DiscreteMeasure, Validation) {
  EXPECT_THROW(DiscreteMeasure(2, {{0, 0}}, {0.0}), std::invalid_argument);
  EXPECT_THROW(DiscreteMeasure(2, {{0, 0}}, {-1.0}), std::invalid_argument);
  EXPECT_THROW(DiscreteMeasure(2, {{0}}, {1.0}), std::invalid_argument);
  EXPECT_THROW(DiscreteMeasure(2, {{0, 0}}, {1.0, 2.0}), std::invalid_argument);
  EXPECT_THROW(DiscreteMeasure(1, {{NAN}}), std::invalid_argument);
  const DiscreteMeasure m(1, {{0}, {1}}, {0.25, 0.5});
  EXPECT_DOUBLE_EQ(m.total(), 0.75);
}

TEST(SphereToHyperplane, Examples) {
  const Direction e1{1, 0, 0};
  const auto h = sphere_to_hyperplane(e1);
  ASSERT_TRUE(h.has_value());
  const std::vector<double> pos{0.5, 7}, neg{-0.5, 7}, on{0, 3};
  EXPECT_GT((*h)(pos), 0);
  EXPECT_LT((*h)(neg), 0);
  EXPECT_EQ((*h)(on), 0);

  EXPECT_FALSE(sphere_to_hyperplane(Direction{0, 0, 1}).has_value());
  EXPECT_FALSE(sphere_to_hyperplane(Direction{0, 0, -1}).has_value());

  // (0, ..., 0, 1, -1)/sqrt(2) with d = 3: the plane x_3 = 1
  const double r = 1 / std::sqrt(2.0);
  const auto g = sphere_to_hyperplane(Direction{0, 0, r, -r});
  ASSERT_TRUE(g.has_value());
  const std::vector<double> a{4, -2, 1}, b{0, 0, 2}, c{0, 0, 0};
  EXPECT_NEAR((*g)(a), 0, 1e-15);
  EXPECT_GT((*g)(b), 0);
  EXPECT_LT((*g)(c), 0);
}

TEST(SphereToHyperplane, NonUnitRejected) {
  EXPECT_THROW(sphere_to_hyperplane(Direction{1, 1}), std::invalid_argument);
  EXPECT_THROW(sphere_to_hyperplane(Direction{1}), std::invalid_argument);
}

TEST(SphereToHyperplane, RoundTrip) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto w = random_unit(4, rng);
    const auto h = sphere_to_hyperplane(w);
    ASSERT_TRUE(h.has_value());
    expect_near_all(hyperplane_to_sphere(*h), w, 1e-14);
  }
}

TEST(Phi, Examples) {
  const std::vector<DiscreteMeasure> m{DiscreteMeasure(1, {{-1}, {1}}, {0.5, 0.5})};
  const double r = 1 / std::sqrt(5.0);
  EXPECT_EQ(phi(m, std::vector<Direction>{{1, 0}}), std::vector<double>{0});
  // x = 2: functional x - 2, lift (1, -2)/sqrt(5)
  EXPECT_EQ(phi(m, std::vector<Direction>{{r, -2 * r}}), std::vector<double>{-1});

  // Clouds symmetric under the reflection (x, y) -> (-x, y): x*y changes
  // sign, so the axes bisect both. The point reflection (x, y) -> (-x, -y)
  // would keep x*y and does not work.
  const std::vector<DiscreteMeasure> sym{
      DiscreteMeasure(2, {{1, 2}, {-1, 2}, {3, -1}, {-3, -1}}),
      DiscreteMeasure(2, {{0.5, 0.25}, {-0.5, 0.25}, {2, -5}, {-2, -5}}, {1, 1, 3, 3})};
  const std::vector<Direction> axes{{1, 0, 0}, {0, 1, 0}};
  EXPECT_EQ(phi(sym, axes), (std::vector<double>{0, 0}));
  const std::vector<DiscreteMeasure> point_sym{
      DiscreteMeasure(2, {{0.5, 0.25}, {-0.5, -0.25}, {2, 5}, {-2, -5}}, {1, 1, 3, 3})};
  EXPECT_EQ(phi(point_sym, axes), std::vector<double>{8});
}

TEST(Phi, BoundaryMassIsReported) {
  const std::vector<DiscreteMeasure> m{DiscreteMeasure(1, {{0}, {1}, {-1}}, {2, 1, 1})};
  const auto e = phi_with_diagnostics(m, std::vector<Direction>{{1, 0}});
  EXPECT_EQ(e.values[0], 0);
  EXPECT_EQ(e.boundary_mass[0], 2);
}

TEST(Phi, PoleRejected) {
  const std::vector<DiscreteMeasure> m{DiscreteMeasure(1, {{0}})};
  EXPECT_THROW(phi(m, std::vector<Direction>{{0, 1}}), std::domain_error);
  EXPECT_THROW(phi(m, std::vector<Direction>{{1, 0, 0}}), std::invalid_argument);
}

TEST(Psi, Examples) {
  std::mt19937_64 rng(1);
  const std::vector<DiscreteMeasure> m{random_measure(2, 20, rng), random_measure(2, 20, rng)};
  const std::vector<Direction> ws{random_unit(3, rng), random_unit(3, rng), random_unit(3, rng)};

  const JoinPoint centre{{1.0 / 3, 1.0 / 3, 1.0 - 2.0 / 3}, ws};
  for (double x : psi(m, centre).w_part) EXPECT_NEAR(x, 0, 1e-16);

  const JoinPoint face{{0, 0.5, 0.5}, ws};
  EXPECT_EQ(psi(m, face).v_part, (std::vector<double>{0, 0}));

  const JoinPoint vertex{{1, 0}, {ws[0], ws[1]}};
  const auto y = psi(m, vertex);
  EXPECT_EQ(y.w_part, (std::vector<double>{0.5, -0.5}));
  EXPECT_EQ(y.v_part, (std::vector<double>{0, 0}));

  // interior value is prod(lambda) * phi
  const JoinPoint inner{{0.25, 0.75}, {ws[0], ws[1]}};
  const auto p = phi(m, inner.directions);
  const auto z = psi(m, inner);
  for (std::size_t i = 0; i < p.size(); ++i) EXPECT_DOUBLE_EQ(z.v_part[i], 0.1875 * p[i]);
}

TEST(Psi, MalformedJoinPoint) {
  const std::vector<DiscreteMeasure> m{DiscreteMeasure(1, {{0}})};
  EXPECT_THROW(psi(m, JoinPoint{{0.5, 0.6}, {{1, 0}, {1, 0}}}), std::invalid_argument);
  EXPECT_THROW(psi(m, JoinPoint{{1.5, -0.5}, {{1, 0}, {1, 0}}}), std::invalid_argument);
  EXPECT_THROW(psi(m, JoinPoint{{0.5, 0.5}, {{1, 1}, {1, 0}}}), std::invalid_argument);
  EXPECT_THROW(psi(m, JoinPoint{{1.0}, {{1, 0}, {1, 0}}}), std::invalid_argument);
}

TEST(Action, JoinExamples) {
  const JoinPoint x{{0.25, 0.75}, {{1, 0}, {0, 1}}};
  const auto id = act_on_join(GroupElement::identity(2), x);
  EXPECT_EQ(id.lambdas, x.lambdas);
  EXPECT_EQ(id.directions, x.directions);

  const auto flipped = act_on_join(GroupElement::sign_flip(2, 0), x);
  EXPECT_EQ(flipped.lambdas, x.lambdas);
  EXPECT_EQ(flipped.directions, (std::vector<Direction>{{-1, -0.0}, {0, 1}}));

  const auto swapped = act_on_join(GroupElement::transposition(2, 0, 1), x);
  EXPECT_EQ(swapped.lambdas, (std::vector<double>{0.75, 0.25}));
  EXPECT_EQ(swapped.directions, (std::vector<Direction>{{0, 1}, {1, 0}}));
}

TEST(Action, TargetExamples) {
  const PsiValue y{{0.5, -0.5}, {3, -2}};
  EXPECT_EQ(act_on_target(GroupElement::identity(2), y), y);
  EXPECT_EQ(act_on_target(GroupElement::sign_flip(2, 1), y), (PsiValue{{0.5, -0.5}, {-3, 2}}));
  EXPECT_EQ(act_on_target(GroupElement::transposition(2, 0, 1), y), (PsiValue{{-0.5, 0.5}, {3, -2}}));
  GroupElement two_flips = GroupElement::sign_flip(2, 0) * GroupElement::sign_flip(2, 1);
  EXPECT_EQ(act_on_target(two_flips, y).v_part, y.v_part);
}

TEST(Action, InvalidElements) {
  GroupElement bad{{0, 0}, {0, 0}};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  GroupElement bad_sign{{2, 0}, {0, 1}};
  EXPECT_THROW(act_on_target(bad_sign, PsiValue{{0, 0}, {}}), std::invalid_argument);
  EXPECT_THROW(act_on_target(GroupElement::identity(3), PsiValue{{0, 0}, {}}), std::invalid_argument);
}

// (g h) . x == g . (h . x) on all three spaces.
TEST(Action, CompositionIsAGroupAction) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t k = 1 + trial % 4;
    const auto g = random_element(k, rng), h = random_element(k, rng);
    std::vector<Direction> ws;
    for (std::size_t i = 0; i < k; ++i) ws.push_back(random_unit(3, rng));
    const JoinPoint x{random_lambdas(k, rng), ws};
    const auto lhs = act_on_join(g * h, x), rhs = act_on_join(g, act_on_join(h, x));
    EXPECT_EQ(lhs.lambdas, rhs.lambdas);
    EXPECT_EQ(lhs.directions, rhs.directions);
    PsiValue y{x.lambdas, {1.5, -2.5}};
    EXPECT_EQ(act_on_target(g * h, y), act_on_target(g, act_on_target(h, y)));
    EXPECT_EQ((g * h).character(), g.character() * h.character());
  }
}

TEST(Equivariance, PhiAndPsiOnRandomTriples) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t d = 1 + trial % 3, k = 1 + (trial / 3) % 3, j = 1 + (trial / 9) % 4;
    std::vector<DiscreteMeasure> ms;
    for (std::size_t i = 0; i < j; ++i) ms.push_back(random_measure(d, 15, rng));
    std::vector<Direction> ws;
    for (std::size_t i = 0; i < k; ++i) ws.push_back(random_unit(d + 1, rng));
    const auto g = random_element(k, rng);

    const auto lhs = phi(ms, act_on_product(g, ws));
    auto rhs = phi(ms, ws);
    for (auto& v : rhs) v *= g.character();
    expect_near_all(lhs, rhs, 1e-12);

    const JoinPoint x{random_lambdas(k, rng), ws};
    const auto a = psi(ms, act_on_join(g, x));
    const auto b = act_on_target(g, psi(ms, x));
    expect_near_all(a.w_part, b.w_part, 1e-12);
    expect_near_all(a.v_part, b.v_part, 1e-12);
  }
}

TEST(Equivariance, DegenerateFacesIgnoreMeasures) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 1 + trial % 3, k = 2 + trial % 2;
    std::vector<DiscreteMeasure> m1, m2;
    for (int i = 0; i < 3; ++i) {
      m1.push_back(random_measure(d, 10, rng));
      m2.push_back(random_measure(d, 25, rng));
    }
    std::vector<Direction> ws;
    for (std::size_t i = 0; i < k; ++i) ws.push_back(random_unit(d + 1, rng));
    auto lambdas = random_lambdas(k, rng);
    const std::size_t zero = trial % k;
    lambdas[(zero + 1) % k] += lambdas[zero];
    lambdas[zero] = 0;
    const JoinPoint x{lambdas, ws};
    const auto a = psi(m1, x), b = psi(m2, x);
    EXPECT_EQ(a, b);
    EXPECT_TRUE(std::all_of(a.v_part.begin(), a.v_part.end(), [](double v) { return v == 0.0; }));
  }
}

// Exact bisections of interval measures on the moment curve, discretized by
// N-point midpoint quadrature in the curve parameter: imbalance <= C/N.
TEST(ZeroCertificate, EnumeratedArrangementsBisectQuadratures) {
  struct Case {
    std::size_t d, k, ell;
  };
  for (const auto& c : {Case{1, 2, 0}, Case{2, 2, 0}, Case{2, 3, 0}, Case{2, 3, 1}, Case{3, 2, 1}}) {
    const std::size_t j = (c.d - c.ell) * c.k + c.ell;
    std::vector<Rational> params;
    for (std::size_t r = 0; r < j; ++r) {
      params.push_back(make_rational(3 * static_cast<long long>(r) + 2, 1));
      params.push_back(make_rational(3 * static_cast<long long>(r) + 4, 1));
    }
    const moment::IntervalFamily fam(c.d, params, c.ell);
    const auto e = moment::enumerate_bisections(fam, c.k);
    ASSERT_FALSE(e.arrangements.empty());

    double worst_c = 0;
    for (std::size_t n : {100u, 1000u, 10000u}) {
      std::vector<DiscreteMeasure> ms;
      for (std::size_t r = 0; r < j; ++r) {
        const double lo = to_double(fam.interval(r).first), hi = to_double(fam.interval(r).second);
        std::vector<std::vector<double>> pts;
        for (std::size_t i = 0; i < n; ++i) {
          const double t = lo + (hi - lo) * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
          std::vector<double> x;
          double b = 1;
          for (std::size_t m = 1; m <= c.d; ++m) {
            b *= (t - static_cast<double>(m - 1)) / static_cast<double>(m);
            x.push_back(b);
          }
          pts.push_back(std::move(x));
        }
        ms.emplace_back(c.d, std::move(pts), std::vector<double>(n, 1.0 / static_cast<double>(n)));
      }
      for (const auto& arr : e.arrangements) {
        std::vector<Direction> ws;
        for (const auto& h : arr.hyperplanes) {
          AffineHyperplane a{{}, to_double(h.offset())};
          for (const auto& u : h.normal()) a.normal.push_back(to_double(u));
          ws.push_back(hyperplane_to_sphere(a));
        }
        for (double v : phi(ms, ws)) worst_c = std::max(worst_c, std::abs(v) * static_cast<double>(n));
      }
    }
    // Each midpoint node contributes at most one cell of weight 1/N.
    EXPECT_LE(worst_c, 2.0) << "d=" << c.d << " k=" << c.k << " ell=" << c.ell;
  }
}
