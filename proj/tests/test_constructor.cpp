#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "harmap/constructor.hpp"
#include "harmap/gallery.hpp"
#include "harmap/oracle.hpp"
#include "test_support.hpp"

using namespace harmap;

TEST(EstimateM, Values) {
  EXPECT_NEAR(estimate_m(gallery::get("identity"), 0.5).value, 1.0, 1e-15);
  // |1 + z| on |z| <= 0.5 is smallest at z = -0.5
  const auto m = estimate_m(gallery::get("h0"), 0.5);
  EXPECT_NEAR(m.value, 0.5, 1e-12);
  EXPECT_NEAR(std::abs(m.witness + 0.5), 0.0, 1e-12);
  EXPECT_FALSE(m.sense_violation);
  // (1 - k) |1 + z| for f_k
  EXPECT_NEAR(estimate_m(gallery::get("f_k", {{"k", 0.5}}), 0.5).value, 0.25, 1e-12);
  EXPECT_NEAR(estimate_m(gallery::get("h0"), 0.0).value, 1.0, 1e-15);
}

TEST(EstimateM, RefinementFindsOffGridMinimum) {
  // minimum of |1 + z| at z = -0.5 is off a grid whose angles miss pi
  const auto m = estimate_m(gallery::get("h0"), 0.5, {10, 7, 0.5});
  EXPECT_GE(m.value, 0.5 - 1e-15);
  EXPECT_LE(m.value, 0.5 + 0.01);
}

TEST(EstimateM, SenseViolationFlagged) {
  // z + conj(z^2): |h'| - |g'| = 1 - 2|z| < 0 for |z| > 1/2
  const HarmonicMap fold(AnalyticFunction::identity(), AnalyticFunction::series({0.0, 1.0}), "fold");
  EXPECT_TRUE(estimate_m(fold, 0.7).sense_violation);
  EXPECT_FALSE(estimate_m(fold, 0.4).sense_violation);
  EXPECT_THROW(estimate_m(fold, 1.0), PreconditionError);
}

TEST(EstimateA, Values) {
  const auto conj = estimate_A(Perturbation::conj_z());
  EXPECT_EQ(conj.value, 1.0);
  EXPECT_TRUE(conj.rigorous);
  const Perturbation both{AnalyticFunction::identity(), AnalyticFunction::identity(), std::nullopt};
  const auto a = estimate_A(both);
  EXPECT_NEAR(a.value, 2.0, 1e-15);
  EXPECT_FALSE(a.rigorous);
  EXPECT_THROW(estimate_A(both, {10, 10, 0.9}), PreconditionError);
}

TEST(EstimateA, UnboundedDerivativeGrowsWithGrid) {
  // koebe' blows up at z = 1; the grid value is finite but only a lower bound
  const Perturbation p{gallery::get("koebe").h(), AnalyticFunction::zero(), std::nullopt};
  const auto a = estimate_A(p, {40, 96, 0.99});
  const auto b = estimate_A(p, {40, 96, 0.995});
  EXPECT_GT(b.value, a.value);
}

TEST(Budget, AnalyticH0) {
  const auto b = epsilon_budget(gallery::get("h0"), Perturbation::conj_z(), 0.5,
                                OrderParam::analytic_case());
  EXPECT_NEAR(b.epsilon0_raw, 0.0137174, 1e-6);
  EXPECT_NEAR(b.epsilon0_raw, 0.5 * 80.0 / 2916.0, 1e-12);
  EXPECT_NEAR(b.epsilon0, 0.99 * b.epsilon0_raw, 1e-15);
  EXPECT_TRUE(b.rigorous);
}

TEST(Budget, IdentityHarmonicDefault) {
  const auto b = epsilon_budget(gallery::get("identity"), Perturbation::conj_z(), 0.5,
                                OrderParam::harmonic_default());
  EXPECT_NEAR(b.epsilon0_raw, 0.00308219, 1e-8);
  EXPECT_NEAR(b.epsilon0, 0.00305137, 1e-8);
  EXPECT_FALSE(b.rigorous);
  EXPECT_NE(b.rigor_note.find("harmonic-default"), std::string::npos);
}

TEST(Budget, DoubledPerturbationHalvesBudget) {
  const Perturbation two{AnalyticFunction::identity(), AnalyticFunction::identity(), 2.0};
  const auto b =
      epsilon_budget(gallery::get("identity"), two, 0.5, OrderParam::harmonic_default());
  EXPECT_NEAR(b.epsilon0_raw, 0.00154109, 1e-8);
}

TEST(Budget, Inapplicable) {
  const auto id = gallery::get("identity");
  EXPECT_THROW(epsilon_budget(id, Perturbation::conj_z(), 0.0, OrderParam::analytic_case()),
               InapplicableError);
  EXPECT_THROW(epsilon_budget(id, Perturbation::conj_z(), 1.0, OrderParam::analytic_case()),
               InapplicableError);
  const HarmonicMap fold(AnalyticFunction::identity(), AnalyticFunction::series({0.0, 1.0}), "fold");
  EXPECT_THROW(epsilon_budget(fold, Perturbation::conj_z(), 0.7, OrderParam::analytic_case()),
               InapplicableError);
}

TEST(Budget, NotMonotoneButPositiveInR) {
  // r C(r) grows then shrinks; every budget is positive
  for (int i = 1; i < 10; ++i) {
    const auto b = epsilon_budget(gallery::get("identity"), Perturbation::conj_z(), i / 10.0,
                                  OrderParam::analytic_case());
    EXPECT_GT(b.epsilon0, 0.0);
    EXPECT_NEAR(b.epsilon0_raw, i / 10.0 * c_of_r(i / 10.0, OrderParam::analytic_case()), 1e-14);
  }
}

TEST(Construct, BuildsPerturbedMap) {
  const auto res = construct(gallery::get("h0"), Perturbation::conj_z(), 0.5, 0.01);
  const Complex z{0.3, -0.4};
  const Complex expected = gallery::get("h0")(0.5 * z) + 0.01 * std::conj(z);
  EXPECT_NEAR(std::abs(res.F(z) - expected), 0.0, 1e-15);
  EXPECT_EQ(res.alpha_used, 2.0);
  EXPECT_EQ(res.epsilon_used, 0.01);
}

TEST(Construct, RefusesAboveBudget) {
  EXPECT_THROW(construct(gallery::get("h0"), Perturbation::conj_z(), 0.5, 0.0137),
               BudgetExceededError);
  ConstructOptions unsafe;
  unsafe.unsafe = true;
  const auto res = construct(gallery::get("h0"), Perturbation::conj_z(), 0.5, 0.05, unsafe);
  EXPECT_NE(res.rigor_note.find("UNSAFE"), std::string::npos);
}

TEST(Construct, CertificateOnSamples) {
  const auto b = epsilon_budget(gallery::get("h0"), Perturbation::conj_z(), 0.5,
                                OrderParam::analytic_case());
  const auto res =
      construct(gallery::get("h0"), Perturbation::conj_z(), 0.5, 0.9 * b.epsilon0_raw);
  EXPECT_TRUE(injectivity_scan(res.F, 200, 0.99).holds());
  EXPECT_TRUE(jacobian_positivity_scan(res.F, {20, 48, 0.99}).holds());
  EXPECT_TRUE(curve_simplicity(res.F, 0.9).holds());
}

TEST(Construct, MatchesGalleryFeps) {
  const double r = 0.5, eps = 1e-3;
  ConstructOptions opt;
  opt.unsafe = true;
  const auto res = construct(gallery::get("h1"), Perturbation::conj_z(), r, eps, opt);
  const auto F = gallery::get("F_eps", {{"r", r}, {"eps", eps}});
  std::mt19937 rng(47);
  for (int i = 0; i < 20; ++i) {
    const Complex z = test_support::random_disk_point(rng, 0.95);
    EXPECT_NEAR(std::abs(res.F(z) - F(z)), 0.0, 1e-12 * std::abs(F(z)));
  }
}

TEST(Construct, FepsIsRescaledFeps) {
  // f_eps = (1 + eps) F_{eps/(1+eps)}; eps/(1+eps) < eps0 iff eps < eps0/(1 - eps0)
  const double r = 0.5;
  const auto b = epsilon_budget(gallery::get("h1"), Perturbation::conj_z(), r,
                                OrderParam::analytic_case());
  const double e0 = b.epsilon0;
  const double eps = 0.999 * e0 / (1.0 - e0);
  EXPECT_LT(eps / (1.0 + eps), e0);
  EXPECT_GT(eps, e0);
  const auto f = gallery::get("f_eps", {{"r", r}, {"eps", eps}});
  const auto F = gallery::get("F_eps", {{"r", r}, {"eps", eps / (1.0 + eps)}});
  const Complex z{-0.2, 0.6};
  EXPECT_NEAR(std::abs(f(z) - (1.0 + eps) * F(z)), 0.0, 1e-12 * std::abs(f(z)));
}

TEST(Normalize, FkToSH0) {
  const auto n = normalize(gallery::get("f_k", {{"k", 0.5}}));
  EXPECT_NEAR(std::abs(n.map(0.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(n.map.h().derivative(0.0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(n.map.g().derivative(0.0)), 0.0, 1e-15);
  EXPECT_TRUE(n.map.normalized());
  // f_k normalizes to h0 itself: (f1 - k conj f1)/(1 - k^2) with f1 = h0 + k conj h0
  const Complex z{0.3, 0.2};
  EXPECT_NEAR(std::abs(n.map(z) - gallery::get("h0")(z)), 0.0, 1e-14);
}

TEST(Normalize, AffineShift) {
  const HarmonicMap f(AnalyticFunction::combine(Complex{2.0, 1.0}, AnalyticFunction::identity(), 0.0,
                                                AnalyticFunction::zero(), {3.0, -1.0}, "a z + c"),
                      AnalyticFunction::combine(0.5, AnalyticFunction::identity(), 0.0,
                                                AnalyticFunction::zero(), {}, "z/2"),
                      "affine");
  const auto n = normalize(f);
  EXPECT_EQ(n.affine.f0, Complex(3.0, -1.0));
  EXPECT_EQ(n.affine.h_prime0, Complex(2.0, 1.0));
  const Complex z{-0.4, 0.5};
  EXPECT_NEAR(std::abs(n.map(z) - z), 0.0, 1e-14);
}

TEST(Normalize, RoundTrip) {
  std::mt19937 rng(53);
  const HarmonicMap f(AnalyticFunction::series({{1.5, 0.5}, {0.2, -0.1}, {0.05, 0.0}}),
                      AnalyticFunction::series({{0.3, 0.2}, {0.1, 0.1}}), "poly");
  const auto n = normalize(f);
  const auto back = denormalize(n.map, n.affine);
  for (int i = 0; i < 50; ++i) {
    const Complex z = test_support::random_disk_point(rng, 0.9);
    EXPECT_NEAR(std::abs(back(z) - f(z)), 0.0, 1e-13);
  }
}

TEST(Normalize, Rejects) {
  const HarmonicMap conj_map(AnalyticFunction::zero(), AnalyticFunction::identity(), "conj z");
  EXPECT_THROW(normalize(conj_map), SingularDerivativeError);
  const HarmonicMap flat(AnalyticFunction::identity(), AnalyticFunction::identity(), "2 Re z");
  EXPECT_THROW(normalize(flat), PreconditionError);
}

TEST(Json, BudgetFields) {
  const auto b = epsilon_budget(gallery::get("h0"), Perturbation::conj_z(), 0.5,
                                OrderParam::analytic_case());
  const auto j = to_json(b);
  EXPECT_EQ(j["schema_version"], kSchemaVersion);
  EXPECT_EQ(j["alpha_provenance"], "analytic-case");
  EXPECT_DOUBLE_EQ(j["epsilon0"].get<double>(), b.epsilon0);
}
