#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "harmap/criteria.hpp"
#include "harmap/gallery.hpp"
#include "harmap/structural.hpp"
#include "test_support.hpp"

using namespace harmap;

namespace {

std::function<Complex(Complex)> inverse_of(const HarmonicMap& f) {
  return [f](Complex w) { return invert(f, w); };
}

}  // namespace

TEST(Measure, Validation) {
  EXPECT_NO_THROW(DiscreteMeasure({{0.0, 0.5}, {kPi, 0.5}}));
  EXPECT_THROW(DiscreteMeasure({{0.0, 0.5}, {kPi, 0.4}}), PreconditionError);
  EXPECT_THROW(DiscreteMeasure({{1.0, 0.5}, {0.5, 0.5}}), PreconditionError);
  EXPECT_THROW(DiscreteMeasure({{1.0, 0.5}, {1.0, 0.5}}), PreconditionError);
  EXPECT_THROW(DiscreteMeasure({{kTwoPi, 1.0}}), PreconditionError);
  EXPECT_THROW(DiscreteMeasure({{0.0, 1.5}, {1.0, -0.5}}), PreconditionError);
  EXPECT_THROW(DiscreteMeasure({}), PreconditionError);
}

TEST(Params, Validation) {
  EXPECT_THROW((StructuralParams{0.0, 0.0, {}}.validate()), PreconditionError);
  EXPECT_THROW((StructuralParams{-1.0, 0.0, {}}.validate()), PreconditionError);
  EXPECT_NO_THROW((StructuralParams{0.1, -3.0, {1.0, 2.0}}.validate()));
}

TEST(Herglotz, Values) {
  std::mt19937 rng(5);
  EXPECT_NEAR(std::abs(herglotz_p(test_support::random_measure(rng, 6), 0.0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(herglotz_p(DiscreteMeasure::point_mass(0.0), 0.5) - 3.0), 0.0, 1e-15);
  const DiscreteMeasure two({{0.0, 0.5}, {kPi, 0.5}});
  // (1 + z^2)/(1 - z^2) at z = i/2
  EXPECT_NEAR(std::abs(herglotz_p(two, {0.0, 0.5}) - 0.6), 0.0, 1e-15);
  EXPECT_THROW(herglotz_p(two, 1.0), DomainError);
}

TEST(Herglotz, PositiveRealPart) {
  std::mt19937 rng(17);
  const GridSpec grid{30, 72, 0.99};
  const auto samples = grid.samples();
  for (int trial = 0; trial < 50; ++trial) {
    const auto mu = test_support::random_measure(rng, 6);
    for (const Complex z : samples) ASSERT_GT(herglotz_p(mu, z).real(), 0.0);
  }
}

TEST(BuildPhi, Values) {
  const auto id = gallery::get("identity");
  const auto mu = DiscreteMeasure::point_mass(0.0);
  EXPECT_NEAR(std::abs(build_phi(inverse_of(id), mu, {1.0, 0.0, {}}, 0.0)), 0.0, 1e-15);
  // -[0.5 + 2 log(0.5)] = 2 log 2 - 0.5
  EXPECT_NEAR(std::abs(build_phi(inverse_of(id), mu, {1.0, 0.0, {}}, 0.5) -
                       (2.0 * std::log(2.0) - 0.5)),
              0.0, 1e-14);
  EXPECT_NEAR(std::abs(build_phi(inverse_of(id), mu, {1.0, 0.0, {1.0, 2.0}}, 0.0) - Complex(1.0, 2.0)),
              0.0, 1e-15);
  EXPECT_THROW(build_phi([](Complex) { return Complex{1.0, 0.0}; }, mu, {}, 0.0), DomainError);
}

TEST(StructuralIdentity, IdentityPointMass) {
  const double dev = verify_structural_identity(AnalyticFunction::identity(),
                                                DiscreteMeasure::point_mass(0.0), {}, {20, 48, 0.8});
  EXPECT_LE(dev, 1e-8);
}

TEST(StructuralIdentity, CayleyThreeAtoms) {
  std::mt19937 rng(23);
  const DiscreteMeasure mu({{0.4, 0.2}, {2.5, 0.5}, {5.0, 0.3}});
  const double dev =
      verify_structural_identity(gallery::get("cayley").h(), mu, {2.0, -1.0, {0.3, 0.1}}, {20, 48, 0.8});
  EXPECT_LE(dev, 1e-5);
}

TEST(StructuralIdentity, PointMassAtPiDerivativeAtOrigin) {
  // derivative of phi o f is (1 - z)/(1 + z), equal to 1 at the origin
  const auto mu = DiscreteMeasure::point_mass(kPi);
  EXPECT_NEAR(std::abs(herglotz_p(mu, 0.0) - 1.0), 0.0, 1e-15);
  EXPECT_LE(verify_structural_identity(AnalyticFunction::identity(), mu, {}, {10, 24, 0.7}), 1e-8);
}

TEST(StructuralIdentity, RandomCombinations) {
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> c_dist(0.05, 5.0);
  std::uniform_real_distribution<double> c1_dist(-3.0, 3.0);
  const std::vector<AnalyticFunction> maps = {AnalyticFunction::identity(),
                                              gallery::get("cayley").h(),
                                              gallery::get("koebe").h()};
  for (int trial = 0; trial < 20; ++trial) {
    const auto& f = maps[static_cast<std::size_t>(trial) % maps.size()];
    const double r_max = trial % 3 == 2 ? 0.7 : 0.8;
    const StructuralParams params{c_dist(rng), c1_dist(rng), {0.5, -0.5}};
    const double dev =
        verify_structural_identity(f, test_support::random_measure(rng, 6), params, {12, 32, r_max});
    EXPECT_LE(dev, 1e-5) << "trial " << trial;
  }
}

TEST(StructuralIdentity, CriterionClosure) {
  // Re d/dz phi(f(z)) = c Re p(z) > 0 on the grid for every admissible phi
  std::mt19937 rng(31);
  const auto f = gallery::get("cayley").h();
  const HarmonicMap map(f, "cayley");
  for (int trial = 0; trial < 5; ++trial) {
    const auto mu = test_support::random_measure(rng, 4);
    const StructuralParams params{1.5, 0.7, {}};
    constexpr double step = 1e-6;
    for (const Complex z : GridSpec{6, 16, 0.8}.samples()) {
      auto phi_of_f = [&](Complex s) {
        return build_phi([&](Complex w) { return invert(map, w, s); }, mu, params, f(s));
      };
      const Complex d = (phi_of_f(z + step) - phi_of_f(z - step)) / (2.0 * step);
      EXPECT_GT(d.real(), 0.0);
    }
  }
}

TEST(BigPhi, Values) {
  const auto id = AnalyticFunction::identity();
  EXPECT_NEAR(std::abs(build_big_phi(id, [](Complex) { return Complex{1.0, 0.0}; }, 0.0, {0.3, 0.1}) -
                       Complex(0.3, 0.1)),
              0.0, 1e-14);
  EXPECT_NEAR(std::abs(build_big_phi(id, [](Complex) { return Complex{2.0, 0.0}; }, 0.0, 0.4) - 0.2),
              0.0, 1e-14);
  EXPECT_THROW(build_big_phi(id, [](Complex) { return Complex{}; }, 0.0, 0.4),
               SingularDerivativeError);
}

TEST(BigPhi, KoebeFromStructuralPhiIsPhiLike) {
  // phi from the structural formula with a point mass at pi; Phi built from its
  // derivative must make the Koebe function Phi-like
  const auto koebe = gallery::get("koebe");
  const auto mu = DiscreteMeasure::point_mass(kPi);
  const StructuralParams params{};
  auto phi = [&](Complex w) {
    return build_phi([&](Complex v) { return invert(koebe, v); }, mu, params, w);
  };
  auto phi_prime = [&](Complex w) {
    // derivative along the image: phi'(w) = d/dz phi(f(z)) / f'(z)
    const Complex z = invert(koebe, w);
    constexpr double step = 1e-6;
    const Complex d = (phi(koebe(z + step)) - phi(koebe(z - step))) / (2.0 * step);
    return d / koebe.h().derivative(z);
  };
  const AnalyticFunction Phi{[&](Complex w) { return build_big_phi(koebe.h(), phi_prime, 0.0, w); },
                             [](Complex) { return Complex{1.0, 0.0}; },  // Phi'(0) = f'(0)/p(0)
                             1.0, "Phi"};
  const auto r = check_philike(koebe.h(), Phi, {8, 24, 0.7});
  EXPECT_TRUE(r.holds());
  EXPECT_GT(r.margin, 0.0);
}

TEST(Invert, KnownPreimages) {
  EXPECT_NEAR(std::abs(invert(gallery::get("identity"), {0.3, -0.2}) - Complex(0.3, -0.2)), 0.0,
              1e-14);
  EXPECT_NEAR(std::abs(invert(gallery::get("h0"), 0.625) - 0.5), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(invert(gallery::get("f_k", {{"k", 0.5}}), 0.9375) - 0.5), 0.0, 1e-12);
}

TEST(Invert, RoundTripOnUnivalentGallery) {
  std::mt19937 rng(37);
  const std::vector<std::pair<std::string, gallery::Params>> maps = {
      {"identity", {}}, {"cayley", {}}, {"koebe", {}}, {"h0", {}},
      {"f_k", {{"k", 0.5}}}, {"h1", {}}, {"F_eps", {{"r", 0.5}, {"eps", 0.01}}}};
  for (const auto& [name, params] : maps) {
    const auto f = gallery::get(name, params);
    for (int i = 0; i < 100; ++i) {
      const Complex z = test_support::random_disk_point(rng, 0.9);
      const Complex back = invert(f, f(z));
      ASSERT_LE(std::abs(back - z), 1e-10) << name << " at " << z;
    }
  }
}

TEST(Invert, FailureCarriesResidual) {
  // w = 5 is not attained by the identity on the unit disk
  try {
    invert(gallery::get("identity"), 5.0);
    FAIL() << "expected InversionError";
  } catch (const InversionError& e) {
    EXPECT_GT(e.best_residual(), 3.9);
    EXPECT_EQ(e.target(), Complex(5.0, 0.0));
  }
}

TEST(Invert, InverseWirtingerDerivatives) {
  const auto f = gallery::get("f_k", {{"k", 0.4}});
  const auto inv = make_inverse(f);
  const Complex w = f(Complex{0.2, 0.3});
  const auto fd = wirtinger_finite_difference(inv.eval, w);
  EXPECT_NEAR(std::abs(fd.dz - inv.dw(w)), 0.0, 1e-6);
  EXPECT_NEAR(std::abs(fd.dzbar - inv.dwbar(w)), 0.0, 1e-6);
  const auto d = composed_wirtinger(f, inv, {0.2, 0.3});
  EXPECT_NEAR(std::abs(d.dz - 1.0), 0.0, 1e-8);
  EXPECT_NEAR(std::abs(d.dzbar), 0.0, 1e-8);
}
