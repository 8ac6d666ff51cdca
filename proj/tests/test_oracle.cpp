#include <cmath>

#include <gtest/gtest.h>

#include "harmap/gallery.hpp"
#include "harmap/oracle.hpp"

using namespace harmap;

namespace {

HarmonicMap fold() { return HarmonicMap(AnalyticFunction::series({1.0, 2.0}), "z + 2z^2"); }

}  // namespace

TEST(Sunflower, StaysInsideDisk) {
  const auto pts = sunflower_points(400, 0.99);
  ASSERT_EQ(pts.size(), 400u);
  for (const Complex z : pts) EXPECT_LE(std::abs(z), 0.99);
  EXPECT_GT(std::abs(pts.back()), 0.98);
}

TEST(Injectivity, IdentityHolds) {
  const auto r = injectivity_scan(gallery::get("identity"));
  EXPECT_TRUE(r.holds());
  EXPECT_NEAR(r.margin, 1.0, 1e-12);
}

TEST(Injectivity, UnivalentGalleryHolds) {
  for (const auto& name : {"cayley", "koebe", "h0", "h1"}) {
    EXPECT_TRUE(injectivity_scan(gallery::get(name)).holds()) << name;
  }
  EXPECT_TRUE(injectivity_scan(gallery::get("f_k", {{"k", 0.5}})).holds());
}

TEST(Injectivity, DetectsEqualImages) {
  // z^2 identifies z and -z
  const HarmonicMap square(AnalyticFunction::series({0.0, 1.0}), "z^2");
  const auto r = injectivity_scan(square, std::vector<Complex>{{0.3, 0.1}, {-0.3, -0.1}, {0.5, 0.0}});
  EXPECT_EQ(r.verdict, Verdict::Violated);
  EXPECT_LE(r.margin, 1e-15);
}

TEST(Injectivity, Preconditions) {
  EXPECT_THROW(injectivity_scan(gallery::get("identity"), 10), PreconditionError);
}

TEST(Jacobian, PositiveForSensePreserving) {
  const auto r = jacobian_positivity_scan(gallery::get("f_k", {{"k", 0.5}}), {20, 48, 0.9});
  EXPECT_TRUE(r.holds());
  // J = 0.75 |1 + z|^2, smallest at z = -0.9
  EXPECT_NEAR(r.margin, 0.75 * 0.01, 1e-12);
}

TEST(Jacobian, SenseReversalDetected) {
  // z + conj(z^2): J = 1 - 4|z|^2
  const HarmonicMap f(AnalyticFunction::identity(), AnalyticFunction::series({0.0, 1.0}), "fold");
  const auto r = jacobian_positivity_scan(f, {20, 48, 0.9});
  EXPECT_EQ(r.verdict, Verdict::Violated);
  EXPECT_NEAR(r.margin, 1.0 - 4.0 * 0.81, 1e-12);
}

TEST(Segments, IntersectionPredicate) {
  using detail::segments_intersect;
  EXPECT_TRUE(segments_intersect({0, 0}, {1, 1}, {0, 1}, {1, 0}, 0.0));
  EXPECT_FALSE(segments_intersect({0, 0}, {1, 0}, {0, 1}, {1, 1}, 0.0));
  EXPECT_TRUE(segments_intersect({0, 0}, {2, 0}, {1, 0}, {3, 0}, 0.0));
  EXPECT_FALSE(segments_intersect({0, 0}, {1, 0}, {2, 0}, {3, 0}, 0.0));
  EXPECT_TRUE(segments_intersect({0, 0}, {2, 0}, {1, 0}, {1, 5}, 0.0));
  EXPECT_NEAR(detail::segment_distance({0, 0}, {1, 0}, {0, 1}, {1, 2}), 1.0, 1e-15);
}

TEST(Segments, WindingNumber) {
  std::vector<Complex> square = {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
  EXPECT_EQ(detail::winding_number(square, {0, 0}), 1);
  EXPECT_EQ(detail::winding_number(square, {3, 0}), 0);
  std::reverse(square.begin(), square.end());
  EXPECT_EQ(detail::winding_number(square, {0, 0}), -1);
}

TEST(CurveSimplicity, CircleIsSimple) {
  const auto r = curve_simplicity(gallery::get("identity"), 0.5);
  EXPECT_TRUE(r.holds());
  EXPECT_GT(r.margin, 0.0);
  EXPECT_EQ(r.metadata.at("winding_about_f0"), 1.0);
}

TEST(CurveSimplicity, FoldLoops) {
  const auto r = curve_simplicity(fold(), 0.9);
  EXPECT_EQ(r.verdict, Verdict::Violated);
  EXPECT_EQ(r.margin, 0.0);
}

TEST(CurveSimplicity, DoubleCoverIsNotSimple) {
  const HarmonicMap square(AnalyticFunction::series({0.0, 1.0}), "z^2");
  EXPECT_EQ(curve_simplicity(square, 0.5).verdict, Verdict::Violated);
}

TEST(CurveSimplicity, SenseReversingStillSimple) {
  // conj(z): simple curve traversed clockwise
  const HarmonicMap conj_map(AnalyticFunction::zero(), AnalyticFunction::identity(), "conj z");
  const auto r = curve_simplicity(conj_map, 0.7);
  EXPECT_TRUE(r.holds());
  EXPECT_EQ(r.metadata.at("winding_about_f0"), -1.0);
}

TEST(CurveSimplicity, Preconditions) {
  EXPECT_THROW(curve_simplicity(gallery::get("identity"), 0.5, 10), PreconditionError);
  EXPECT_THROW(curve_simplicity(gallery::get("identity"), 1.0), PreconditionError);
}
