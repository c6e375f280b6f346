#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "umcert/certify.hpp"
#include "umcert/transforms.hpp"

namespace umcert {
namespace {

using testing::Gen;

Rational Q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

RealAlgebraic sqrt2() { return alpha_preset("sqrt2"); }

TEST(Transforms, ScaleAndShiftCoefficients) {
  // P = x^2 - 2, a/b = 3/5.
  const IntPolynomial p{-2, 0, 1};
  EXPECT_EQ(scale_poly(p, Integer(3), Integer(5)), (IntPolynomial{-18, 0, 25}));
  // 25 (x - 3/5)^2 - 50 = 25x^2 - 30x - 41
  EXPECT_EQ(shift_poly(p, Integer(3), Integer(5)), (IntPolynomial{-41, -30, 25}));
}

TEST(TransformsProperty, HeightBoundsAndPointIdentities) {
  Gen g(101);
  for (int t = 0; t < 10000; ++t) {
    const int m = static_cast<int>(g.integer(1, 6));
    const IntPolynomial p = g.polynomial(m, 1000);
    const Integer a = g.nonzero(-1000, 1000);
    const Integer b = g.nonzero(-1000, 1000);
    const TransformHeightReport r = lemma1_check(p, a, b);
    ASSERT_TRUE(r.pass_i) << format_coeffs(p) << " a=" << a << " b=" << b;
    ASSERT_TRUE(r.pass_ii) << format_coeffs(p) << " a=" << a << " b=" << b;
    ASSERT_LE(r.h_q1, r.bound_i);
    ASSERT_LE(r.h_q2, r.bound_ii);
    const Rational am = rpow(Rational(a), m);
    const Rational bm = rpow(Rational(b), m);
    for (int i = 0; i < m + 2; ++i) {
      const Rational x = g.rational(50, 20);
      ASSERT_EQ(r.q1(x), am * p(Rational(b) * x / Rational(a)));
      ASSERT_EQ(r.q2(x), bm * p(x - Rational(a) / Rational(b)));
    }
  }
}

TEST(Transforms, MinimalPolynomialsAtSecondTruncation) {
  const Rational a2(11, 100);
  EXPECT_EQ(minpoly_scale(sqrt2(), a2).minpoly(), (IntPolynomial{-121, 0, 5000}));
  EXPECT_EQ(minpoly_shift(sqrt2(), a2).minpoly(), (IntPolynomial{-19879, -2200, 10000}));
  const auto cbrt2 = alpha_preset("cbrt2");
  EXPECT_EQ(minpoly_scale(cbrt2, a2).minpoly(), (IntPolynomial{-1331, 0, 0, 500000}));
  EXPECT_EQ(minpoly_shift(cbrt2, a2).minpoly(),
            (IntPolynomial{-2001331, 36300, -330000, 1000000}));
  const auto golden = alpha_preset("golden");
  EXPECT_EQ(minpoly_scale(golden, a2).minpoly(), (IntPolynomial{-121, -1100, 10000}));
  EXPECT_EQ(minpoly_shift(golden, a2).minpoly(), (IntPolynomial{-8779, -12200, 10000}));
  EXPECT_EQ(minpoly_shift(golden, Q(1, 10)).minpoly(), (IntPolynomial{-89, -120, 100}));
}

TEST(Transforms, ResultsIsolateTheRightRoot) {
  const auto g = minpoly_scale(sqrt2(), Q(-11, 100));
  EXPECT_EQ(g.sign(), -1);
  EXPECT_NEAR(refine(g, Q(1, 1'000'000'000)).midpoint().get_d(), -0.11 * std::sqrt(2.0), 1e-9);
  const auto s = minpoly_shift(alpha_preset("cbrt2"), Q(-1));
  EXPECT_NEAR(refine(s, Q(1, 1'000'000'000)).midpoint().get_d(), std::cbrt(2.0) - 1, 1e-9);
}

TEST(Transforms, DegenerateInputs) {
  EXPECT_THROW(minpoly_scale(sqrt2(), Q(0)), Error);
  EXPECT_TRUE(same_number(minpoly_scale(sqrt2(), Q(1)), sqrt2()));
  EXPECT_TRUE(same_number(minpoly_shift(sqrt2(), Q(0)), sqrt2()));
  // Rational inputs stay rational.
  const auto r = minpoly_shift(RealAlgebraic::from_rational(Q(1, 3)), Q(1, 6));
  EXPECT_EQ(r.as_rational(), Q(1, 2));
}

TEST(TransformsProperty, ScaleAndShiftMapRootsAndPreserveDegree) {
  Gen g(102);
  const std::vector<RealAlgebraic> base = {sqrt2(), alpha_preset("cbrt2"), alpha_preset("golden"),
                                           alpha_preset("fourthroot2")};
  for (int t = 0; t < 200; ++t) {
    const RealAlgebraic& a = base[static_cast<std::size_t>(t) % base.size()];
    Rational r = g.rational(200, 200);
    if (r == 0) r = 1;
    const Rational w(1, 1'000'000'000);
    const Enclosure ea = refine(a, w);
    const auto s = minpoly_scale(a, r);
    const auto h = minpoly_shift(a, r);
    EXPECT_EQ(s.degree(), a.degree());
    EXPECT_EQ(h.degree(), a.degree());
    EXPECT_FALSE(disjoint(refine(s, w), r * ea));
    EXPECT_FALSE(disjoint(refine(h, w), ea + Enclosure::point(r)));
    EXPECT_TRUE(is_irreducible(s.minpoly()));
    EXPECT_TRUE(is_irreducible(h.minpoly()));
  }
}

TEST(Separation, Constants) {
  const Rational f = separation_lower_bound(1, 2, Integer(1), Integer(1));
  EXPECT_NEAR(f.get_d(), 1.0 / (2.0 * std::sqrt(24.0)), 1e-13);
  EXPECT_LE(f.get_d(), 1.0 / (2.0 * std::sqrt(24.0)));
  EXPECT_EQ(f, f_constant(2, 1));
  // n = m = 1: 1 / (4 H1 H2), exact.
  for (long h1 : {1, 3, 10})
    for (long h2 : {1, 7, 20})
      EXPECT_EQ(separation_lower_bound(1, 1, Integer(h1), Integer(h2)), Q(1, 4 * h1 * h2));
}

TEST(Separation, BoundIsAttainedForRationals) {
  // 1/2 and 1/3: distance 1/6 against 1/24.
  const auto r = lemma2_check(RealAlgebraic::from_rational(Q(1, 2)), RealAlgebraic::from_rational(Q(1, 3)));
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.bound, Q(1, 24));
  EXPECT_EQ(r.distance, Enclosure::point(Q(1, 6)));
  EXPECT_THROW(lemma2_check(sqrt2(), sqrt2()), Error);
  EXPECT_THROW(lemma2_check(sqrt2(), RealAlgebraic::from_rational(0)), Error);
}

TEST(SeparationProperty, RandomPairsOfSmallDegree) {
  Gen g(103);
  int checked = 0;
  for (int t = 0; t < 400; ++t) {
    std::vector<RealAlgebraic> pick;
    while (pick.size() < 2) {
      const int d = static_cast<int>(g.integer(1, 3));
      const IntPolynomial p = primitive_canonical(g.polynomial(d, 8));
      if (p.coeff(0) == 0 || !is_irreducible(p)) continue;
      const auto roots = isolate_real_roots(p);
      if (roots.empty()) continue;
      pick.push_back(RealAlgebraic::from_root_index(
          p, static_cast<std::size_t>(g.integer(0, static_cast<long>(roots.size()) - 1))));
    }
    if (same_number(pick[0], pick[1])) continue;
    EXPECT_TRUE(lemma2_check(pick[0], pick[1]).pass);
    ++checked;
  }
  EXPECT_GT(checked, 350);
}

}  // namespace
}  // namespace umcert
