#include <gtest/gtest.h>

#include <cmath>

#include "umcert/certify.hpp"
#include "umcert/report.hpp"

namespace umcert {
namespace {

Rational Q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

CertifyOptions up_to(int k, int jobs = 1) {
  CertifyOptions o;
  o.limits.k_max = k;
  o.jobs = jobs;
  return o;
}

TEST(Presets, MinimalPolynomials) {
  EXPECT_EQ(alpha_preset("sqrt2").minpoly(), (IntPolynomial{-2, 0, 1}));
  EXPECT_EQ(alpha_preset("cbrt2").minpoly(), (IntPolynomial{-2, 0, 0, 1}));
  EXPECT_EQ(alpha_preset("golden").minpoly(), (IntPolynomial{-1, -1, 1}));
  EXPECT_EQ(alpha_preset("fourthroot2").minpoly(), (IntPolynomial{-2, 0, 0, 0, 1}));
  EXPECT_EQ(alpha_preset("golden").sign(), 1);
  EXPECT_THROW(alpha_preset("pi"), Error);
  EXPECT_EQ(parse_op_kind("sum"), OpKind::sum);
  EXPECT_THROW(parse_op_kind("quotient"), Error);
}

TEST(Gamma, HeightsOfTheFirstApproximants) {
  const auto a = alpha_preset("sqrt2");
  const std::vector<long long> product = {50, 5000, 500000000000LL};
  const std::vector<long long> sum = {199, 19879, 1987899779999LL};
  for (int k = 1; k <= 3; ++k) {
    EXPECT_EQ(gamma(a, OpKind::product, k).height(), Integer(std::to_string(product[k - 1])));
    EXPECT_EQ(gamma(a, OpKind::sum, k).height(), Integer(std::to_string(sum[k - 1])));
  }
  EXPECT_EQ(gamma(alpha_preset("cbrt2"), OpKind::sum, 1).minpoly(),
            (IntPolynomial{-2001, 30, -300, 1000}));
  EXPECT_EQ(gamma(alpha_preset("golden"), OpKind::product, 1).minpoly(),
            (IntPolynomial{-1, -10, 100}));
  EXPECT_EQ(height_factor(a, OpKind::product), 1);
  EXPECT_EQ(height_factor(a, OpKind::sum), 8);
  EXPECT_THROW(gamma(RealAlgebraic::from_rational(0), OpKind::product, 1), Error);
}

TEST(Gamma, HeightGrowthStaysWithinTheTransformBound) {
  for (const char* name : {"sqrt2", "cbrt2", "golden"}) {
    const auto a = alpha_preset(name);
    const auto um = static_cast<unsigned long>(a.degree());
    for (const OpKind kind : {OpKind::product, OpKind::sum}) {
      for (int k = 1; k <= 5; ++k) {
        const Integer q = pow10(factorial(static_cast<unsigned long>(k)).get_ui());
        const Integer h = gamma(a, kind, k).height();
        EXPECT_LE(h, height_factor(a, kind) * a.height() * ipow(q, um));
        EXPECT_GE(h, q);
      }
    }
  }
}

TEST(Certify, SqrtTwoProductChain) {
  const auto a = alpha_preset("sqrt2");
  const auto records = certify_chain(a, OpKind::product, up_to(6));
  ASSERT_EQ(records.size(), 6u);
  const std::vector<Rational> omega = {Q(1088566, 1000000), Q(1581382, 1000000),
                                       Q(2038597, 1000000)};
  for (const auto& r : records) {
    EXPECT_EQ(r.eq3.verdict, Verdict::pass) << r.k;
    EXPECT_EQ(r.eq5, Verdict::pass) << r.k;
    EXPECT_EQ(r.eq4_corrected.verdict, Verdict::pass) << r.k;
    EXPECT_TRUE(r.eq5_identity);
    if (r.k <= 3) EXPECT_EQ(r.omega_k, omega[static_cast<std::size_t>(r.k) - 1]) << r.k;
    EXPECT_LE(abs(r.omega_k - Q(r.k + 1, 2)), Q(3, 10));
  }
  EXPECT_GT(records[1].gap.lo(), Q(141, 100'000'000));
  EXPECT_LT(records[1].gap.hi(), Q(1415, 1'000'000'000));
  // The printed form with c A^(k+1) H^-(k+1) fails at every index.
  EXPECT_EQ(records[0].eq4_literal.verdict, Verdict::fail);
}

TEST(Certify, ExponentReadingsInWindow) {
  const auto records = certify_chain(alpha_preset("sqrt2"), OpKind::product, up_to(5));
  auto verdict = [&](int k, const std::string& tag) {
    for (const auto& e : records[static_cast<std::size_t>(k) - 1].eq9)
      if (e.tag == tag) return e.check.verdict;
    return Verdict::inconclusive;
  };
  EXPECT_EQ(verdict(1, "derived"), Verdict::outside_regime);
  EXPECT_EQ(verdict(2, "derived"), Verdict::fail);
  EXPECT_EQ(verdict(2, "grouped"), Verdict::pass);
  for (int k = 3; k <= 5; ++k)
    for (const char* tag : {"literal", "grouped", "derived"}) EXPECT_EQ(verdict(k, tag), Verdict::pass);
  EXPECT_EQ(eq9_scaled_exponent("literal", 2, 3), 13u);
  EXPECT_EQ(eq9_scaled_exponent("grouped", 2, 3), 4u);
  EXPECT_EQ(eq9_scaled_exponent("derived", 2, 3), 17u);
  EXPECT_THROW(eq9_scaled_exponent("other", 2, 3), Error);
}

TEST(Certify, AllPresetsBothKinds) {
  for (const char* name : {"sqrt2", "cbrt2", "golden"}) {
    const auto a = alpha_preset(name);
    for (const OpKind kind : {OpKind::product, OpKind::sum}) {
      const auto records = certify_chain(a, kind, up_to(6));
      for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        EXPECT_EQ(r.eq3.verdict, Verdict::pass);
        EXPECT_EQ(r.eq5, Verdict::pass);
        for (const auto& e : r.eq9) {
          if (r.k >= 2 * e.n) EXPECT_NE(e.check.verdict, Verdict::inconclusive);
          else EXPECT_EQ(e.check.verdict, Verdict::outside_regime);
        }
        if (r.k >= 3) EXPECT_GT(r.omega.lo(), records[i - 1].omega.hi()) << name << " " << r.k;
      }
      const auto s = report::summarize(records, false);
      EXPECT_EQ(s.exit_status, 0) << name;
    }
  }
}

TEST(Certify, ParallelRunsMatch) {
  const auto a = alpha_preset("cbrt2");
  const auto one = certify_chain(a, OpKind::sum, up_to(6, 1));
  const auto many = certify_chain(a, OpKind::sum, up_to(6, 8));
  const auto s = report::summarize(one, false);
  EXPECT_EQ(report::certificate_json(a, OpKind::sum, one, s).dump(),
            report::certificate_json(a, OpKind::sum, many, s).dump());
}

TEST(Certify, Guards) {
  EXPECT_THROW(certify_chain(RealAlgebraic::from_rational(0), OpKind::product), Error);
  CertifyOptions big;
  big.limits.k_max = 9;
  EXPECT_THROW(certify_chain(alpha_preset("sqrt2"), OpKind::product, big), Error);
}

TEST(KeyIndex, SqrtTwo) {
  const auto a = alpha_preset("sqrt2");
  const auto r = key_index(a, Integer(10), OpKind::product);
  EXPECT_EQ(r.k, 2);  // 5000 < 10^8 <= 5 * 10^11
  EXPECT_TRUE(r.pass_upper);
  EXPECT_EQ(r.h_gamma_k, 5000);
  EXPECT_THROW(key_index(a, Integer(1), OpKind::product), Error);
  EXPECT_THROW(key_index_for_threshold(a, Integer(50), OpKind::product), Error);
  EXPECT_THROW(key_index(a, pow10(400), OpKind::product, {3, false}), Error);
}

TEST(KeyIndexProperty, ThresholdJustAboveEachHeight) {
  for (const char* name : {"sqrt2", "cbrt2", "golden"}) {
    const auto a = alpha_preset(name);
    for (const OpKind kind : {OpKind::product, OpKind::sum}) {
      for (int k = 1; k <= 5; ++k) {
        const Integer h = gamma(a, kind, k).height();
        const auto r = key_index_for_threshold(a, h + 1, kind);
        EXPECT_EQ(r.k, k);
        EXPECT_LT(r.h_gamma_k, h + 1);
        EXPECT_LE(h + 1, r.h_gamma_next);
      }
    }
  }
}

TEST(Constants, SeparationAndExponentCeiling) {
  EXPECT_NEAR(f_constant(2, 1).get_d(), 0.1020620726, 1e-10);
  EXPECT_EQ(wstar_upper(2, 1), 9);
  EXPECT_EQ(wstar_upper(3, 2), 38);
  EXPECT_EQ(wstar_upper(3, 1), 20);
  EXPECT_THROW(f_constant(2, 2), Error);
  EXPECT_THROW(wstar_upper(1, 1), Error);
}

TEST(FinalBound, RationalApproximantsToSqrtTwoTimesL) {
  const auto a = alpha_preset("sqrt2");
  for (const Rational& r : {Q(7, 45), Q(1, 6), Q(-1, 2), Q(3)}) {
    const auto res = final_bound_check(a, OpKind::product, RealAlgebraic::from_rational(r));
    EXPECT_EQ(res.verdict, Verdict::pass) << r;
    EXPECT_GT(res.margin, 0);
  }
  EXPECT_THROW(final_bound_check(a, OpKind::product, a), Error);
}

TEST(Decompose, HalfPartsAndRecombination) {
  const auto d = DigitLiouville::alt12();
  const auto rep2 = corollary_decompose(d, 2, {5, false});
  EXPECT_EQ(rep2.left.algebraic_part.minpoly(), (IntPolynomial{-1, 0, 2}));
  EXPECT_EQ(rep2.right.algebraic_part.minpoly(), (IntPolynomial{-1, 0, 2}));
  EXPECT_EQ(rep2.left.algebraic_part.sign(), 1);
  EXPECT_EQ(rep2.right.algebraic_part.sign(), -1);
  EXPECT_TRUE(rep2.pass);
  ASSERT_EQ(rep2.steps.size(), 5u);
  for (const auto& s : rep2.steps) {
    EXPECT_TRUE(s.degree_ok);
    EXPECT_TRUE(s.gaps_match);
  }
  for (const auto& l : rep2.levels) EXPECT_TRUE(l.recombines);

  const auto rep3 = corollary_decompose(d, 3, {5, false});
  EXPECT_EQ(rep3.left.algebraic_part.minpoly(), (IntPolynomial{-1, 0, 0, 4}));
  EXPECT_EQ(rep3.right.algebraic_part.minpoly(), (IntPolynomial{1, 0, 0, 4}));
  EXPECT_TRUE(rep3.pass);

  EXPECT_THROW(corollary_decompose(DigitLiouville::ones(3), 2), Error);
  EXPECT_THROW(corollary_decompose(DigitLiouville::parse("base=10\n3"), 2), Error);
}

TEST(QuadraticField, Elements) {
  const auto els = quadratic_field_elements(2, Integer(2));
  bool has_sqrt2 = false;
  for (const auto& e : els) {
    EXPECT_LE(e.height(), 2);
    if (e.degree() == 2) {
      const auto c = e.minpoly().coeffs();
      const Integer disc = c[1] * c[1] - 4 * c[0] * c[2];
      EXPECT_TRUE(disc % 2 == 0 && is_perfect_square(disc / 2));
    }
    if (same_number(e, alpha_preset("sqrt2"))) has_sqrt2 = true;
  }
  EXPECT_TRUE(has_sqrt2);
  EXPECT_THROW(quadratic_field_elements(4, Integer(3)), Error);
  EXPECT_THROW(quadratic_field_elements(1, Integer(3)), Error);
  EXPECT_THROW(quadratic_field_elements(-1, Integer(3)), Error);
}

TEST(SchmidtProbe, RatioForSqrtTwoAgainstThreeHalves) {
  const auto rep = schmidt_probe(2, Integer(3), Q(0), 100000);
  bool found = false;
  for (const auto& r : rep.rows) {
    if (same_number(r.a, RealAlgebraic::from_rational(Q(3, 2))) && same_number(r.b, alpha_preset("sqrt2"))) {
      found = true;
      EXPECT_EQ(r.h, 3);
      EXPECT_NEAR(r.ratio.lo().get_d(), 0.772077938642, 1e-9);
    }
    if (same_number(r.b, RealAlgebraic::from_rational(Q(3, 2))) && same_number(r.a, alpha_preset("sqrt2"))) {
      found = true;
      EXPECT_NEAR(r.ratio.lo().get_d(), 0.772077938642, 1e-9);
    }
  }
  EXPECT_TRUE(found);
  for (std::size_t i = 1; i < rep.rows.size(); ++i)
    EXPECT_LE(rep.rows[i - 1].ratio.lo(), rep.rows[i].ratio.lo());
  EXPECT_THROW(schmidt_probe(2, Integer(3), Q(-1)), Error);
}

TEST(SchmidtProbe, ParallelRunsMatch) {
  const auto a = report::probe_json(schmidt_probe(3, Integer(6), Q(1, 10), 20, 1)).dump();
  const auto b = report::probe_json(schmidt_probe(3, Integer(6), Q(1, 10), 20, 8)).dump();
  EXPECT_EQ(a, b);
}

}  // namespace
}  // namespace umcert
