#include "ewalk/diophantine.hpp"

#include <gtest/gtest.h>

using namespace ewalk;

namespace {

std::vector<big_int> ints(std::initializer_list<int> v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(ContinuedFraction, Rationals) {
  const auto c = cf::expand(FieldSpec::rational(51, 256), 20);
  EXPECT_EQ(c.coefficients, ints({0, 5, 51}));
  EXPECT_TRUE(c.exact);
  EXPECT_EQ(c.to_string(), "(0; 5, 51)");
  EXPECT_EQ(c.value(), rational(51, 256));
  EXPECT_EQ(cf::expand(FieldSpec::parse("0.5", 10), 20).coefficients, ints({0, 2}));
  EXPECT_EQ(cf::expand(rational(0), 5).coefficients, ints({0}));
}

TEST(ContinuedFraction, ConvergentRecurrence) {
  const auto conv = cf::convergents(ints({0, 5, 51}));
  ASSERT_EQ(conv.size(), 3u);
  EXPECT_EQ(conv[0].q, 1);
  EXPECT_EQ(conv[1].n, 1);
  EXPECT_EQ(conv[1].q, 5);
  EXPECT_EQ(conv[2].n, 51);
  EXPECT_EQ(conv[2].q, 256);
}

TEST(ContinuedFraction, GoldenIsAllOnes) {
  const auto c = cf::expand(FieldSpec::golden(300), 200);
  ASSERT_GT(c.coefficients.size(), 100u);
  EXPECT_EQ(c.coefficients[0], 0);
  for (std::size_t i = 1; i < c.coefficients.size(); ++i) EXPECT_EQ(c.coefficients[i], 1) << i;
  EXPECT_FALSE(c.exact);
}

TEST(ContinuedFraction, PiPrefix) {
  const auto c = cf::expand(FieldSpec::parse("pi", 50), 4);
  // pi - 3 = (0; 7, 15, 1, 292, ...)
  EXPECT_EQ(c.coefficients, ints({0, 7, 15, 1, 292}));
}

TEST(ContinuedFraction, CertifiedPrefixStopsAtInputPrecision) {
  // 10 digits of the golden ratio certify about 10 / log10(phi^2) coefficients
  const auto c = cf::expand(FieldSpec::parse("0.6180339887...", 0), 1000);
  EXPECT_TRUE(c.precision_exhausted);
  EXPECT_LT(c.certified_depth(), 30u);
  EXPECT_GT(c.certified_depth(), 15u);
  // every certified coefficient agrees with the true expansion
  for (std::size_t i = 1; i < c.coefficients.size(); ++i) EXPECT_EQ(c.coefficients[i], 1);
}

TEST(ContinuedFraction, QualityInequalityExact) {
  // |nu - n_k/q_k| <= 1/(c_{k+1} q_k^2) at every certified level
  for (const FieldSpec& f : {FieldSpec::rational(51, 256), FieldSpec::parse("pi", 80), FieldSpec::golden(80),
                             FieldSpec::parse("e", 80)}) {
    const auto c = cf::expand(f, 40);
    const auto [lo, hi] = f.enclosure();
    for (std::size_t k = 0; k + 1 < c.coefficients.size(); ++k) {
      const rational approx(c.convergents[k].n, c.convergents[k].q);
      const rational q = cf::approximation_quality_exact(c, k);
      rational dlo = lo - approx;
      rational dhi = hi - approx;
      if (dlo < 0) dlo = -dlo;
      if (dhi < 0) dhi = -dhi;
      EXPECT_LE(std::max(dlo, dhi), q) << f.to_string() << " level " << k;
    }
  }
  EXPECT_THROW(cf::approximation_quality(cf::expand(rational(1, 2), 5), 1), input_error);
}

TEST(ContinuedFraction, FromCoefficientsValidates) {
  EXPECT_THROW(cf::ContinuedFraction::from_coefficients({}, true), input_error);
  EXPECT_THROW(cf::ContinuedFraction::from_coefficients(ints({0, 0}), true), input_error);
  const auto c = cf::ContinuedFraction::from_coefficients(ints({0, 7, 2237}), false);
  EXPECT_EQ(c.to_string(), "(0; 7, 2237, ...)");
}

TEST(DeviationBound, Formula) {
  EXPECT_DOUBLE_EQ(cf::deviation_bound(10, 1, 0.5), 10 * 11 / 2.0 * 0.5);
  EXPECT_DOUBLE_EQ(cf::deviation_bound(0, 1, 1.0), 0.0);
  EXPECT_THROW(cf::deviation_bound(3, 0, 1.0), input_error);
}

TEST(RevivalSchedule, RationalFields) {
  const double a = M_SQRT1_2;
  const auto s5 = cf::revival_schedule(cf::expand(rational(1, 5), 10), a, 1, 10);
  const auto& last5 = s5.certificates.back();
  EXPECT_EQ(last5.time, 10);
  EXPECT_NEAR(last5.total, 2 * std::pow(2.0, -2.5), 1e-15);

  const auto s256 = cf::revival_schedule(cf::expand(rational(51, 256), 10), a, 1, 10);
  const auto& last = s256.certificates.back();
  EXPECT_EQ(last.time, 256);
  EXPECT_NEAR(last.total / 1.0842021724855044e-19, 1.0, 1e-12);
  EXPECT_TRUE(s256.any_nontrivial);
}

TEST(RevivalSchedule, GoldenIsVacuous) {
  const auto s = cf::revival_schedule(cf::expand(FieldSpec::golden(100), 30), M_SQRT1_2, 1, 30);
  EXPECT_FALSE(s.any_nontrivial);
  EXPECT_EQ(s.reason, "bounds vacuous");
  EXPECT_FALSE(s.certificates.empty());
}

TEST(RevivalSchedule, TinyTermsDoNotUnderflowToZero) {
  const auto c = cf::ContinuedFraction::from_coefficients(ints({0, 3000}), true);
  const auto s = cf::revival_schedule(c, 0.5, 1, 4);
  EXPECT_GT(s.certificates.back().theorem_term, 0.0);
}
