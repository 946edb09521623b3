#include <gtest/gtest.h>

#include <random>

#include "chpeakon/forward_spectral.hpp"
#include "test_support.hpp"

using namespace chpeakon;
using chpeakon::testing::R;

namespace {

DiscreteMeasurePair<real> mixed_three() {
  return validate_measure<real>({R("-1"), R("0.5"), R("2")}, {R("3"), R("-1"), R("1.5")},
                                {R("0"), R("0.75"), R("0")});
}

}  // namespace

TEST(Wronskian, SinglePeak) {
  auto w = wronskian(validate_measure<real>({R("0")}, {R("2")}, {R("0")}));
  ASSERT_EQ(w.degree(), 1);
  EXPECT_EQ(w.coefficient(0), 1);
  EXPECT_REL(w.coefficient(1), -2, 1e-50);
}

TEST(Wronskian, EqualPeaksAtLogTwo) {
  using std::log;
  auto w = wronskian(validate_measure<real>({R("0"), log(real(2))}, {R("2"), R("2")}, {R("0"), R("0")}));
  ASSERT_EQ(w.degree(), 2);
  EXPECT_REL(w.coefficient(1), -4, 1e-50);
  EXPECT_REL(w.coefficient(2), 2, 1e-50);
}

TEST(Wronskian, PureDipole) {
  auto w = wronskian(validate_measure<real>({R("0.3")}, {R("0")}, {R("1")}));
  ASSERT_EQ(w.degree(), 2);
  EXPECT_REL(w.coefficient(1), 0, 1e-50);
  EXPECT_REL(w.coefficient(2), -1, 1e-50);
}

TEST(Wronskian, MatchesShootingOracle) {
  // Coefficients from an independent shooting computation in exponential coordinates.
  auto w = wronskian(mixed_three());
  ASSERT_EQ(w.degree(), 4);
  EXPECT_REL(w.coefficient(0), 1, 1e-40);
  EXPECT_REL(w.coefficient(1), R("-3.5"), 1e-40);
  EXPECT_REL(w.coefficient(2), R("0.03004391301254648679272125"), 1e-22);
  EXPECT_REL(w.coefficient(3), R("5.337806075818568610357695"), 1e-22);
  EXPECT_REL(w.coefficient(4), R("-2.036902774739639462255637"), 1e-22);
}

TEST(Wronskian, TransferDeterminantIsOne) {
  auto t = transfer_product(mixed_three());
  auto det = t.determinant();
  ASSERT_GE(det.degree(), 0);
  EXPECT_REL(det.coefficient(0), 1, 1e-50);
  for (int k = 1; k <= det.degree(); ++k) EXPECT_REL(det.coefficient(static_cast<std::size_t>(k)), 0, 1e-45);
}

TEST(ForwardTransform, SinglePeakNorming) {
  auto s = forward_transform(validate_measure<real>({R("0")}, {R("2")}, {R("0")}));
  ASSERT_EQ(s.size(), 1u);
  EXPECT_REL(s.eigenvalues[0], R("0.5"), 1e-55);
  EXPECT_REL(s.norming[0], 2, 1e-55);
}

TEST(ForwardTransform, PureDipoleNorming) {
  // upsilon = 1 at x gives lambda = +-1 and gamma^2 = 2 lambda e^{-x}.
  using std::exp;
  const real x = R("0.3");
  auto s = forward_transform(validate_measure<real>({x}, {R("0")}, {R("1")}));
  ASSERT_EQ(s.size(), 2u);
  EXPECT_REL(s.eigenvalues[0], -1, 1e-55);
  EXPECT_REL(s.eigenvalues[1], 1, 1e-55);
  EXPECT_REL(s.norming[0], -2 * exp(-x), 1e-55);
  EXPECT_REL(s.norming[1], 2 * exp(-x), 1e-55);
}

TEST(ForwardTransform, MatchesShootingOracle) {
  auto s = forward_transform(mixed_three());
  const char* lambdas[] = {"-0.8222263978826436091540329", "0.3379816144071425450673403",
                           "0.7503316540352269866563192", "2.354463379562475655100488"};
  const char* gammas[] = {"-4.807890867765545808550022", "3.402943355341046537016772",
                          "0.2156358686646843419320273", "4.93295740072836902555506"};
  ASSERT_EQ(s.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_REL(s.eigenvalues[i], R(lambdas[i]), 1e-22);
    EXPECT_REL(s.norming[i], R(gammas[i]), 1e-22);
  }
}

TEST(ForwardTransform, CrossCheckResidualIsTiny) {
  auto w = wronskian(mixed_three());
  auto r = norming_constants_checked(mixed_three(), eigenvalues(w), real(0));
  EXPECT_LT(r.max_cross_check_residual, real("1e-50"));
}

TEST(ForwardTransform, WorksInDouble) {
  auto m = validate_measure<double>({-0.3, 0.4}, {1.0, -2.0}, {0.0, 0.0});
  auto s = forward_transform(m);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_NEAR(s.eigenvalues[0], -0.6168711702901520668, 1e-12);
  EXPECT_NEAR(s.norming[1], 7.932999887847010207, 1e-10);
}

TEST(Traces, MatchMeasureMoments) {
  auto m = mixed_three();
  auto tr = trace_values(forward_transform(m).eigenvalues);
  auto mm = measure_moments(m);
  EXPECT_REL(tr.sum_inv_lambda, mm.i1, 1e-50);
  EXPECT_REL(tr.sum_inv_lambda_sq, 2 * mm.i2, 1e-50);
}

TEST(Traces, SinglePeak) {
  auto mm = measure_moments(validate_measure<real>({R("0")}, {R("2")}, {R("0")}));
  EXPECT_EQ(mm.i1, 2);
  EXPECT_EQ(mm.i2, 2);
  auto tr = trace_values(std::vector<real>{R("0.5")});
  EXPECT_EQ(tr.sum_inv_lambda, 2);
  EXPECT_EQ(tr.sum_inv_lambda_sq, 4);
}

TEST(WeylFunction, ContinuedFractionMatchesPartialFractions) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  auto m = mixed_three();
  auto s = forward_transform(m);
  for (int trial = 0; trial < 20; ++trial) {
    Complex<real> z(real(uni(rng)), real(uni(rng)));
    auto a = weyl_partial_fraction(s, z);
    auto b = weyl_continued_fraction(m, z);
    EXPECT_LT((a - b).abs(), real("1e-45") * (1 + a.abs()));
  }
}

TEST(WeylFunction, LengthsSumToOne) {
  auto cf = continued_fraction_coefficients(mixed_three());
  real total = 0;
  for (const auto& l : cf.lengths) total += l;
  EXPECT_REL(total, 1, 1e-55);
  EXPECT_EQ(cf.polys.size(), 3u);
}

TEST(WeylFunction, PoleHitAtEigenvalue) {
  auto s = make_spectral_data<real>({R("0.5")}, {R("2")});
  EXPECT_ERROR_CODE(weyl_partial_fraction(s, Complex<real>(R("0.5"))), ErrorCode::PoleHit);
}

TEST(WeylFunction, LargeArgumentLimit) {
  // M(z) -> -e^{x_N} as |z| grows.
  using std::exp;
  auto m = mixed_three();
  auto big = weyl_continued_fraction(m, Complex<real>(real(0), real("1e30")));
  EXPECT_REL(big.re, -exp(real(2)), 1e-25);
}
