#include <gtest/gtest.h>

#include <random>

#include "chpeakon/evolution.hpp"
#include "chpeakon/solution_eval.hpp"
#include "test_support.hpp"

using namespace chpeakon;
using chpeakon::testing::R;

TEST(EvaluateU, Examples) {
  auto empty = evaluate_u(DiscreteMeasurePair<real>{}, {R("-1"), R("0"), R("2")});
  for (const auto& v : empty.u_values) EXPECT_EQ(v, 0);

  auto one = evaluate_u(validate_measure<real>({R("0")}, {R("2")}, {R("0")}), {R("-1"), R("0"), R("1")});
  EXPECT_EQ(one.u_values[1], 1);
  EXPECT_EQ(one.ux_left[1], 1);
  EXPECT_EQ(one.ux_right[1], -1);
  EXPECT_REL(one.u_values[0], exp(real(-1)), 1e-55);
  EXPECT_REL(one.ux_left[2], -exp(real(-1)), 1e-55);

  const real a = R("0.7");
  auto anti = evaluate_u(validate_measure<real>({-a, a}, {R("2"), R("-2")}, {R("0"), R("0")}), {R("0")});
  EXPECT_EQ(anti.u_values[0], 0);
}

TEST(EvaluateU, ReportsDipoleAtoms) {
  auto s = evaluate_u(validate_measure<real>({R("0"), R("1")}, {R("1"), R("0")}, {R("0"), R("2")}), {R("0")});
  ASSERT_EQ(s.mu_singular_atoms.size(), 1u);
  EXPECT_EQ(s.mu_singular_atoms[0].first, 1);
  EXPECT_EQ(s.mu_singular_atoms[0].second, 2);
}

TEST(EvaluateU, RejectsUnsortedGrid) {
  EXPECT_ERROR_CODE(evaluate_u(DiscreteMeasurePair<real>{}, {R("1"), R("0")}), ErrorCode::InvalidArgument);
}

TEST(Energy, SinglePeak) {
  EXPECT_REL(energy_integral(validate_measure<real>({R("0")}, {R("2")}, {R("0")})), 2, 1e-55);
}

TEST(Energy, EqualsIntegralOfUAgainstOmega) {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> gap(0.1, 2.0), w(-3.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 6;
    std::vector<real> x, om, up;
    real pos = 0;
    for (int i = 0; i < n; ++i) {
      pos += real(gap(rng));
      x.push_back(pos);
      om.push_back(real(w(rng)));
      up.push_back(real(0));
    }
    auto m = validate_measure(x, om, up);
    auto u = evaluate_u(m, x).u_values;
    real expected = 0;
    for (int i = 0; i < n; ++i) expected += om[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(i)];
    EXPECT_REL(energy_integral(m), expected, 1e-50);
  }
}

TEST(Energy, MuTotalEqualsSecondInvariantAtCollision) {
  const real c = 2;
  auto s = make_spectral_data<real>({R("-1"), R("1")}, {-c, c});
  auto snap = solve_at(s, real(0));
  ASSERT_TRUE(snap.is_collision_time);
  EXPECT_REL(mu_total(snap.measure), conserved_quantities(s).i2, 1e-50);
}

TEST(Heights, BoundaryEntriesOfInverse) {
  using std::log;
  auto j = tridiagonal_inverse(std::vector<real>{R("0"), log(real(2))});
  EXPECT_REL(j.diagonal[0], real(4) / 3, 1e-55);
  EXPECT_REL(j.diagonal[1], real(4) / 3, 1e-55);
  EXPECT_REL(j.off_diagonal[0], real(-2) / 3, 1e-55);
  auto single = tridiagonal_inverse(std::vector<real>{R("3")});
  EXPECT_EQ(single.diagonal[0], 1);
}

TEST(Heights, RecoversHeightsFromSamples) {
  using std::log;
  const std::vector<real> q{R("0"), log(real(2))};
  auto p = heights_from_samples(q, {R("1"), R("0.5")});
  EXPECT_REL(p[0], 1, 1e-55);
  EXPECT_REL(p[1], 0, 1e-55);
}

TEST(Heights, InverseTimesGramIsIdentity) {
  std::mt19937_64 rng(50);
  std::uniform_real_distribution<double> gap(0.05, 2.5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 6);
    std::vector<real> q;
    real pos = real(-2);
    for (std::size_t i = 0; i < n; ++i) q.push_back(pos += real(gap(rng)));
    auto j = tridiagonal_inverse(q);
    auto e = peak_gram_matrix(q);
    for (std::size_t c = 0; c < n; ++c) {
      std::vector<real> col(n);
      for (std::size_t r = 0; r < n; ++r) col[r] = e[r][c];
      auto prod = j.apply(col);
      for (std::size_t r = 0; r < n; ++r) EXPECT_REL(prod[r], r == c ? 1 : 0, 1e-45);
    }
  }
}

TEST(Heights, CoincidentPositions) {
  EXPECT_ERROR_CODE(tridiagonal_inverse(std::vector<real>{R("1"), R("1")}), ErrorCode::CoincidentPositions);
}

TEST(CollisionDiagnostics, ExactQuadraticIsReproduced) {
  // h = 1 + 2 delta - delta^2, m = 3 - delta^2 for delta = 1 - t
  std::vector<PairSample<double>> samples;
  for (double d : {0.04, 0.02, 0.01, 0.005}) {
    const double h = 1 + 2 * d - d * d, m = 3 - d * d;
    // p_l + p_r = h, 4 p_l p_r (q_l - q_r) = m with p_l = h, p_r = 0 is degenerate; use p_l = h + 1, p_r = -1.
    const double pl = h + 1, pr = -1;
    const double gap = m / (4 * pl * pr);  // q_l - q_r
    samples.push_back({1 - d, pl, pr, 0.0, -gap});
  }
  auto lim = collision_limit_diagnostics(samples, 1.0);
  EXPECT_NEAR(lim.height_sum, 1.0, 1e-12);
  EXPECT_NEAR(lim.atom_mass, 3.0, 1e-12);
}

TEST(CollisionDiagnostics, NoisyDataIsUnstable) {
  std::vector<PairSample<double>> samples;
  const double noise[] = {0.0, 0.3, -0.2, 0.1};
  int i = 0;
  for (double d : {0.04, 0.02, 0.01, 0.005}) samples.push_back({-d, 1 + noise[i++], -1, 0.0, 1.0});
  EXPECT_ERROR_CODE(collision_limit_diagnostics(samples, 0.0), ErrorCode::ExtrapolationUnstable);
}
