#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "squeezelab/fock_state.hpp"
#include "squeezelab/linear_optics.hpp"
#include "squeezelab/quadrature.hpp"

using namespace squeezelab;

namespace {

PhaseResolution coherent_s(const FockState& st) {
  return state_phase_resolution(st, QuadratureSpec::y2(0), QuadratureSpec::x2(0));
}

// Dense copy of a single-mode FockState for comparison with oracle vectors.
oracle::Vec to_vec(const FockState& st) {
  oracle::Vec v(static_cast<Eigen::Index>(st.size()));
  for (std::size_t i = 0; i < st.size(); ++i) v[static_cast<Eigen::Index>(i)] = st.amplitudes()[i];
  return v;
}

}  // namespace

TEST(CoherentState, ZeroAmplitudeIsVacuum) {
  const FockState st = coherent_state(0.0);
  EXPECT_NEAR(std::abs(st.amplitude({0})), 1.0, 1e-15);
  EXPECT_NEAR(expectation(st, Operator::number(0)).real(), 0.0, 1e-15);
  EXPECT_NEAR(quadrature_stats(st, QuadratureSpec::x2(0)).variance, 1.0, 1e-12);
}

TEST(CoherentState, AmplitudeTwoHasPoissonMoments) {
  const FockState st = coherent_state(2.0);
  EXPECT_NEAR(expectation(st, Operator::number(0)).real(), 4.0, 1e-9);
  EXPECT_NEAR(quadrature_stats(st, QuadratureSpec::x2(0)).variance, 1.0, 1e-9);
  EXPECT_NEAR(quadrature_stats(st, QuadratureSpec::y2(0)).variance, 1.0, 1e-9);
}

TEST(CoherentState, PhaseResolutionIsAmplitude) {
  EXPECT_NEAR(coherent_s(coherent_state(3.0)).s, 3.0, 1e-9);
}

TEST(CoherentState, MatchesDisplacementOracle) {
  const complex alpha(1.5, -0.7);
  const FockState st = coherent_state(alpha);
  const oracle::Vec ref = oracle::coherent(alpha, static_cast<int>(st.size()) + 40);
  for (std::size_t n = 0; n < st.size(); ++n)
    EXPECT_NEAR(std::abs(st.amplitudes()[n] - ref[static_cast<Eigen::Index>(n)]), 0.0, 1e-10) << "n=" << n;
}

TEST(CoherentState, PinnedCutoffTooSmallThrows) {
  EXPECT_THROW(coherent_state(4.0, 6, 6), TruncationError);
  EXPECT_NO_THROW(coherent_state(1.0, 40, 40));
}

TEST(SqueezedVacuum, ZeroSqueezingIsVacuum) {
  const FockState st = squeezed_vacuum(SqueezeParams(0.0, 1.2));
  EXPECT_NEAR(expectation(st, Operator::number(0)).real(), 0.0, 1e-15);
  EXPECT_NEAR(quadrature_stats(st, QuadratureSpec::x2(0)).variance, 1.0, 1e-12);
}

// Moment tolerances reflect the 1e-10 norm-deficit cutoff policy.
TEST(SqueezedVacuum, MeanPhotonNumberMatchesOracleSum) {
  const FockState st = squeezed_vacuum(SqueezeParams(1.0, 0.0));
  const oracle::Vec ref = oracle::squeezed(1.0, 0.0, 160);
  double n_ref = 0.0;
  for (Eigen::Index n = 0; n < ref.size(); ++n) n_ref += static_cast<double>(n) * std::norm(ref[n]);
  EXPECT_NEAR(n_ref, 1.3810978455418157, 1e-9);
  EXPECT_NEAR(expectation(st, Operator::number(0)).real(), n_ref, 1e-7);
}

TEST(SqueezedVacuum, MinimalVarianceIsExpMinusTwoS) {
  const FockState st = squeezed_vacuum(SqueezeParams(1.0, 0.0));
  EXPECT_NEAR(mode_moments(st, QuadratureSpec::y2(0)).min_variance(), std::exp(-2.0), 1e-7);
  // theta = 0 squeezes a + a†
  EXPECT_NEAR(quadrature_stats(st, QuadratureSpec::y2(0)).variance, std::exp(-2.0), 1e-7);
  EXPECT_NEAR(quadrature_stats(st, QuadratureSpec::x2(0)).variance, std::exp(2.0), 1e-6);
}

TEST(SqueezedVacuum, PairMomentSignConvention) {
  const FockState st = squeezed_vacuum(SqueezeParams(1.0, 0.0));
  const complex a2 = expectation(st, power(Operator::annihilate(0), 2));
  EXPECT_NEAR(a2.real(), -std::sinh(1.0) * std::cosh(1.0), 1e-7);
  EXPECT_NEAR(a2.imag(), 0.0, 1e-12);
}

TEST(SqueezedVacuum, MatchesSqueezeOperatorOracle) {
  for (double theta : {0.0, 0.7, M_PI, 4.0}) {
    const FockState st = squeezed_vacuum(SqueezeParams(0.9, theta));
    const oracle::Vec ref = oracle::squeezed(0.9, theta, static_cast<int>(st.size()) + 60);
    const oracle::Vec got = to_vec(st);
    EXPECT_LT((got - ref.head(got.size())).norm(), 1e-9) << "theta=" << theta;
  }
}

TEST(SqueezedVacuum, OddAmplitudesVanishExactly) {
  for (double s : {0.2, 0.8, 1.5})
    for (double theta : {0.0, 1.0, 3.0}) {
      const FockState st = squeezed_vacuum(SqueezeParams(s, theta));
      for (std::size_t n = 1; n < st.size(); n += 2) ASSERT_EQ(st.amplitudes()[n], complex{}) << s << ' ' << theta;
    }
}

TEST(SqueezedVacuum, NegativeMagnitudeRejected) { EXPECT_THROW(SqueezeParams(-0.1, 0.0), ConfigError); }

TEST(Expectation, Basics) {
  EXPECT_EQ(expectation(FockState::vacuum({5}), Operator::number(0)), complex{});
  const complex a = expectation(coherent_state(2.0), Operator::annihilate(0));
  EXPECT_NEAR(a.real(), 2.0, 1e-9);
  EXPECT_NEAR(a.imag(), 0.0, 1e-12);
}

TEST(Expectation, RejectsMissingMode) {
  EXPECT_THROW(expectation(coherent_state(1.0), Operator::number(1)), std::out_of_range);
  EXPECT_THROW(quadrature_stats(coherent_state(1.0), QuadratureSpec::x3(0, 1)), std::out_of_range);
}

TEST(QuadratureStats, VacuumX2) {
  const auto q = quadrature_stats(FockState::vacuum({4}), QuadratureSpec::x2(0));
  EXPECT_NEAR(q.mean, 0.0, 1e-15);
  EXPECT_NEAR(q.variance, 1.0, 1e-15);
  EXPECT_NEAR(q.intensity, 1.0, 1e-15);
}

TEST(QuadratureStats, CoherentDistanceQuadrature) {
  for (double n : {1.0, 4.0, 9.0}) {
    const FockState st = coherent_state(std::sqrt(n));
    const auto q = quadrature_stats(st, QuadratureSpec::y2(0));
    EXPECT_NEAR(q.intensity, 4.0 * n + 1.0, 1e-8);
    EXPECT_NEAR(distance_intensity(st, QuadratureSpec::y2(0)), n, 1e-9);
  }
}

TEST(QuadratureStats, TwoModeVacuumX3HasUnitVariance) {
  const FockState vac = FockState::vacuum({3, 3});
  EXPECT_NEAR(quadrature_stats(vac, QuadratureSpec::x3(0, 1)).variance, 1.0, 1e-15);
  EXPECT_NEAR(quadrature_stats(vac, QuadratureSpec::y3(0, 1)).variance, 1.0, 1e-15);
}

TEST(QuadratureStats, GenericAngleReproducesNamedQuadratures) {
  const FockState st = squeezed_vacuum(SqueezeParams(0.6, 0.9));
  EXPECT_NEAR(quadrature_stats(st, QuadratureSpec::generic(0, 0.0)).variance,
              quadrature_stats(st, QuadratureSpec::y2(0)).variance, 1e-12);
  EXPECT_NEAR(quadrature_stats(st, QuadratureSpec::generic(0, -M_PI / 2)).variance,
              quadrature_stats(st, QuadratureSpec::x2(0)).variance, 1e-12);
  const ModeMoments m = mode_moments(st, QuadratureSpec::y2(0));
  for (double phi : {0.3, 1.1, 2.5})
    EXPECT_NEAR(quadrature_stats(st, QuadratureSpec::generic(0, phi)).variance, m.rotated_variance(phi), 1e-10);
}

TEST(BeamSplitter, IdentityLeavesFirstModeUnchanged) {
  const FockState in = tensor_product(coherent_state(1.3), FockState::vacuum({1}));
  const FockState out = apply_beam_splitter(in, BeamSplitterConfig::lossless(0.0));
  for (int n = 0; n < in.dims()[0]; ++n) EXPECT_NEAR(std::abs(out.amplitude({n, 0}) - in.amplitude({n, 0})), 0.0, 1e-12);
  EXPECT_NEAR(out.norm_squared(), 1.0, 1e-12);
}

TEST(BeamSplitter, BalancedSplitterHalvesCoherentIntensity) {
  const double alpha = 2.0;
  const FockState in = tensor_product(coherent_state(alpha), FockState::vacuum({1}));
  const FockState out = apply_beam_splitter(in, BeamSplitterConfig::lossless(std::sqrt(0.5)));
  const complex b1 = expectation(out, Operator::annihilate(0));
  EXPECT_NEAR(std::abs(b1), alpha / std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(quadrature_stats(out, QuadratureSpec::x2(0)).variance, 1.0, 1e-9);
  EXPECT_NEAR(quadrature_stats(out, QuadratureSpec::y2(0)).variance, 1.0, 1e-9);
}

TEST(BeamSplitter, OptimalPhaseVarianceExample) {
  const double r2 = std::sqrt(0.3);
  const double delta = 0.4, psi = -0.1;
  const FockState in = tensor_product(coherent_state(2.0), squeezed_vacuum(SqueezeParams(0.5, -2 * delta - 2 * psi)));
  const FockState out = apply_beam_splitter(in, BeamSplitterConfig::lossless(r2, delta, psi));
  EXPECT_NEAR(quadrature_stats(out, QuadratureSpec::y2(0)).variance, 1.0 - 0.3 * (1.0 - std::exp(-1.0)), 1e-9);
}

// Heisenberg picture: b1 = U11 a1 + U12 a2 evaluated on the dense input.
TEST(BeamSplitter, OutputMomentsMatchHeisenbergOracle) {
  for (double r2sq : {0.0, 0.25, 0.5, 0.75, 1.0})
    for (double s : {0.3, 1.5})
      for (double alpha : {0.5, 3.0}) {
        const double r2 = std::sqrt(r2sq), t = std::sqrt(1.0 - r2sq);
        const double delta = 0.3, psi = 1.1, theta = 0.4;
        const FockState a = coherent_state(alpha);
        const FockState sq = squeezed_vacuum(SqueezeParams(s, theta));
        const FockState out = apply_beam_splitter(tensor_product(a, sq), BeamSplitterConfig::lossless(r2, delta, psi));
        EXPECT_NEAR(out.norm_squared(), 1.0, 1e-9);

        const int l1 = a.dims()[0] + 30, l2 = sq.dims()[0] + 60;
        const oracle::Space space{{l1, l2}};
        const oracle::Vec psi_in = oracle::kron(oracle::coherent(alpha, l1), oracle::squeezed(s, theta, l2));
        const complex g = std::polar(1.0, delta);
        const auto ref = oracle::moments(space, psi_in, {g * t, g * std::polar(r2, psi)});
        const ModeMoments got = mode_moments(out, QuadratureSpec::y2(0));
        // the library truncates each input at a 1e-10 norm deficit
        const double tol = 1e-8 * (1.0 + ref.number);
        EXPECT_NEAR(std::abs(got.mean - ref.mean), 0.0, tol);
        EXPECT_NEAR(std::abs(got.pair - ref.pair), 0.0, tol);
        EXPECT_NEAR(got.number, ref.number, tol);
        EXPECT_NEAR(quadrature_stats(out, QuadratureSpec::y2(0)).variance, ref.y_variance(), 2 * tol * (1.0 + ref.y_variance()));
      }
}

TEST(Interferometer, OutputMomentsMatchHeisenbergOracle) {
  const double alpha = 1.5, s = 0.7, theta = -0.8, phi = 1.2, psi = 0.3, Phi = 0.4;
  const FockState a = coherent_state(alpha);
  const FockState sq = squeezed_vacuum(SqueezeParams(s, theta));
  const FockState out = apply_interferometer(tensor_product(a, sq), {phi, psi, Phi});
  const int l1 = a.dims()[0] + 30, l2 = sq.dims()[0] + 60;
  const oracle::Space space{{l1, l2}};
  const oracle::Vec psi_in = oracle::kron(oracle::coherent(alpha, l1), oracle::squeezed(s, theta, l2));
  const complex g = std::polar(1.0, Phi);
  const complex minus_i(0.0, -1.0);
  const auto ref = oracle::moments(space, psi_in, {g * minus_i * std::polar(std::sin(phi / 2), -psi), g * std::cos(phi / 2)});
  const ModeMoments got = mode_moments(out, QuadratureSpec::y2(0));
  EXPECT_NEAR(std::abs(got.mean - ref.mean), 0.0, 1e-8);
  EXPECT_NEAR(std::abs(got.pair - ref.pair), 0.0, 1e-8);
  EXPECT_NEAR(got.number, ref.number, 1e-8);
}

TEST(Mixer, NonUnitaryBeamSplitterRejected) {
  BeamSplitterConfig cfg = BeamSplitterConfig::lossless(0.5);
  cfg.t1 = 0.9;
  EXPECT_THROW(cfg.validate(), ConfigError);
  EXPECT_THROW(BeamSplitterConfig::lossless(1.2), ConfigError);
  EXPECT_THROW((InterferometerConfig{4.0, 0.0, 0.0}.validate()), ConfigError);
}

TEST(Mixer, RequiresTwoModeInput) {
  EXPECT_THROW(apply_beam_splitter(coherent_state(1.0), BeamSplitterConfig::lossless(0.5)), std::invalid_argument);
}

// Property: every constructor and mode map preserves the norm.
TEST(Properties, NormPreservation) {
  for (double x : {0.1, 0.9, 2.5}) {
    EXPECT_NEAR(coherent_state(std::polar(x, x)).norm_squared(), 1.0, 1e-9);
    EXPECT_NEAR(squeezed_vacuum(SqueezeParams(x / 2, x)).norm_squared(), 1.0, 1e-9);
    const FockState in = tensor_product(coherent_state(x), squeezed_vacuum(SqueezeParams(0.4, x)));
    EXPECT_NEAR(apply_interferometer(in, {x, x, x}).norm_squared(), 1.0, 1e-9);
  }
}

TEST(Properties, CoherentPhaseResolutionEqualsAmplitude) {
  for (double a = 1.0; a <= 6.0; a += 0.5) EXPECT_NEAR(coherent_s(coherent_state(std::polar(a, 0.0))).s, a, 1e-4);
}
