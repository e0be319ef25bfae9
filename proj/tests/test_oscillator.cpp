#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "squeezelab/numerics.hpp"
#include "squeezelab/oscillator.hpp"

using namespace squeezelab;

namespace {

OscillatorConfig config(OscillatorKind kind, double n) {
  OscillatorConfig cfg;
  cfg.kind = kind;
  cfg.n_pump = n;
  return cfg;
}

Occupation occupation_of(const std::vector<int>& v) {
  Occupation occ;
  occ.modes = static_cast<int>(v.size());
  for (std::size_t m = 0; m < v.size(); ++m) occ[static_cast<int>(m)] = v[m];
  return occ;
}

double max_amplitude_error(const BlockState& blocks, const oracle::DenseOscillator& dense, const oracle::Vec& psi) {
  double worst = 0.0;
  for (std::size_t i = 0; i < dense.space.size(); ++i)
    worst = std::max(worst, std::abs(blocks.amplitude(occupation_of(dense.space.occupation(i))) -
                                     psi[static_cast<Eigen::Index>(i)]));
  return worst;
}

}  // namespace

TEST(Hamiltonian, DegenerateChargeTwoBlock) {
  const auto h = build_hamiltonian(OscillatorKind::Degenerate, {{2}});
  ASSERT_EQ(h.blocks.size(), 1u);
  const auto& m = h.blocks[0];
  ASSERT_EQ(m.rows(), 2);
  // basis ordered by pump occupation: (n1=2, np=0), (n1=0, np=1)
  const auto& basis = h.layout->blocks()[0].basis;
  EXPECT_EQ(basis[0], (Occupation{2, 0}));
  EXPECT_EQ(basis[1], (Occupation{0, 1}));
  // <2,0| i(1/2) b a†² |0,1> = i sqrt(2)/2
  EXPECT_NEAR(std::abs(m(0, 1)), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(std::abs(m(0, 1) - std::conj(m(1, 0))), 0.0, 1e-15);
  EXPECT_EQ(m(0, 0), complex{});
}

TEST(Hamiltonian, ChargeZeroBlockIsZero) {
  for (auto kind : {OscillatorKind::Degenerate, OscillatorKind::NonDegenerate}) {
    const auto h = build_hamiltonian(kind, {pump_sector_charge(kind, 0)});
    ASSERT_EQ(h.blocks[0].rows(), 1);
    EXPECT_EQ(h.blocks[0](0, 0), complex{});
  }
}

TEST(Hamiltonian, BlocksAreHermitian) {
  for (auto kind : {OscillatorKind::Degenerate, OscillatorKind::NonDegenerate}) {
    const auto h = build_hamiltonian(config(kind, 9.0), 25);
    for (const auto& m : h.blocks) {
      EXPECT_LT((m - m.adjoint()).norm(), 1e-14);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
      EXPECT_EQ(es.info(), Eigen::Success);
    }
  }
}

TEST(Hamiltonian, BlockElementsMatchDenseMatrix) {
  const int p = 6;
  for (bool deg : {true, false}) {
    const auto kind = deg ? OscillatorKind::Degenerate : OscillatorKind::NonDegenerate;
    const oracle::DenseOscillator dense(deg, 2.0, p);
    const Eigen::MatrixXcd h = Eigen::MatrixXcd(dense.hamiltonian);
    const auto bh = build_hamiltonian(config(kind, 2.0), p);
    for (std::size_t b = 0; b < bh.blocks.size(); ++b) {
      const auto& basis = bh.layout->blocks()[b].basis;
      for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) {
          std::vector<int> oi(basis[i].n.begin(), basis[i].n.begin() + basis[i].modes);
          std::vector<int> oj(basis[j].n.begin(), basis[j].n.begin() + basis[j].modes);
          const auto di = static_cast<Eigen::Index>(dense.space.index(oi));
          const auto dj = static_cast<Eigen::Index>(dense.space.index(oj));
          EXPECT_NEAR(std::abs(bh.blocks[b](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) - h(di, dj)), 0.0,
                      1e-14);
        }
    }
  }
}

TEST(Evolve, EmptyPumpIsStationary) {
  for (auto kind : {OscillatorKind::Degenerate, OscillatorKind::NonDegenerate}) {
    const auto r = evolve(config(kind, 0.0), linspace(0.0, 3.0, 31));
    for (double v : r.var_x) EXPECT_NEAR(v, 1.0, 1e-14);
    const auto opt = find_optimal_squeezing(config(kind, 0.0));
    EXPECT_EQ(opt.t_sq, 0.0);
    EXPECT_NEAR(opt.var_min, 1.0, 1e-14);
  }
}

// Undepleted-pump approximation: a classical pump of amplitude sqrt(N) gives
// an ideal squeezer with rate sqrt(N).
TEST(Evolve, ShortTimeMatchesUndepletedPump) {
  const double n = 16.0;
  const OscillatorPropagator prop(config(OscillatorKind::Degenerate, n));
  for (double t = 0.0025; t <= 0.1 / std::sqrt(n) + 1e-12; t += 0.0025) {
    const double ref = std::exp(-2.0 * std::sqrt(n) * t);
    EXPECT_NEAR(prop.var_x(t) / ref, 1.0, 0.02) << "t=" << t;
  }
}

TEST(Evolve, SqueezingDepletesPump) {
  const OscillatorPropagator prop(config(OscillatorKind::Degenerate, 16.0));
  const auto opt = find_optimal_squeezing(prop);
  EXPECT_LT(opt.var_min, 1.0);
  EXPECT_LT(prop.snapshot(opt.t_sq).pump_n, 16.0);
  EXPECT_LE(opt.var_min_angle, opt.var_min + 1e-12);
}

TEST(Evolve, GridValidation) {
  const auto cfg = config(OscillatorKind::Degenerate, 1.0);
  EXPECT_THROW(evolve(cfg, {0.1, 0.2}), std::invalid_argument);
  EXPECT_THROW(evolve(cfg, {0.0, 0.2, 0.1}), std::invalid_argument);
  EXPECT_THROW(evolve(cfg, {}), std::invalid_argument);
}

TEST(Evolve, InvalidConfigRejected) {
  EXPECT_THROW(OscillatorPropagator(config(OscillatorKind::Degenerate, -1.0)), ConfigError);
  EXPECT_THROW(parse_oscillator_kind("triple"), ConfigError);
  EXPECT_EQ(parse_oscillator_kind(to_string(OscillatorKind::NonDegenerate)), OscillatorKind::NonDegenerate);
}

TEST(Evolve, PinnedPumpCutoffTooSmallThrows) {
  auto cfg = config(OscillatorKind::Degenerate, 30.0);
  cfg.pump_cutoff = 5;
  EXPECT_THROW(OscillatorPropagator{cfg}, TruncationError);
}

TEST(BlockDense, AmplitudesAgree) {
  for (bool deg : {true, false})
    for (double n : {1.0, 3.0, 6.0}) {
      const auto kind = deg ? OscillatorKind::Degenerate : OscillatorKind::NonDegenerate;
      const OscillatorPropagator prop(config(kind, n));
      const oracle::DenseOscillator dense(deg, n, prop.pump_cutoff());
      oracle::Vec psi = dense.initial;
      double t_prev = 0.0;
      for (double t : {0.0, 0.2, 0.5}) {
        psi = dense.propagate(psi, t - t_prev);
        t_prev = t;
        EXPECT_LT(max_amplitude_error(prop.state_at(t), dense, psi), 1e-8) << to_string(kind) << " N=" << n << " t=" << t;
      }
    }
}

TEST(BlockDense, DegenerateFourPhotonOptimum) {
  const OscillatorPropagator prop(config(OscillatorKind::Degenerate, 4.0));
  const auto opt = find_optimal_squeezing(prop);

  const oracle::DenseOscillator dense(true, 4.0, prop.pump_cutoff());
  const auto [t_ref, v_ref] = oracle::scan_minimum(
      [&](double t) { return dense.var_x(dense.propagate(dense.initial, t)); }, 0.0, 2.5, 126, 1e-7);
  EXPECT_NEAR(opt.t_sq, t_ref, 1e-5);
  EXPECT_NEAR(opt.var_min, v_ref, 1e-9);
}

// Regression fixture, cross-checked by BlockDense.DegenerateFourPhotonOptimum.
TEST(Regression, DegenerateFourPhotonFixture) {
  const auto opt = find_optimal_squeezing(config(OscillatorKind::Degenerate, 4.0));
  EXPECT_NEAR(opt.t_sq, 0.5997971, 1e-6);
  EXPECT_NEAR(opt.var_min, 0.1522571579, 1e-9);
  EXPECT_NEAR(opt.s.s, 3.5121658, 1e-6);
}

TEST(Conservation, NormEnergyCharges) {
  for (auto kind : {OscillatorKind::Degenerate, OscillatorKind::NonDegenerate}) {
    const auto r = evolve(config(kind, 16.0), linspace(0.0, 2.0, 41));
    for (std::size_t i = 0; i < r.times.size(); ++i) {
      EXPECT_NEAR(r.norm[i], 1.0, 1e-9);
      EXPECT_LT(std::abs(r.energy[i] - r.energy[0]) / std::max(1.0, std::abs(r.energy[0])), 1e-9);
      for (const auto& q : r.charges) EXPECT_LT(std::abs(q[i] - q[0]) / std::max(1.0, std::abs(q[0])), 1e-9);
    }
    EXPECT_EQ(r.charges.size(), kind == OscillatorKind::Degenerate ? 1u : 2u);
  }
}

TEST(Symmetry, SignalAndIdlerStayBalanced) {
  const OscillatorPropagator prop(config(OscillatorKind::NonDegenerate, 9.0));
  for (double t : {0.1, 0.4, 0.9, 1.7}) {
    const BlockState psi = prop.state_at(t);
    EXPECT_NEAR(expectation(psi, Operator::number(0)).real(), expectation(psi, Operator::number(1)).real(), 1e-9);
  }
}

TEST(TimeReversal, ForwardThenBackwardRestoresState) {
  for (auto kind : {OscillatorKind::Degenerate, OscillatorKind::NonDegenerate}) {
    const OscillatorPropagator prop(config(kind, 8.0));
    const BlockState back = prop.advance(prop.state_at(0.7), -0.7);
    const auto& init = prop.initial_state();
    double worst = 0.0;
    for (std::size_t b = 0; b < init.amplitudes().size(); ++b)
      for (std::size_t i = 0; i < init.block(b).size(); ++i)
        worst = std::max(worst, std::abs(back.block(b)[i] - init.block(b)[i]));
    EXPECT_LT(worst, 1e-8);
  }
}

TEST(Sweep, ParallelMatchesSerial) {
  const std::vector<double> ns{2.0, 3.0, 5.0};
  const auto serial = sweep_oscillator(OscillatorKind::NonDegenerate, ns, 1);
  const auto parallel = sweep_oscillator(OscillatorKind::NonDegenerate, ns, 3);
  ASSERT_EQ(serial.points.size(), parallel.points.size());
  for (std::size_t i = 0; i < ns.size(); ++i) {
    EXPECT_EQ(serial.points[i].n_pump, ns[i]);
    EXPECT_EQ(serial.points[i].optimum.var_min, parallel.points[i].optimum.var_min);
    EXPECT_EQ(serial.points[i].optimum.t_sq, parallel.points[i].optimum.t_sq);
  }
  EXPECT_EQ(serial.s_fit.exponent, parallel.s_fit.exponent);
}
