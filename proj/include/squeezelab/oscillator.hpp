#pragma once

// Lossless parametric oscillator in a truncated Fock space.
//
//   degenerate:      H = i(kappa/2) (b a1†² - b† a1²)        modes (a1, b)
//   non-degenerate:  H = i kappa (b a2† a3† - b† a2 a3)     modes (a2, a3, b)
//
// with hbar = kappa = 1. H conserves n1 + 2 n_b (resp. n2 + n3 + 2 n_b and
// n2 - n3), so each charge block is evolved on its own: one Hermitian
// eigendecomposition per block, then exact phase evolution for every t.
// The pump starts coherent with amplitude sqrt(N) e^{i pump_phase}; the
// sub-harmonic mode(s) start in vacuum.

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "squeezelab/block_state.hpp"
#include "squeezelab/errors.hpp"
#include "squeezelab/fock_state.hpp"
#include "squeezelab/metrics.hpp"
#include "squeezelab/numerics.hpp"
#include "squeezelab/quadrature.hpp"

namespace squeezelab {

enum class OscillatorKind { Degenerate, NonDegenerate };

inline std::string to_string(OscillatorKind kind) {
  return kind == OscillatorKind::Degenerate ? "degenerate" : "nondegenerate";
}

inline OscillatorKind parse_oscillator_kind(const std::string& text) {
  if (text == "degenerate" || text == "deg") return OscillatorKind::Degenerate;
  if (text == "nondegenerate" || text == "non-degenerate" || text == "nondeg") return OscillatorKind::NonDegenerate;
  throw ConfigError("unknown oscillator kind '" + text + "'");
}

struct OscillatorConfig {
  OscillatorKind kind = OscillatorKind::Degenerate;
  double n_pump = 1.0;     // initial pump photon number N
  double pump_phase = 0.0;
  std::optional<int> pump_cutoff;  // pinned pump cutoff; default policy when unset

  int modes() const { return kind == OscillatorKind::Degenerate ? 2 : 3; }
  int pump_mode() const { return modes() - 1; }

  void validate() const {
    if (!(n_pump >= 0.0) || !std::isfinite(n_pump)) throw ConfigError("oscillator: N must be a finite number >= 0");
    if (pump_cutoff && *pump_cutoff < 0) throw ConfigError("oscillator: pump cutoff must be >= 0");
  }
};

inline Operator hamiltonian_operator(OscillatorKind kind) {
  const complex i(0.0, 1.0);
  if (kind == OscillatorKind::Degenerate) {
    const Operator a = Operator::annihilate(0);
    const Operator b = Operator::annihilate(1);
    const Operator ad = a.adjoint();
    return (0.5 * i) * (b * ad * ad - b.adjoint() * a * a);
  }
  const Operator a2 = Operator::annihilate(0);
  const Operator a3 = Operator::annihilate(1);
  const Operator b = Operator::annihilate(2);
  return i * (b * a2.adjoint() * a3.adjoint() - b.adjoint() * a2 * a3);
}

inline ChargeSpec oscillator_charges(OscillatorKind kind) {
  if (kind == OscillatorKind::Degenerate) return {2, {{1, 2}}};
  return {3, {{1, 1, 2}, {1, -1, 0}}};
}

/// Basis tuples of one charge block, ordered by increasing pump occupation.
inline std::vector<Occupation> block_basis(OscillatorKind kind, const ChargeKey& charge) {
  std::vector<Occupation> basis;
  if (kind == OscillatorKind::Degenerate) {
    if (charge.size() != 1) throw std::invalid_argument("degenerate block needs one charge value");
    const int c = charge[0];
    for (int np = 0; 2 * np <= c; ++np) basis.push_back({c - 2 * np, np});
    return basis;
  }
  if (charge.size() != 2) throw std::invalid_argument("non-degenerate block needs (charge, imbalance)");
  const int c = charge[0];
  const int d = charge[1];
  if ((c - d) % 2 != 0) return basis;
  for (int np = 0; 2 * np <= c; ++np) {
    const int twice_n3 = c - d - 2 * np;
    if (twice_n3 < 0) break;
    const int n3 = twice_n3 / 2;
    const int n2 = n3 + d;
    if (n2 < 0) continue;
    basis.push_back({n2, n3, np});
  }
  return basis;
}

/// Charges populated by a pump Fock component |k> with sub-harmonic vacuum.
inline ChargeKey pump_sector_charge(OscillatorKind kind, int k) {
  if (kind == OscillatorKind::Degenerate) return {2 * k};
  return {2 * k, 0};
}

struct BlockHamiltonian {
  std::shared_ptr<const BlockLayout> layout;
  std::vector<Eigen::MatrixXcd> blocks;  // same order as layout->blocks()
};

/// Builds the Hamiltonian restricted to the given charge blocks. Every matrix
/// element comes from applying the ladder-operator expression to basis tuples.
inline BlockHamiltonian build_hamiltonian(OscillatorKind kind, const std::vector<ChargeKey>& charges) {
  auto layout = std::make_shared<BlockLayout>(oscillator_charges(kind));
  for (const auto& c : charges) {
    auto basis = block_basis(kind, c);
    if (!basis.empty()) layout->add_block(c, std::move(basis));
  }
  const Operator h = hamiltonian_operator(kind);
  BlockHamiltonian out{layout, {}};
  out.blocks.reserve(layout->blocks().size());
  for (std::size_t b = 0; b < layout->blocks().size(); ++b) {
    const auto& basis = layout->blocks()[b].basis;
    const auto dim = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
      for (const auto& term : h.terms()) {
        Occupation occ = basis[static_cast<std::size_t>(j)];
        auto factor = term.apply(occ);
        if (!factor) continue;
        auto where = layout->locate(occ);
        if (!where || where->first != b) throw std::logic_error("build_hamiltonian: H left its charge block");
        m(where->second, j) += term.coeff * *factor;
      }
    }
    out.blocks.push_back(std::move(m));
  }
  return out;
}

/// All blocks reachable from a pump cutoff: charges 2k, k = 0..max_pump.
inline BlockHamiltonian build_hamiltonian(const OscillatorConfig& cfg, int max_pump) {
  std::vector<ChargeKey> charges;
  for (int k = 0; k <= max_pump; ++k) charges.push_back(pump_sector_charge(cfg.kind, k));
  return build_hamiltonian(cfg.kind, charges);
}

/// Observables of the sub-harmonic field at one instant.
struct Snapshot {
  double t = 0.0;
  double var_x = 1.0;        // squeezed quadrature X2 (X3), vacuum = 1
  double intensity_y = 0.0;  // <ã† ã>, normal ordered
  double min_var = 1.0;      // smallest variance over quadrature angle
  double pump_n = 0.0;
  double norm = 1.0;
  double energy = 0.0;
  std::vector<double> charges;
};

class OscillatorPropagator {
 public:
  explicit OscillatorPropagator(const OscillatorConfig& cfg) : cfg_(cfg) {
    cfg_.validate();
    const complex alpha = std::polar(std::sqrt(cfg_.n_pump), cfg_.pump_phase);
    FockState pump = cfg_.pump_cutoff ? coherent_state(alpha, *cfg_.pump_cutoff, *cfg_.pump_cutoff)
                                      : coherent_state(alpha);
    pump_cutoff_ = pump.dims()[0] - 1;

    hamiltonian_ = build_hamiltonian(cfg_, pump_cutoff_);
    const auto& layout = *hamiltonian_.layout;
    std::vector<std::vector<complex>> initial(layout.blocks().size());
    for (std::size_t b = 0; b < layout.blocks().size(); ++b) initial[b].assign(layout.blocks()[b].basis.size(), complex{});
    for (int k = 0; k <= pump_cutoff_; ++k) {
      Occupation occ;
      occ.modes = cfg_.modes();
      occ[cfg_.pump_mode()] = k;
      auto where = layout.locate(occ);
      if (!where) throw std::logic_error("OscillatorPropagator: pump tuple missing from layout");
      initial[where->first][where->second] = pump.amplitudes()[static_cast<std::size_t>(k)];
    }
    initial_ = std::make_unique<BlockState>(hamiltonian_.layout, std::move(initial));

    eigen_.reserve(hamiltonian_.blocks.size());
    for (std::size_t b = 0; b < hamiltonian_.blocks.size(); ++b) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hamiltonian_.blocks[b]);
      if (solver.info() != Eigen::Success) throw std::runtime_error("OscillatorPropagator: eigensolver failed");
      const auto& psi0 = initial_->block(b);
      Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(psi0.data(), static_cast<Eigen::Index>(psi0.size()));
      eigen_.push_back({solver.eigenvalues(), solver.eigenvectors(), solver.eigenvectors().adjoint() * v});
    }

    if (cfg_.kind == OscillatorKind::Degenerate) {
      squeezed_ = QuadratureSpec::x2(0);
    } else {
      squeezed_ = QuadratureSpec::x3(0, 1);
    }
    hamiltonian_op_ = hamiltonian_operator(cfg_.kind);
    const auto spec = oscillator_charges(cfg_.kind);
    for (std::size_t k = 0; k < spec.weights.size(); ++k) charge_ops_.push_back(spec.charge_operator(k));
  }

  const OscillatorConfig& config() const { return cfg_; }
  int pump_cutoff() const { return pump_cutoff_; }
  const BlockHamiltonian& hamiltonian() const { return hamiltonian_; }
  const BlockState& initial_state() const { return *initial_; }

  /// e^{-iHt} applied to the initial state.
  BlockState state_at(double t) const {
    std::vector<std::vector<complex>> amps(eigen_.size());
    for (std::size_t b = 0; b < eigen_.size(); ++b) {
      const auto& e = eigen_[b];
      Eigen::VectorXcd phased(e.values.size());
      for (Eigen::Index i = 0; i < e.values.size(); ++i) phased[i] = std::polar(1.0, -e.values[i] * t) * e.coefficients[i];
      Eigen::VectorXcd psi = e.vectors * phased;
      amps[b].assign(psi.data(), psi.data() + psi.size());
    }
    return BlockState(hamiltonian_.layout, std::move(amps));
  }

  /// e^{-iH dt} applied to an arbitrary state on this propagator's layout.
  BlockState advance(const BlockState& state, double dt) const {
    if (&state.layout() != hamiltonian_.layout.get()) throw std::invalid_argument("advance: foreign block layout");
    std::vector<std::vector<complex>> amps(eigen_.size());
    for (std::size_t b = 0; b < eigen_.size(); ++b) {
      const auto& e = eigen_[b];
      const auto& src = state.block(b);
      Eigen::VectorXcd coeff =
          e.vectors.adjoint() * Eigen::Map<const Eigen::VectorXcd>(src.data(), static_cast<Eigen::Index>(src.size()));
      for (Eigen::Index i = 0; i < coeff.size(); ++i) coeff[i] *= std::polar(1.0, -e.values[i] * dt);
      Eigen::VectorXcd psi = e.vectors * coeff;
      amps[b].assign(psi.data(), psi.data() + psi.size());
    }
    return BlockState(hamiltonian_.layout, std::move(amps));
  }

  Snapshot snapshot(double t) const {
    const BlockState psi = state_at(t);
    Snapshot s;
    s.t = t;
    const ModeMoments m = mode_moments(psi, squeezed_);
    s.var_x = m.x_variance();
    s.intensity_y = m.number;
    s.min_var = m.min_variance();
    s.pump_n = expectation(psi, Operator::number(cfg_.pump_mode())).real();
    s.norm = psi.norm_squared();
    s.energy = expectation(psi, hamiltonian_op_).real();
    for (const auto& q : charge_ops_) s.charges.push_back(expectation(psi, q).real());
    return s;
  }

  double var_x(double t) const { return mode_moments(state_at(t), squeezed_).x_variance(); }
  double min_var(double t) const { return mode_moments(state_at(t), squeezed_).min_variance(); }

 private:
  struct Eigensystem {
    Eigen::VectorXd values;
    Eigen::MatrixXcd vectors;
    Eigen::VectorXcd coefficients;  // initial state in the eigenbasis
  };

  OscillatorConfig cfg_;
  int pump_cutoff_ = 0;
  BlockHamiltonian hamiltonian_;
  std::unique_ptr<BlockState> initial_;
  std::vector<Eigensystem> eigen_;
  QuadratureSpec squeezed_;
  Operator hamiltonian_op_;
  std::vector<Operator> charge_ops_;
};

struct EvolutionResult {
  std::vector<double> times;
  std::vector<double> var_x;
  std::vector<double> intensity_y;
  std::vector<double> pump_n;
  std::vector<double> norm;
  std::vector<double> energy;
  std::vector<std::vector<double>> charges;  // charges[k][i]
  double t_sq = 0.0;                         // grid point of minimal var_x
  PhaseResolution s_at_tsq;
};

inline EvolutionResult evolve(const OscillatorPropagator& prop, const std::vector<double>& t_grid) {
  if (t_grid.empty()) throw std::invalid_argument("evolve: empty time grid");
  if (t_grid.front() != 0.0) throw std::invalid_argument("evolve: time grid must start at 0");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1])) throw std::invalid_argument("evolve: time grid must be ascending");
  EvolutionResult r;
  std::size_t best = 0;
  for (double t : t_grid) {
    Snapshot s = prop.snapshot(t);
    r.times.push_back(t);
    r.var_x.push_back(s.var_x);
    r.intensity_y.push_back(s.intensity_y);
    r.pump_n.push_back(s.pump_n);
    r.norm.push_back(s.norm);
    r.energy.push_back(s.energy);
    r.charges.resize(s.charges.size());
    for (std::size_t k = 0; k < s.charges.size(); ++k) r.charges[k].push_back(s.charges[k]);
    if (s.var_x < r.var_x[best]) best = r.var_x.size() - 1;
  }
  r.t_sq = r.times[best];
  r.s_at_tsq = phase_resolution(r.intensity_y[best], r.var_x[best]);
  return r;
}

inline EvolutionResult evolve(const OscillatorConfig& cfg, const std::vector<double>& t_grid) {
  return evolve(OscillatorPropagator(cfg), t_grid);
}

inline constexpr int kBracketGridPoints = 200;

/// Default bracketing window [0, 5/sqrt(N)]; squeezing peaks at t ~ 1/sqrt(N).
inline double default_time_window(double n_pump) { return 5.0 / std::sqrt(std::max(n_pump, 1.0)); }

struct OptimalSqueezing {
  double t_sq = 0.0;
  double var_min = 1.0;
  PhaseResolution s;  // at t_sq, quadrature fixed to X2 / X3
  // Jointly optimized over time and quadrature angle.
  double t_angle = 0.0;
  double var_min_angle = 1.0;
  PhaseResolution s_angle;
};

namespace detail {

// Coarse scan then golden-section refinement; the window doubles while the
// grid minimum sits on its right edge.
inline Minimum locate_minimum(const std::function<double(double)>& f, double window) {
  for (int attempt = 0; attempt < 12; ++attempt, window *= 2.0) {
    const auto grid = linspace(0.0, window, kBracketGridPoints);
    std::size_t best = 0;
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      values[i] = f(grid[i]);
      if (values[i] < values[best]) best = i;
    }
    if (best == 0 || values[best] >= values[0] - 1e-13) return {0.0, values[0]};  // stationary
    if (best == grid.size() - 1) continue;
    return golden_section_minimize(f, grid[best - 1], grid[best + 1], 1e-6);
  }
  throw std::runtime_error("find_optimal_squeezing: no interior minimum found before the window limit");
}

}  // namespace detail

inline OptimalSqueezing find_optimal_squeezing(const OscillatorPropagator& prop) {
  const double window = default_time_window(prop.config().n_pump);
  OptimalSqueezing out;
  const Minimum fixed = detail::locate_minimum([&](double t) { return prop.var_x(t); }, window);
  out.t_sq = fixed.x;
  out.var_min = fixed.value;
  out.s = phase_resolution(prop.snapshot(fixed.x).intensity_y, fixed.value);

  const Minimum any = detail::locate_minimum([&](double t) { return prop.min_var(t); }, window);
  out.t_angle = any.x;
  out.var_min_angle = any.value;
  out.s_angle = phase_resolution(prop.snapshot(any.x).intensity_y, any.value);
  return out;
}

inline OptimalSqueezing find_optimal_squeezing(const OscillatorConfig& cfg) {
  return find_optimal_squeezing(OscillatorPropagator(cfg));
}

struct SweepPoint {
  double n_pump = 0.0;
  int pump_cutoff = 0;
  OptimalSqueezing optimum;
};

struct SweepResult {
  OscillatorKind kind = OscillatorKind::Degenerate;
  std::vector<SweepPoint> points;
  PowerLawFit var_fit;  // var_min(N)
  PowerLawFit s_fit;    // S(N)
};

/// Runs find_optimal_squeezing for each N on `jobs` worker threads. Workers
/// share nothing; results are stored by input index.
inline SweepResult sweep_oscillator(OscillatorKind kind, const std::vector<double>& n_values, unsigned jobs = 1) {
  SweepResult result;
  result.kind = kind;
  result.points.resize(n_values.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n_values.size());
  auto worker = [&] {
    for (std::size_t i = next++; i < n_values.size(); i = next++) {
      try {
        OscillatorConfig cfg;
        cfg.kind = kind;
        cfg.n_pump = n_values[i];
        OscillatorPropagator prop(cfg);
        result.points[i] = {n_values[i], prop.pump_cutoff(), find_optimal_squeezing(prop)};
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n_values.size())));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  if (n_values.size() >= 3) {
    std::vector<double> ns, vars, ss;
    for (const auto& p : result.points) {
      ns.push_back(p.n_pump);
      vars.push_back(p.optimum.var_min);
      ss.push_back(p.optimum.s.s);
    }
    result.var_fit = fit_power_law(ns, vars);
    result.s_fit = fit_power_law(ns, ss);
  }
  return result;
}

}  // namespace squeezelab
