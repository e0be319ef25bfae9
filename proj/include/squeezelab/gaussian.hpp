#pragma once

// Closed-form mixing of a coherent state |alpha> (input a1) with a squeezed
// vacuum |0, s e^{i theta}> (input a2) on a beam splitter or interferometer,
// and the pump-to-squeezed-coherent generation scheme built on top of it.
//
// In the scheme an N-photon pump yields a squeezed vacuum with
// sinh^2 s = (N/2)^{1/2} photons, and the unconverted pump is down-converted
// into 2 N lambda coherent sub-harmonic photons before mixing.

#include <cmath>
#include <stdexcept>
#include <variant>
#include <vector>

#include "squeezelab/errors.hpp"
#include "squeezelab/fock_state.hpp"
#include "squeezelab/metrics.hpp"
#include "squeezelab/mixer.hpp"

namespace squeezelab {

/// Var(b1 + b1†) for a beam splitter with arbitrary phases:
///   1 + 2 r2^2 sinh s [sinh s - cosh s cos(2 delta + 2 psi + theta)].
inline double bs_variance(const BeamSplitterConfig& cfg, SqueezeParams sq) {
  cfg.validate();
  const double sh = std::sinh(sq.s);
  const double ch = std::cosh(sq.s);
  return 1.0 + 2.0 * cfg.r2 * cfg.r2 * sh * (sh - ch * std::cos(2.0 * cfg.delta + 2.0 * cfg.psi + sq.theta));
}

/// Variance at the optimal phase 2 delta + 2 psi + theta = 0.
inline double bs_optimal_variance(double r2, double s) { return 1.0 - r2 * r2 * (1.0 - std::exp(-2.0 * s)); }

inline double bs_intensity(double t1, double r2, double s, double alpha_abs) {
  const double sh = std::sinh(s);
  return t1 * t1 * alpha_abs * alpha_abs + r2 * r2 * sh * sh;
}

/// Best phase resolution in output b1 (phases at their optimum).
inline PhaseResolution bs_phase_resolution(const BeamSplitterConfig& cfg, double s, double alpha_abs) {
  cfg.validate();
  return phase_resolution(bs_intensity(cfg.t1, cfg.r2, s, alpha_abs), bs_optimal_variance(cfg.r2, s));
}

namespace detail {
inline void check_phi(double phi) {
  if (!(phi >= 0.0 && phi <= M_PI)) throw ConfigError("interferometer: phi must lie in [0, pi]");
}
}  // namespace detail

/// Var(c1 + c1†) = 1 - (1 - e^{-2s}) cos^2(phi/2).
inline double in_variance(double phi, double s) {
  detail::check_phi(phi);
  const double c = std::cos(phi / 2.0);
  return 1.0 - (1.0 - std::exp(-2.0 * s)) * c * c;
}

/// <c1† c1> = |alpha|^2 sin^2(phi/2) + sinh^2 s cos^2(phi/2).
inline double in_intensity(double phi, double s, double alpha_abs) {
  detail::check_phi(phi);
  const double sn = std::sin(phi / 2.0);
  const double c = std::cos(phi / 2.0);
  const double sh = std::sinh(s);
  return alpha_abs * alpha_abs * sn * sn + sh * sh * c * c;
}

inline PhaseResolution in_phase_resolution(double phi, double s, double alpha_abs) {
  return phase_resolution(in_intensity(phi, s, alpha_abs), in_variance(phi, s));
}

struct SchemeParams {
  double n_pump = 1.0;  // N
  double lambda = 0.5;  // down-conversion efficiency, (0, 1]
  MixerConfig mixer = BeamSplitterConfig{};

  void validate() const {
    if (!(n_pump >= 1.0) || !std::isfinite(n_pump)) throw ConfigError("scheme: N must be >= 1");
    if (!(lambda > 0.0 && lambda <= 1.0)) throw ConfigError("scheme: lambda must lie in (0, 1]");
    squeezelab::validate(mixer);
  }

  double squeezed_photons() const { return std::sqrt(n_pump / 2.0); }
  double coherent_photons() const { return 2.0 * n_pump * lambda; }
  /// Exact inversion of sinh^2 s = (N/2)^{1/2}.
  double squeeze() const { return std::asinh(std::pow(n_pump / 2.0, 0.25)); }
  /// The large-N estimate s ≈ ln(N/2)/4 (drops ln 2; for comparison only).
  double squeeze_log_estimate() const { return 0.25 * std::log(n_pump / 2.0); }
};

/// Phase resolution of the scheme output, substituting |alpha|^2 = 2 N lambda
/// and the exact s into the closed-form mixer result.
inline PhaseResolution scheme_phase_resolution_exact(const SchemeParams& p) {
  p.validate();
  const double s = p.squeeze();
  const double alpha_abs = std::sqrt(p.coherent_photons());
  if (const auto* bs = std::get_if<BeamSplitterConfig>(&p.mixer)) return bs_phase_resolution(*bs, s, alpha_abs);
  const auto& in = std::get<InterferometerConfig>(p.mixer);
  return in_phase_resolution(in.phi, s, alpha_abs);
}

struct SchemeApproximation {
  double series = 0.0;   // large-N form, prefactor 2N under the square root
  double leading = 0.0;  // (2 N lambda)^{1/2}
  double exact = 0.0;
  double rel_dev_series = 0.0;
  double rel_dev_leading = 0.0;
};

/// Large-N forms of the scheme phase resolution. With e^{-2s} ≈ N^{-1/2}/sqrt(8):
///   beam splitter:   S² ≈ 2N [λ(1 - r²) + r² N^{-1/2}/√8] / [1 - r² + r² N^{-1/2}/√8]
///   interferometer:  S² ≈ 2N [√8 λ tan²(φ/2) + N^{-1/2}] / [√8 tan²(φ/2) + N^{-1/2}]
/// and for small r2 (or φ near π/2) S ≈ (2 N λ)^{1/2}.
inline SchemeApproximation scheme_phase_resolution_approx(const SchemeParams& p) {
  p.validate();
  const double n = p.n_pump;
  const double eps = std::pow(n, -0.5) / std::sqrt(8.0);
  SchemeApproximation out;
  if (const auto* bs = std::get_if<BeamSplitterConfig>(&p.mixer)) {
    const double r2 = bs->r2 * bs->r2;
    out.series = std::sqrt(2.0 * n * (p.lambda * (1.0 - r2) + r2 * eps) / (1.0 - r2 + r2 * eps));
  } else {
    const double phi = std::get<InterferometerConfig>(p.mixer).phi;
    if (phi >= M_PI) {
      out.series = std::sqrt(2.0 * n * p.lambda);  // tan^2 -> infinity
    } else {
      const double tan2 = std::pow(std::tan(phi / 2.0), 2);
      const double root8 = std::sqrt(8.0);
      out.series = std::sqrt(2.0 * n * (root8 * p.lambda * tan2 + 1.0 / std::sqrt(n)) / (root8 * tan2 + 1.0 / std::sqrt(n)));
    }
  }
  out.leading = std::sqrt(2.0 * n * p.lambda);
  out.exact = scheme_phase_resolution_exact(p).s;
  out.rel_dev_series = std::abs(out.series - out.exact) / out.exact;
  out.rel_dev_leading = std::abs(out.leading - out.exact) / out.exact;
  return out;
}

enum class MixerVariant { BeamSplitter, Interferometer };

struct SurfaceGrid {
  MixerVariant variant = MixerVariant::BeamSplitter;
  std::vector<double> n_values;
  std::vector<double> axis;  // r2 amplitudes in [0, 1], or phi in [0, pi]
  double lambda = 0.5;
};

struct SurfaceRow {
  double n_pump = 0.0;
  double axis = 0.0;
  double s_exact = 0.0;
  double s_approx = 0.0;  // leading (2 N lambda)^{1/2}
  double rel_dev = 0.0;
};

inline MixerConfig mixer_at(MixerVariant variant, double axis) {
  if (variant == MixerVariant::BeamSplitter) return BeamSplitterConfig::lossless(axis);
  return InterferometerConfig{axis, 0.0, 0.0};
}

/// Phase resolution over (N, r2) or (N, phi), N-major.
inline std::vector<SurfaceRow> fig6_surface(const SurfaceGrid& grid) {
  std::vector<SurfaceRow> rows;
  rows.reserve(grid.n_values.size() * grid.axis.size());
  for (double n : grid.n_values) {
    for (double x : grid.axis) {
      const SchemeParams p{n, grid.lambda, mixer_at(grid.variant, x)};
      const auto approx = scheme_phase_resolution_approx(p);
      rows.push_back({n, x, approx.exact, approx.leading, approx.rel_dev_leading});
    }
  }
  return rows;
}

}  // namespace squeezelab
