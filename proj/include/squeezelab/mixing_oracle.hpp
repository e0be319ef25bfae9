#pragma once

// Brute-force Fock-space evaluation of a mixer output: build |alpha> ⊗
// |0, s e^{i theta}>, push it through the exact mode map and measure output
// mode 1 directly. Used to check the closed-form results.

#include "squeezelab/fock_state.hpp"
#include "squeezelab/linear_optics.hpp"
#include "squeezelab/metrics.hpp"
#include "squeezelab/mixer.hpp"
#include "squeezelab/quadrature.hpp"

namespace squeezelab {

struct MixOracleResult {
  PhaseResolution s;      // intensity <b1† b1>, Var(b1 + b1†)
  double mean_photons_in = 0.0;
  double mean_photons_out = 0.0;
  double norm_out = 1.0;
};

inline MixOracleResult fock_mix_phase_resolution(const MixerConfig& mixer, SqueezeParams squeeze, complex alpha) {
  const FockState input = tensor_product(coherent_state(alpha), squeezed_vacuum(squeeze));
  const FockState output = apply_mixer(input, mixer);
  MixOracleResult r;
  const double var = quadrature_stats(output, QuadratureSpec::y2(0)).variance;
  r.s = phase_resolution(distance_intensity(output, QuadratureSpec::y2(0)), var);
  r.mean_photons_in = expectation(input, Operator::number(0) + Operator::number(1)).real();
  r.mean_photons_out = expectation(output, Operator::number(0) + Operator::number(1)).real();
  r.norm_out = output.norm_squared();
  return r;
}

}  // namespace squeezelab
