#pragma once

// Exact action of a two-mode linear mixer on a truncated Fock state.
//
// With b = U a, input creation operators are a_j† = sum_i U_ij b_i†. An input
// basis ket |n1, n2> is rebuilt in the output basis one creation operator at
// a time, per total-photon-number sector:
//
//   |n1, n2> = (U_12 b1† + U_22 b2†) |n1, n2 - 1> / sqrt(n2)
//   |n1, 0>  = (U_11 b1† + U_21 b2†) |n1 - 1, 0> / sqrt(n1)
//
// No factorials appear, so cutoffs in the hundreds are fine. Photon number is
// conserved, so output dims of (total cutoff + 1) hold the result exactly.

#include <cmath>
#include <vector>

#include "squeezelab/fock_state.hpp"
#include "squeezelab/mixer.hpp"

namespace squeezelab {

inline FockState apply_mode_map(const FockState& input, const ModeMatrix& u) {
  if (input.modes() != 2) throw std::invalid_argument("apply_mode_map: need a two-mode state");
  const double defect = unitarity_defect(u);
  if (defect > kUnitarityTolerance) throw ConfigError("apply_mode_map: mode map is not unitary");

  const int cut1 = input.dims()[0] - 1;
  const int cut2 = input.dims()[1] - 1;
  const int max_total = cut1 + cut2;
  const int out_dim = max_total + 1;
  FockState shape = FockState::vacuum({out_dim, out_dim});
  std::vector<complex> out(shape.size());

  // Push (x b1† + y b2†) onto a sector-(n-1) vector indexed by m1.
  auto raise = [](const std::vector<complex>& v, int n, complex x, complex y, double scale) {
    std::vector<complex> w(static_cast<std::size_t>(n) + 1);
    for (int m1 = 0; m1 < n; ++m1) {
      const complex c = v[static_cast<std::size_t>(m1)] * scale;
      if (c == complex{}) continue;
      w[static_cast<std::size_t>(m1) + 1] += x * std::sqrt(m1 + 1.0) * c;
      w[static_cast<std::size_t>(m1)] += y * std::sqrt(static_cast<double>(n - m1)) * c;
    }
    return w;
  };

  // columns[n1] holds the output-basis expansion of |n1, n - n1>.
  std::vector<std::vector<complex>> previous(static_cast<std::size_t>(cut1) + 1);
  std::vector<std::vector<complex>> current(static_cast<std::size_t>(cut1) + 1);
  previous[0] = {1.0};
  out[shape.index({0, 0})] += input.amplitude({0, 0});

  for (int n = 1; n <= max_total; ++n) {
    const int lo = std::max(0, n - cut2);
    const int hi = std::min(n, cut1);
    for (auto& col : current) col.clear();
    for (int n1 = lo; n1 <= hi; ++n1) {
      const int n2 = n - n1;
      auto& col = current[static_cast<std::size_t>(n1)];
      if (n2 > 0)
        col = raise(previous[static_cast<std::size_t>(n1)], n, u[0][1], u[1][1], 1.0 / std::sqrt(static_cast<double>(n2)));
      else
        col = raise(previous[static_cast<std::size_t>(n1) - 1], n, u[0][0], u[1][0], 1.0 / std::sqrt(static_cast<double>(n1)));
      const complex weight = input.amplitude({n1, n2});
      if (weight == complex{}) continue;
      for (int m1 = 0; m1 <= n; ++m1) out[shape.index({m1, n - m1})] += weight * col[static_cast<std::size_t>(m1)];
    }
    std::swap(previous, current);
  }
  return FockState({out_dim, out_dim}, std::move(out));
}

/// Output state on (b1, b2) for input modes (a1, a2).
inline FockState apply_beam_splitter(const FockState& input, const BeamSplitterConfig& cfg) {
  cfg.validate();
  return apply_mode_map(input, cfg.matrix());
}

/// Output state on (c1, c2) for input modes (a1, a2).
inline FockState apply_interferometer(const FockState& input, const InterferometerConfig& cfg) {
  cfg.validate();
  return apply_mode_map(input, cfg.matrix());
}

inline FockState apply_mixer(const FockState& input, const MixerConfig& cfg) {
  validate(cfg);
  return apply_mode_map(input, mode_matrix(cfg));
}

}  // namespace squeezelab
