#pragma once

// Two-port linear mixers: output modes b_i = sum_j U_ij a_j.

#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <variant>

#include "squeezelab/errors.hpp"
#include "squeezelab/operator.hpp"

namespace squeezelab {

using ModeMatrix = std::array<std::array<complex, 2>, 2>;

inline constexpr double kUnitarityTolerance = 1e-12;

/// Max-abs entry of U U† - I.
inline double unitarity_defect(const ModeMatrix& u) {
  double worst = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      complex sum{};
      for (int k = 0; k < 2; ++k) sum += u[i][k] * std::conj(u[j][k]);
      worst = std::max(worst, std::abs(sum - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

/// b1 = e^{i delta} [t1 a1 + e^{i psi} r2 a2]
/// b2 = e^{i delta} [t2 a2 - e^{-i psi} r1 a1]
struct BeamSplitterConfig {
  double t1 = 1.0;
  double r1 = 0.0;
  double t2 = 1.0;
  double r2 = 0.0;
  double delta = 0.0;
  double psi = 0.0;

  /// Symmetric lossless splitter with reflection amplitude r2 in [0, 1].
  static BeamSplitterConfig lossless(double r2, double delta = 0.0, double psi = 0.0) {
    if (!(r2 >= 0.0 && r2 <= 1.0)) throw ConfigError("beam splitter: r2 must lie in [0, 1]");
    const double t = std::sqrt(1.0 - r2 * r2);
    return {t, r2, t, r2, delta, psi};
  }

  ModeMatrix matrix() const {
    const complex global = std::polar(1.0, delta);
    return {{{global * t1, global * std::polar(r2, psi)}, {-global * std::polar(r1, -psi), global * t2}}};
  }

  void validate() const {
    if (std::abs(t1 * t1 + r1 * r1 - 1.0) > kUnitarityTolerance ||
        std::abs(t2 * t2 + r2 * r2 - 1.0) > kUnitarityTolerance)
      throw ConfigError("beam splitter: t1^2 + r1^2 and t2^2 + r2^2 must equal 1");
    const double defect = unitarity_defect(matrix());
    if (defect > kUnitarityTolerance)
      throw ConfigError("beam splitter: mode map is not unitary (defect " + std::to_string(defect) + ")");
  }

  friend bool operator==(const BeamSplitterConfig&, const BeamSplitterConfig&) = default;
};

/// c1 = e^{i Phi} [-i e^{-i psi} sin(phi/2) a1 + cos(phi/2) a2]
/// c2 = e^{i Phi} [cos(phi/2) a1 - i e^{i psi} sin(phi/2) a2]
struct InterferometerConfig {
  double phi = 0.0;  // relative arm phase, [0, pi]
  double psi = 0.0;
  double Phi = 0.0;

  ModeMatrix matrix() const {
    const complex global = std::polar(1.0, Phi);
    const complex minus_i(0.0, -1.0);
    const double sn = std::sin(phi / 2.0);
    const double cs = std::cos(phi / 2.0);
    return {{{global * minus_i * std::polar(sn, -psi), global * cs},
             {global * cs, global * minus_i * std::polar(sn, psi)}}};
  }

  void validate() const {
    if (!(phi >= 0.0 && phi <= M_PI)) throw ConfigError("interferometer: phi must lie in [0, pi]");
    const double defect = unitarity_defect(matrix());
    if (defect > kUnitarityTolerance)
      throw ConfigError("interferometer: mode map is not unitary (defect " + std::to_string(defect) + ")");
  }

  friend bool operator==(const InterferometerConfig&, const InterferometerConfig&) = default;
};

using MixerConfig = std::variant<BeamSplitterConfig, InterferometerConfig>;

inline ModeMatrix mode_matrix(const MixerConfig& cfg) {
  return std::visit([](const auto& c) { return c.matrix(); }, cfg);
}

inline void validate(const MixerConfig& cfg) {
  std::visit([](const auto& c) { c.validate(); }, cfg);
}

}  // namespace squeezelab
