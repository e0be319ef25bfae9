#pragma once

// Phase resolution S = (<Y†Y> / <ΔX²>)^{1/2}, its per-frequency spectral
// form, and log-log power-law fits used for scaling claims.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "squeezelab/errors.hpp"

namespace squeezelab {

/// What the numerator of a phase resolution measures.
///  - Intensity: <Y†Y> of the distance quadrature (the default metric).
///  - QuadratureOnly: variance of the unsqueezed quadrature. Near threshold
///    this over-counts (it scales as N^{3/4} instead of N^{1/2}) because the
///    unsqueezed fluctuations slow down; kept so that behaviour is testable.
enum class Numerator { Intensity, QuadratureOnly };

struct PhaseResolution {
  double intensity_y = 0.0;  // numerator, see Numerator
  double var_x = 1.0;
  double s = 0.0;
};

inline PhaseResolution phase_resolution(double intensity_y, double var_x) {
  if (!(var_x > 0.0)) throw std::domain_error("phase_resolution: variance must be positive");
  if (!(intensity_y >= 0.0)) throw std::domain_error("phase_resolution: intensity must be non-negative");
  return {intensity_y, var_x, std::sqrt(intensity_y / var_x)};
}

struct SpectraInput {
  std::vector<double> omega;      // units of the cavity linewidth
  std::vector<double> variance;   // squeezed-quadrature spectrum V(omega)
  std::vector<double> numerator;  // W(omega), or unsqueezed spectrum for QuadratureOnly
  Numerator kind = Numerator::Intensity;
  double gamma = 1.0;        // labels only
  double measure_time = 1.0;

  void validate() const {
    if (omega.size() != variance.size() || omega.size() != numerator.size())
      throw std::invalid_argument("SpectraInput: arrays must have equal length");
    for (double v : variance)
      if (!(v > 0.0)) throw std::domain_error("SpectraInput: variance spectrum must be positive");
  }
};

/// S(omega) = [W(omega) / V(omega)]^{1/2}, pointwise.
inline std::vector<double> spectral_phase_resolution(const SpectraInput& sp) {
  sp.validate();
  std::vector<double> out(sp.omega.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = phase_resolution(sp.numerator[i], sp.variance[i]).s;
  return out;
}

struct PowerLawFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double r2 = 0.0;
  std::size_t points = 0;

  double operator()(double x) const { return prefactor * std::pow(x, exponent); }
};

/// Unweighted least squares of ln(value) against ln(x).
inline PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& value) {
  if (x.size() != value.size()) throw std::invalid_argument("fit_power_law: x and value differ in length");
  if (x.size() < 3) throw std::invalid_argument("fit_power_law: need at least 3 points");
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  std::vector<double> lx(x.size()), ly(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(value[i] > 0.0)) throw std::domain_error("fit_power_law: data must be strictly positive");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(value[i]);
    sx += lx[i];
    sy += ly[i];
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0.0) throw std::domain_error("fit_power_law: x values are all equal");
  PowerLawFit fit;
  fit.exponent = sxy / sxx;
  fit.prefactor = std::exp(my - fit.exponent * mx);
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = ly[i] - (my + fit.exponent * (lx[i] - mx));
    ss_res += r * r;
  }
  fit.r2 = syy == 0.0 ? 1.0 : 1.0 - ss_res / syy;
  fit.points = x.size();
  return fit;
}

}  // namespace squeezelab
