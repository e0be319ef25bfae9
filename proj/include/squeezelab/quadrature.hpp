#pragma once

// Quadratures with vacuum variance 1.
//
// Every quadrature is built from a normalized annihilation operator ã
// ([ã, ã†] = 1) as  Y = ã + ã†  (distance) or  X = -i(ã† - ã)  (uncertainty).
//
//   Y2/X2     ã = a_mode
//   Y3/X3     ã = a+ / sqrt(2),  a+ = i(a_signal - a_idler)
//   generic   ã = e^{-i angle} a_mode, quadrature ã + ã†
//             (angle 0 gives Y2, angle -pi/2 gives X2)

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <type_traits>

#include "squeezelab/block_state.hpp"
#include "squeezelab/fock_state.hpp"
#include "squeezelab/metrics.hpp"
#include "squeezelab/operator.hpp"

namespace squeezelab {

struct QuadratureSpec {
  enum class Kind { Y2, X2, Y3, X3, Generic };

  Kind kind = Kind::Y2;
  int mode = 0;        // sub-harmonic mode, or signal mode for Y3/X3
  int partner = 1;     // idler mode for Y3/X3
  double angle = 0.0;  // Generic only, radians

  static QuadratureSpec y2(int mode = 0) { return {Kind::Y2, mode, 0, 0.0}; }
  static QuadratureSpec x2(int mode = 0) { return {Kind::X2, mode, 0, 0.0}; }
  static QuadratureSpec y3(int signal = 0, int idler = 1) { return {Kind::Y3, signal, idler, 0.0}; }
  static QuadratureSpec x3(int signal = 0, int idler = 1) { return {Kind::X3, signal, idler, 0.0}; }
  static QuadratureSpec generic(int mode, double angle) { return {Kind::Generic, mode, 0, angle}; }

  bool two_mode() const { return kind == Kind::Y3 || kind == Kind::X3; }
  bool uncertainty_type() const { return kind == Kind::X2 || kind == Kind::X3; }
  int max_mode() const { return two_mode() ? std::max(mode, partner) : mode; }
};

/// The normalized annihilation operator ã underlying a quadrature.
inline Operator mode_operator(const QuadratureSpec& q) {
  using K = QuadratureSpec::Kind;
  switch (q.kind) {
    case K::Y2:
    case K::X2:
      return Operator::annihilate(q.mode);
    case K::Y3:
    case K::X3:
      return complex(0.0, 1.0 / std::sqrt(2.0)) * (Operator::annihilate(q.mode) - Operator::annihilate(q.partner));
    case K::Generic:
      return std::polar(1.0, -q.angle) * Operator::annihilate(q.mode);
  }
  throw std::logic_error("mode_operator: unknown quadrature kind");
}

inline Operator quadrature_operator(const QuadratureSpec& q) {
  const Operator a = mode_operator(q);
  const Operator ad = a.adjoint();
  if (q.uncertainty_type()) return complex(0.0, -1.0) * (ad - a);
  return a + ad;
}

struct QuadratureStats {
  double mean = 0.0;
  double variance = 0.0;
  double intensity = 0.0;  // <Q† Q> = <Q^2> for Hermitian Q
};

namespace detail {

template <typename State>
int state_modes(const State& state) {
  if constexpr (std::is_same_v<State, FockState>)
    return state.modes();
  else
    return state.layout().spec().modes;
}

template <typename State>
void check_modes(const State& state, const QuadratureSpec& q) {
  if (q.max_mode() >= state_modes(state) || q.mode < 0 || (q.two_mode() && q.partner < 0))
    throw std::out_of_range("quadrature references a mode the state does not have");
  if (q.two_mode() && q.mode == q.partner) throw std::invalid_argument("Y3/X3 need two distinct modes");
}

}  // namespace detail

/// Mean, variance and <Q†Q> of a quadrature, evaluated by brute-force operator
/// algebra in the truncated space.
template <typename State>
QuadratureStats quadrature_stats(const State& state, const QuadratureSpec& q) {
  detail::check_modes(state, q);
  const Operator op = quadrature_operator(q);
  const double mean = expectation(state, op).real();
  const double second = expectation(state, op * op).real();
  return {mean, std::max(second - mean * mean, 0.0), second};
}

/// Normal-ordered intensity <ã† ã> of the quadrature's underlying mode.
template <typename State>
double distance_intensity(const State& state, const QuadratureSpec& q) {
  detail::check_modes(state, q);
  const Operator a = mode_operator(q);
  return expectation(state, a.adjoint() * a).real();
}

/// First and second moments of ã: enough to evaluate every rotated quadrature
/// of the mode without re-summing over the state.
struct ModeMoments {
  complex mean;        // <ã>
  complex pair;        // <ã²>
  double number = 0;   // <ã† ã>

  /// Var(e^{-i phi} ã + h.c.); phi = 0 is Y, phi = -pi/2 is X.
  double rotated_variance(double phi) const {
    const complex m = std::polar(1.0, -phi) * mean;
    const complex p = std::polar(1.0, -2.0 * phi) * pair;
    const double second = 2.0 * p.real() + 2.0 * number + 1.0;
    const double first = 2.0 * m.real();
    return second - first * first;
  }
  double y_variance() const { return rotated_variance(0.0); }
  double x_variance() const { return rotated_variance(-M_PI / 2.0); }

  /// Smallest quadrature variance over all angles.
  double min_variance() const {
    const complex centered_pair = pair - mean * mean;
    const double centered_number = number - std::norm(mean);
    return 1.0 + 2.0 * centered_number - 2.0 * std::abs(centered_pair);
  }
};

template <typename State>
ModeMoments mode_moments(const State& state, const QuadratureSpec& q) {
  detail::check_modes(state, q);
  const Operator a = mode_operator(q);
  return {expectation(state, a), expectation(state, a * a), expectation(state, a.adjoint() * a).real()};
}

/// Phase resolution of a state: numerator from the distance quadrature
/// (normal-ordered intensity, or its variance for QuadratureOnly), variance
/// from the uncertainty quadrature.
template <typename State>
PhaseResolution state_phase_resolution(const State& state, const QuadratureSpec& distance,
                                       const QuadratureSpec& uncertainty,
                                       Numerator kind = Numerator::Intensity) {
  const double var_x = quadrature_stats(state, uncertainty).variance;
  const double numerator = kind == Numerator::Intensity ? distance_intensity(state, distance)
                                                        : quadrature_stats(state, distance).variance;
  return phase_resolution(numerator, var_x);
}

}  // namespace squeezelab
