#pragma once

// Dense truncated Fock-space states of 1-4 bosonic modes.

#include <cmath>
#include <complex>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "squeezelab/errors.hpp"
#include "squeezelab/operator.hpp"

namespace squeezelab {

inline constexpr double kNormDeficitTolerance = 1e-10;
inline constexpr int kDefaultMaxCutoff = 1 << 14;

/// Squeezing magnitude s >= 0 and phase theta (reduced modulo 2 pi).
struct SqueezeParams {
  double s = 0.0;
  double theta = 0.0;

  SqueezeParams() = default;
  SqueezeParams(double magnitude, double phase) : s(magnitude), theta(std::remainder(phase, 2.0 * M_PI)) {
    if (!(magnitude >= 0.0)) throw ConfigError("squeezing magnitude must be >= 0");
    if (theta < 0.0) theta += 2.0 * M_PI;
  }
};

/// Starting occupation cutoff for a mode holding mean photon number `mean_n`.
inline int default_cutoff(double mean_n) {
  return static_cast<int>(std::ceil(mean_n + 6.0 * std::sqrt(mean_n) + 10.0));
}

class FockState {
 public:
  FockState() = default;

  /// `dims[m]` is the truncation dimension (max occupation + 1) of mode m.
  FockState(std::vector<int> dims, std::vector<complex> amplitudes)
      : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {
    if (dims_.empty() || static_cast<int>(dims_.size()) > kMaxModes)
      throw std::invalid_argument("FockState: mode count must be 1.." + std::to_string(kMaxModes));
    std::size_t total = 1;
    for (int d : dims_) {
      if (d < 1) throw std::invalid_argument("FockState: truncation dimension must be >= 1");
      total *= static_cast<std::size_t>(d);
    }
    if (amplitudes_.size() != total) throw std::invalid_argument("FockState: amplitude count does not match dims");
    strides_.assign(dims_.size(), 1);
    for (int m = static_cast<int>(dims_.size()) - 2; m >= 0; --m)
      strides_[m] = strides_[m + 1] * static_cast<std::size_t>(dims_[m + 1]);
  }

  static FockState vacuum(std::vector<int> dims) {
    std::size_t total = 1;
    for (int d : dims) total *= static_cast<std::size_t>(std::max(d, 1));
    std::vector<complex> amps(total);
    amps[0] = 1.0;
    return FockState(std::move(dims), std::move(amps));
  }

  int modes() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& dims() const { return dims_; }
  std::size_t size() const { return amplitudes_.size(); }
  std::span<const complex> amplitudes() const { return amplitudes_; }

  bool contains(const Occupation& occ) const {
    for (int m = 0; m < modes(); ++m)
      if (occ[m] < 0 || occ[m] >= dims_[static_cast<std::size_t>(m)]) return false;
    return true;
  }

  std::size_t index(const Occupation& occ) const {
    std::size_t idx = 0;
    for (int m = 0; m < modes(); ++m) idx += static_cast<std::size_t>(occ[m]) * strides_[static_cast<std::size_t>(m)];
    return idx;
  }

  Occupation occupation(std::size_t idx) const {
    Occupation occ;
    occ.modes = modes();
    for (int m = 0; m < modes(); ++m) {
      occ[m] = static_cast<int>(idx / strides_[static_cast<std::size_t>(m)]);
      idx %= strides_[static_cast<std::size_t>(m)];
    }
    return occ;
  }

  complex amplitude(const Occupation& occ) const { return contains(occ) ? amplitudes_[index(occ)] : complex{}; }

  double norm_squared() const {
    return std::accumulate(amplitudes_.begin(), amplitudes_.end(), 0.0,
                           [](double acc, complex c) { return acc + std::norm(c); });
  }

 private:
  std::vector<int> dims_;
  std::vector<std::size_t> strides_;
  std::vector<complex> amplitudes_;
};

namespace detail {

inline double tail_deficit(std::span<const complex> amps) {
  double sum = 0.0;
  for (auto c : amps) sum += std::norm(c);
  return 1.0 - sum;
}

inline void normalize(std::vector<complex>& amps) {
  double sum = 0.0;
  for (auto c : amps) sum += std::norm(c);
  const double scale = 1.0 / std::sqrt(sum);
  for (auto& c : amps) c *= scale;
}

// Raises the cutoff by doubling until the truncated norm deficit is below
// kNormDeficitTolerance. `coefficients(cutoff)` returns amplitudes 0..cutoff.
template <typename Fn>
std::vector<complex> fill_to_tolerance(int cutoff, int max_cutoff, Fn&& coefficients, const char* what) {
  for (;;) {
    auto amps = coefficients(cutoff);
    if (tail_deficit(amps) < kNormDeficitTolerance) {
      normalize(amps);
      return amps;
    }
    if (cutoff >= max_cutoff)
      throw TruncationError(std::string(what) + ": norm deficit exceeds 1e-10 at cutoff " + std::to_string(cutoff));
    cutoff = std::min(2 * cutoff, max_cutoff);
  }
}

}  // namespace detail

/// Single-mode coherent state |alpha>. `cutoff` is a minimum; it is raised to
/// the default policy and then doubled until the norm deficit is < 1e-10.
/// Passing cutoff == max_cutoff pins the cutoff: the state either fits or
/// TruncationError is thrown.
inline FockState coherent_state(complex alpha, int cutoff = 0, int max_cutoff = kDefaultMaxCutoff) {
  const double r = std::abs(alpha);
  const double phase = std::arg(alpha);
  cutoff = std::min(std::max(cutoff, default_cutoff(r * r)), max_cutoff);
  auto coefficients = [&](int c) {
    std::vector<complex> amps(static_cast<std::size_t>(c) + 1);
    if (r == 0.0) {
      amps[0] = 1.0;
      return amps;
    }
    const double log_r = std::log(r);
    for (int n = 0; n <= c; ++n) {
      const double log_mag = -0.5 * r * r + n * log_r - 0.5 * std::lgamma(n + 1.0);
      amps[static_cast<std::size_t>(n)] = std::polar(std::exp(log_mag), n * phase);
    }
    return amps;
  };
  auto amps = detail::fill_to_tolerance(cutoff, max_cutoff, coefficients, "coherent_state");
  const int dim = static_cast<int>(amps.size());
  return FockState({dim}, std::move(amps));
}

/// Squeezed vacuum with c_{2m} ∝ (-e^{i theta} tanh s)^m sqrt((2m)!)/(2^m m!).
/// With this convention <a^2> = -e^{i theta} sinh s cosh s; at theta = 0 the
/// quadrature a + a^dagger is squeezed to e^{-2s}.
inline FockState squeezed_vacuum(SqueezeParams params, int cutoff = 0, int max_cutoff = kDefaultMaxCutoff) {
  const double sh = std::sinh(params.s);
  cutoff = std::min(std::max(cutoff, default_cutoff(sh * sh)), max_cutoff);
  const complex ratio = -std::polar(std::tanh(params.s), params.theta);
  auto coefficients = [&](int c) {
    std::vector<complex> amps(static_cast<std::size_t>(c) + 1);
    amps[0] = 1.0 / std::sqrt(std::cosh(params.s));
    for (int n = 2; n <= c; n += 2)
      amps[static_cast<std::size_t>(n)] =
          amps[static_cast<std::size_t>(n - 2)] * ratio * std::sqrt((n - 1.0) / static_cast<double>(n));
    return amps;
  };
  auto amps = detail::fill_to_tolerance(cutoff, max_cutoff, coefficients, "squeezed_vacuum");
  const int dim = static_cast<int>(amps.size());
  return FockState({dim}, std::move(amps));
}

/// |a> ⊗ |b>, modes of `a` first.
inline FockState tensor_product(const FockState& a, const FockState& b) {
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  std::vector<complex> amps;
  amps.reserve(a.size() * b.size());
  for (auto x : a.amplitudes())
    for (auto y : b.amplitudes()) amps.push_back(x * y);
  return FockState(std::move(dims), std::move(amps));
}

/// <state| op |state>. Ladder operators are truncated at each mode's cutoff.
inline complex expectation(const FockState& state, const Operator& op) {
  if (op.max_mode() >= state.modes())
    throw std::out_of_range("expectation: operator references mode " + std::to_string(op.max_mode()) +
                            " but state has " + std::to_string(state.modes()));
  const auto amps = state.amplitudes();
  complex total{};
  for (std::size_t src = 0; src < amps.size(); ++src) {
    if (amps[src] == complex{}) continue;
    const Occupation base = state.occupation(src);
    for (const auto& term : op.terms()) {
      Occupation occ = base;
      auto factor = term.apply(occ);
      if (!factor || !state.contains(occ)) continue;
      total += std::conj(amps[state.index(occ)]) * term.coeff * *factor * amps[src];
    }
  }
  return total;
}

/// Applies op to the state (no renormalization); the result keeps the input dims.
inline FockState apply(const Operator& op, const FockState& state) {
  if (op.max_mode() >= state.modes()) throw std::out_of_range("apply: operator references a missing mode");
  std::vector<complex> out(state.size());
  const auto amps = state.amplitudes();
  for (std::size_t src = 0; src < amps.size(); ++src) {
    if (amps[src] == complex{}) continue;
    const Occupation base = state.occupation(src);
    for (const auto& term : op.terms()) {
      Occupation occ = base;
      auto factor = term.apply(occ);
      if (!factor || !state.contains(occ)) continue;
      out[state.index(occ)] += term.coeff * *factor * amps[src];
    }
  }
  return FockState(state.dims(), std::move(out));
}

}  // namespace squeezelab
