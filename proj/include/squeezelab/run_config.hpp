#pragma once

// Command configurations for the squeezelab CLI, with a JSON form that is
// both the --config input and the config.json echo written next to outputs.

#include <optional>
#include <string>
#include <variant>

#include "json.hpp"
#include "squeezelab/errors.hpp"
#include "squeezelab/gaussian.hpp"
#include "squeezelab/metrics.hpp"
#include "squeezelab/numerics.hpp"
#include "squeezelab/oscillator.hpp"

namespace squeezelab {

struct SimulateArgs {
  OscillatorKind kind = OscillatorKind::Degenerate;
  double n_pump = 16.0;
  int points = 201;
  std::optional<double> t_max;     // default: 5 / sqrt(N)
  std::optional<int> pump_cutoff;  // default: cutoff policy
  friend bool operator==(const SimulateArgs&, const SimulateArgs&) = default;
};

struct SweepArgs {
  OscillatorKind kind = OscillatorKind::Degenerate;
  std::string n_range = "4:64:geometric:5";
  friend bool operator==(const SweepArgs&, const SweepArgs&) = default;
};

struct MixArgs {
  MixerVariant variant = MixerVariant::BeamSplitter;
  double alpha = 2.0;  // coherent amplitude, real and >= 0
  double s = 0.5;
  double r2 = 0.5;     // beam splitter reflection amplitude
  double delta = 0.0;
  double psi = 0.0;
  std::optional<double> theta;  // beam splitter only; default 2 delta + 2 psi + theta = 0
  double phi = M_PI / 2.0;      // interferometer
  double Phi = 0.0;             // interferometer; theta is fixed to -2 Phi
  bool oracle = false;
  friend bool operator==(const MixArgs&, const MixArgs&) = default;
};

struct SchemeArgs {
  MixerVariant variant = MixerVariant::BeamSplitter;
  double n_pump = 1e6;
  double lambda = 0.5;
  double r2 = 0.1;
  double phi = M_PI / 2.0;
  friend bool operator==(const SchemeArgs&, const SchemeArgs&) = default;
};

struct SurfaceArgs {
  MixerVariant variant = MixerVariant::BeamSplitter;
  std::string n_range = "1e2:1e7:geometric:26";
  int axis_points = 21;
  double lambda = 0.5;
  friend bool operator==(const SurfaceArgs&, const SurfaceArgs&) = default;
};

struct FitArgs {
  std::string input;  // two-column CSV (x, value)
  friend bool operator==(const FitArgs&, const FitArgs&) = default;
};

struct SpectralArgs {
  std::string variance;   // two-column CSV (omega, V)
  std::string numerator;  // two-column CSV (omega, W) or unsqueezed spectrum
  Numerator kind = Numerator::Intensity;
  friend bool operator==(const SpectralArgs&, const SpectralArgs&) = default;
};

using CommandArgs = std::variant<SimulateArgs, SweepArgs, MixArgs, SchemeArgs, SurfaceArgs, FitArgs, SpectralArgs>;

struct RunConfig {
  CommandArgs args;
  friend bool operator==(const RunConfig&, const RunConfig&) = default;

  std::string command() const {
    static const char* const names[] = {"simulate", "sweep", "mix", "scheme", "surface", "fit", "spectral"};
    return names[args.index()];
  }
};

inline std::string to_string(MixerVariant v) { return v == MixerVariant::BeamSplitter ? "bs" : "in"; }

inline MixerVariant parse_mixer_variant(const std::string& text) {
  if (text == "bs" || text == "beam-splitter" || text == "beam_splitter") return MixerVariant::BeamSplitter;
  if (text == "in" || text == "interferometer") return MixerVariant::Interferometer;
  throw ConfigError("unknown mixer variant '" + text + "' (expected bs or in)");
}

inline std::string to_string(Numerator n) { return n == Numerator::Intensity ? "intensity" : "quadrature"; }

inline Numerator parse_numerator(const std::string& text) {
  if (text == "intensity") return Numerator::Intensity;
  if (text == "quadrature" || text == "quadrature-only") return Numerator::QuadratureOnly;
  throw ConfigError("unknown spectral numerator '" + text + "'");
}

namespace detail {

template <typename T>
void put_optional(nlohmann::ordered_json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <typename T>
std::optional<T> get_optional(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

}  // namespace detail

inline void validate(const RunConfig& cfg) {
  std::visit(
      [](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, SimulateArgs>) {
          if (!(a.n_pump >= 0.0)) throw ConfigError("simulate: N must be >= 0");
          if (a.points < 2) throw ConfigError("simulate: need at least 2 time points");
          if (a.t_max && !(*a.t_max > 0.0)) throw ConfigError("simulate: t-max must be positive");
          if (a.pump_cutoff && *a.pump_cutoff < 0) throw ConfigError("simulate: pump cutoff must be >= 0");
        } else if constexpr (std::is_same_v<T, SweepArgs>) {
          for (double n : parse_range(a.n_range))
            if (!(n > 0.0)) throw ConfigError("sweep: N values must be positive");
        } else if constexpr (std::is_same_v<T, MixArgs>) {
          if (!(a.alpha >= 0.0)) throw ConfigError("mix: alpha must be >= 0");
          if (!(a.s >= 0.0)) throw ConfigError("mix: s must be >= 0");
          if (a.variant == MixerVariant::BeamSplitter) {
            BeamSplitterConfig::lossless(a.r2, a.delta, a.psi).validate();
          } else {
            InterferometerConfig{a.phi, a.psi, a.Phi}.validate();
          }
        } else if constexpr (std::is_same_v<T, SchemeArgs>) {
          SchemeParams{a.n_pump, a.lambda, mixer_at(a.variant, a.variant == MixerVariant::BeamSplitter ? a.r2 : a.phi)}
              .validate();
        } else if constexpr (std::is_same_v<T, SurfaceArgs>) {
          for (double n : parse_range(a.n_range))
            if (!(n >= 1.0)) throw ConfigError("surface: N values must be >= 1");
          if (a.axis_points < 2) throw ConfigError("surface: need at least 2 axis points");
          if (!(a.lambda > 0.0 && a.lambda <= 1.0)) throw ConfigError("surface: lambda must lie in (0, 1]");
        } else if constexpr (std::is_same_v<T, FitArgs>) {
          if (a.input.empty()) throw ConfigError("fit: input file required");
        } else if constexpr (std::is_same_v<T, SpectralArgs>) {
          if (a.variance.empty() || a.numerator.empty()) throw ConfigError("spectral: both spectra files required");
        }
      },
      cfg.args);
}

inline nlohmann::ordered_json to_json(const RunConfig& cfg) {
  nlohmann::ordered_json p;
  std::visit(
      [&p](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, SimulateArgs>) {
          p["kind"] = to_string(a.kind);
          p["N"] = a.n_pump;
          p["points"] = a.points;
          detail::put_optional(p, "t_max", a.t_max);
          detail::put_optional(p, "pump_cutoff", a.pump_cutoff);
        } else if constexpr (std::is_same_v<T, SweepArgs>) {
          p["kind"] = to_string(a.kind);
          p["N"] = a.n_range;
        } else if constexpr (std::is_same_v<T, MixArgs>) {
          p["variant"] = to_string(a.variant);
          p["alpha"] = a.alpha;
          p["s"] = a.s;
          p["r2"] = a.r2;
          p["delta"] = a.delta;
          p["psi"] = a.psi;
          detail::put_optional(p, "theta", a.theta);
          p["phi"] = a.phi;
          p["Phi"] = a.Phi;
          p["oracle"] = a.oracle;
        } else if constexpr (std::is_same_v<T, SchemeArgs>) {
          p["variant"] = to_string(a.variant);
          p["N"] = a.n_pump;
          p["lambda"] = a.lambda;
          p["r2"] = a.r2;
          p["phi"] = a.phi;
        } else if constexpr (std::is_same_v<T, SurfaceArgs>) {
          p["variant"] = to_string(a.variant);
          p["N"] = a.n_range;
          p["axis_points"] = a.axis_points;
          p["lambda"] = a.lambda;
        } else if constexpr (std::is_same_v<T, FitArgs>) {
          p["input"] = a.input;
        } else if constexpr (std::is_same_v<T, SpectralArgs>) {
          p["variance"] = a.variance;
          p["numerator"] = a.numerator;
          p["numerator_kind"] = to_string(a.kind);
        }
      },
      cfg.args);
  return {{"schema", 1}, {"command", cfg.command()}, {"params", p}};
}

inline RunConfig run_config_from_json(const nlohmann::json& j) {
  try {
    if (j.value("schema", 0) != 1) throw ConfigError("config: unsupported or missing schema (expected 1)");
    const std::string command = j.at("command").get<std::string>();
    const nlohmann::json p = j.value("params", nlohmann::json::object());
    RunConfig cfg;
    if (command == "simulate") {
      SimulateArgs a;
      a.kind = parse_oscillator_kind(p.value("kind", to_string(a.kind)));
      a.n_pump = p.value("N", a.n_pump);
      a.points = p.value("points", a.points);
      a.t_max = detail::get_optional<double>(p, "t_max");
      a.pump_cutoff = detail::get_optional<int>(p, "pump_cutoff");
      cfg.args = a;
    } else if (command == "sweep") {
      SweepArgs a;
      a.kind = parse_oscillator_kind(p.value("kind", to_string(a.kind)));
      a.n_range = p.value("N", a.n_range);
      cfg.args = a;
    } else if (command == "mix") {
      MixArgs a;
      a.variant = parse_mixer_variant(p.value("variant", to_string(a.variant)));
      a.alpha = p.value("alpha", a.alpha);
      a.s = p.value("s", a.s);
      a.r2 = p.value("r2", a.r2);
      a.delta = p.value("delta", a.delta);
      a.psi = p.value("psi", a.psi);
      a.theta = detail::get_optional<double>(p, "theta");
      a.phi = p.value("phi", a.phi);
      a.Phi = p.value("Phi", a.Phi);
      a.oracle = p.value("oracle", a.oracle);
      cfg.args = a;
    } else if (command == "scheme") {
      SchemeArgs a;
      a.variant = parse_mixer_variant(p.value("variant", to_string(a.variant)));
      a.n_pump = p.value("N", a.n_pump);
      a.lambda = p.value("lambda", a.lambda);
      a.r2 = p.value("r2", a.r2);
      a.phi = p.value("phi", a.phi);
      cfg.args = a;
    } else if (command == "surface") {
      SurfaceArgs a;
      a.variant = parse_mixer_variant(p.value("variant", to_string(a.variant)));
      a.n_range = p.value("N", a.n_range);
      a.axis_points = p.value("axis_points", a.axis_points);
      a.lambda = p.value("lambda", a.lambda);
      cfg.args = a;
    } else if (command == "fit") {
      cfg.args = FitArgs{p.value("input", std::string{})};
    } else if (command == "spectral") {
      SpectralArgs a;
      a.variance = p.value("variance", std::string{});
      a.numerator = p.value("numerator", std::string{});
      a.kind = parse_numerator(p.value("numerator_kind", to_string(a.kind)));
      cfg.args = a;
    } else {
      throw ConfigError("config: unknown command '" + command + "'");
    }
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

}  // namespace squeezelab
