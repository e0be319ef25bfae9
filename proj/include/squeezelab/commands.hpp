#pragma once

// CLI command bodies. Each command writes its outputs plus a config.json echo
// into an output directory and returns a process status.

#include <cmath>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "squeezelab/gaussian.hpp"
#include "squeezelab/io.hpp"
#include "squeezelab/metrics.hpp"
#include "squeezelab/mixing_oracle.hpp"
#include "squeezelab/numerics.hpp"
#include "squeezelab/oscillator.hpp"
#include "squeezelab/run_config.hpp"
#include "squeezelab/svg.hpp"

namespace squeezelab::cli {

inline constexpr double kOracleTolerance = 1e-4;

struct CommandContext {
  std::filesystem::path out_dir = ".";
  unsigned jobs = 1;
  std::ostream* log = nullptr;
};

namespace detail {

using json = nlohmann::ordered_json;

inline void say(const CommandContext& ctx, const std::string& line) {
  if (ctx.log) *ctx.log << line << '\n';
}

inline void write(const CommandContext& ctx, const std::string& name, const std::string& content) {
  io::write_file(ctx.out_dir / name, content);
  say(ctx, "wrote " + (ctx.out_dir / name).string());
}

inline double relative_error(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

inline int run(const SimulateArgs& a, const CommandContext& ctx) {
  OscillatorConfig cfg;
  cfg.kind = a.kind;
  cfg.n_pump = a.n_pump;
  cfg.pump_cutoff = a.pump_cutoff;
  const OscillatorPropagator prop(cfg);
  const double t_max = a.t_max.value_or(default_time_window(a.n_pump));
  const EvolutionResult r = evolve(prop, linspace(0.0, t_max, static_cast<std::size_t>(a.points)));
  const OptimalSqueezing opt = find_optimal_squeezing(prop);

  io::CsvWriter csv({"t", "var_X", "intensity_Y", "pump_n"});
  for (std::size_t i = 0; i < r.times.size(); ++i) csv.row({r.times[i], r.var_x[i], r.intensity_y[i], r.pump_n[i]});
  write(ctx, "trajectory.csv", csv.str());

  double norm_drift = 0, energy_drift = 0, charge_drift = 0;
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    norm_drift = std::max(norm_drift, std::abs(r.norm[i] - r.norm[0]));
    energy_drift = std::max(energy_drift, std::abs(r.energy[i] - r.energy[0]) / std::max(1.0, std::abs(r.energy[0])));
    for (const auto& q : r.charges)
      charge_drift = std::max(charge_drift, std::abs(q[i] - q[0]) / std::max(1.0, std::abs(q[0])));
  }
  json summary = {{"schema", io::kSchemaVersion},
                  {"kind", to_string(a.kind)},
                  {"N", a.n_pump},
                  {"pump_cutoff", prop.pump_cutoff()},
                  {"t_sq", opt.t_sq},
                  {"var_min", opt.var_min},
                  {"S", opt.s.s},
                  {"intensity_Y", opt.s.intensity_y},
                  {"t_sq_angle", opt.t_angle},
                  {"var_min_angle", opt.var_min_angle},
                  {"S_angle", opt.s_angle.s},
                  {"grid_t_sq", r.t_sq},
                  {"drift", {{"norm", norm_drift}, {"energy", energy_drift}, {"charge", charge_drift}}}};
  write(ctx, "summary.json", io::dump(summary));
  write(ctx, "trajectory.svg",
        svg::line_plot({{"var_X", r.times, r.var_x}, {"intensity_Y", r.times, r.intensity_y}},
                       to_string(a.kind) + " oscillator, N = " + io::format_number(a.n_pump), "t", false, false));
  say(ctx, "t_sq = " + io::format_number(opt.t_sq) + "  var_min = " + io::format_number(opt.var_min) +
               "  S = " + io::format_number(opt.s.s));
  return 0;
}

inline int run(const SweepArgs& a, const CommandContext& ctx) {
  const auto ns = parse_range(a.n_range);
  const SweepResult r = sweep_oscillator(a.kind, ns, ctx.jobs);
  io::CsvWriter csv({"N", "pump_cutoff", "t_sq", "var_min", "intensity_Y", "S", "t_sq_angle", "var_min_angle", "S_angle"});
  std::vector<double> xs, var, s;
  for (const auto& p : r.points) {
    const auto& o = p.optimum;
    csv.row({p.n_pump, static_cast<double>(p.pump_cutoff), o.t_sq, o.var_min, o.s.intensity_y, o.s.s, o.t_angle,
             o.var_min_angle, o.s_angle.s});
    xs.push_back(p.n_pump);
    var.push_back(o.var_min);
    s.push_back(o.s.s);
  }
  write(ctx, "sweep.csv", csv.str());
  if (ns.size() >= 3) {
    std::vector<double> s_angle;
    for (const auto& p : r.points) s_angle.push_back(p.optimum.s_angle.s);
    json fit = {{"schema", io::kSchemaVersion},
                {"kind", to_string(a.kind)},
                {"var_min", io::to_json(r.var_fit)},
                {"S", io::to_json(r.s_fit)},
                {"S_angle", io::to_json(fit_power_law(xs, s_angle))}};
    write(ctx, "fit.json", io::dump(fit));
    say(ctx, "exponents: var_min " + io::format_number(r.var_fit.exponent) + ", S " + io::format_number(r.s_fit.exponent));
  }
  write(ctx, "sweep.svg",
        svg::line_plot({{"var_min", xs, var}, {"S", xs, s}}, to_string(a.kind) + " oscillator sweep", "N", true, true));
  return 0;
}

inline int run(const MixArgs& a, const CommandContext& ctx) {
  MixerConfig mixer;
  double theta = 0.0;
  PhaseResolution analytic;
  if (a.variant == MixerVariant::BeamSplitter) {
    const auto bs = BeamSplitterConfig::lossless(a.r2, a.delta, a.psi);
    theta = a.theta.value_or(-2.0 * a.delta - 2.0 * a.psi);
    analytic = phase_resolution(bs_intensity(bs.t1, bs.r2, a.s, a.alpha), bs_variance(bs, SqueezeParams(a.s, theta)));
    mixer = bs;
  } else {
    const InterferometerConfig in{a.phi, a.psi, a.Phi};
    in.validate();
    theta = -2.0 * a.Phi;
    analytic = in_phase_resolution(a.phi, a.s, a.alpha);
    mixer = in;
  }
  json out = {{"schema", io::kSchemaVersion}, {"variant", to_string(a.variant)}, {"theta", theta},
              {"analytic", io::to_json(analytic)}};
  say(ctx, "analytic: S = " + io::format_number(analytic.s) + "  var_X = " + io::format_number(analytic.var_x) +
               "  intensity_Y = " + io::format_number(analytic.intensity_y));
  int status = 0;
  if (a.oracle) {
    const auto oracle = fock_mix_phase_resolution(mixer, SqueezeParams(a.s, theta), complex(a.alpha, 0.0));
    const double err_s = relative_error(analytic.s, oracle.s.s);
    const double err_var = relative_error(analytic.var_x, oracle.s.var_x);
    const double err_i = analytic.intensity_y == 0.0 ? std::abs(oracle.s.intensity_y)
                                                     : relative_error(analytic.intensity_y, oracle.s.intensity_y);
    const double worst = std::max({err_s, err_var, err_i});
    const bool ok = worst < kOracleTolerance;
    out["oracle"] = io::to_json(oracle.s);
    out["oracle_rel_err"] = {{"S", err_s}, {"var_X", err_var}, {"intensity_Y", err_i}};
    out["tolerance"] = kOracleTolerance;
    out["within_tolerance"] = ok;
    say(ctx, "oracle:   S = " + io::format_number(oracle.s.s) + "  relative error " + io::format_number(worst) +
                 (ok ? " < " : " >= ") + io::format_number(kOracleTolerance) + (ok ? "  OK" : "  MISMATCH"));
    if (!ok) status = 1;
  }
  write(ctx, "mix.json", io::dump(out));
  return status;
}

inline int run(const SchemeArgs& a, const CommandContext& ctx) {
  const SchemeParams p{a.n_pump, a.lambda, mixer_at(a.variant, a.variant == MixerVariant::BeamSplitter ? a.r2 : a.phi)};
  const auto exact = scheme_phase_resolution_exact(p);
  const auto approx = scheme_phase_resolution_approx(p);
  json out = {{"schema", io::kSchemaVersion},
              {"variant", to_string(a.variant)},
              {"N", a.n_pump},
              {"lambda", a.lambda},
              {"s", p.squeeze()},
              {"N_sq", p.squeezed_photons()},
              {"coherent_photons", p.coherent_photons()},
              {"exact", io::to_json(exact)},
              {"approx",
               {{"series", approx.series},
                {"leading", approx.leading},
                {"rel_dev_series", approx.rel_dev_series},
                {"rel_dev_leading", approx.rel_dev_leading}}}};
  write(ctx, "scheme.json", io::dump(out));
  say(ctx, "S_exact = " + io::format_number(exact.s) + "  (2 N lambda)^1/2 = " + io::format_number(approx.leading));
  return 0;
}

inline int run(const SurfaceArgs& a, const CommandContext& ctx) {
  SurfaceGrid grid;
  grid.variant = a.variant;
  grid.n_values = parse_range(a.n_range);
  grid.axis = linspace(0.0, a.variant == MixerVariant::BeamSplitter ? 1.0 : M_PI, static_cast<std::size_t>(a.axis_points));
  grid.lambda = a.lambda;
  const auto rows = fig6_surface(grid);
  const std::string axis = a.variant == MixerVariant::BeamSplitter ? "r2" : "phi";
  io::CsvWriter csv({"N", axis, "S_exact", "S_approx", "rel_dev"});
  std::vector<double> z;
  for (const auto& r : rows) {
    csv.row({r.n_pump, r.axis, r.s_exact, r.s_approx, r.rel_dev});
    z.push_back(r.s_exact);
  }
  write(ctx, "surface.csv", csv.str());
  write(ctx, "surface.svg",
        svg::heatmap(grid.n_values, grid.axis, z,
                     std::string(a.variant == MixerVariant::BeamSplitter ? "beam splitter" : "interferometer") +
                         ", lambda = " + io::format_number(a.lambda),
                     "N", axis, true));
  return 0;
}

inline int run(const FitArgs& a, const CommandContext& ctx) {
  const auto [x, y] = io::parse_two_column_csv(io::read_file(a.input));
  const auto fit = fit_power_law(x, y);
  json out = {{"schema", io::kSchemaVersion}};
  out.update(io::to_json(fit));
  write(ctx, "fit.json", io::dump(out));
  say(ctx, "exponent = " + io::format_number(fit.exponent) + "  prefactor = " + io::format_number(fit.prefactor) +
               "  r2 = " + io::format_number(fit.r2));
  return 0;
}

inline int run(const SpectralArgs& a, const CommandContext& ctx) {
  auto [omega_v, v] = io::parse_two_column_csv(io::read_file(a.variance));
  auto [omega_w, w] = io::parse_two_column_csv(io::read_file(a.numerator));
  if (omega_v != omega_w) throw ConfigError("spectral: the two spectra must share one frequency grid");
  SpectraInput sp{omega_v, v, w, a.kind, 1.0, 1.0};
  const auto s = spectral_phase_resolution(sp);
  io::CsvWriter csv({"omega", "S"});
  for (std::size_t i = 0; i < s.size(); ++i) csv.row({omega_v[i], s[i]});
  write(ctx, "spectral.csv", csv.str());
  return 0;
}

}  // namespace detail

/// Validates, writes config.json, then runs the command. Throws ConfigError
/// (invalid parameters) or TruncationError (Fock cutoff too small).
inline int run_command(const RunConfig& cfg, const CommandContext& ctx) {
  validate(cfg);
  std::filesystem::create_directories(ctx.out_dir);
  detail::write(ctx, "config.json", io::dump(to_json(cfg)));
  return std::visit([&ctx](const auto& a) { return detail::run(a, ctx); }, cfg.args);
}

}  // namespace squeezelab::cli
