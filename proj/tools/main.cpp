// squeezelab command-line front end.
//
// Exit codes: 0 success, 1 runtime failure (including an oracle mismatch),
// 2 invalid configuration or arguments, 3 Fock-space truncation.

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "squeezelab/commands.hpp"

namespace sl = squeezelab;

namespace {

unsigned default_jobs() {
  if (const char* env = std::getenv("SQUEEZELAB_JOBS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw sl::ConfigError(std::string("SQUEEZELAB_JOBS must be a positive integer, got '") + env + "'");
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"squeezelab: phase resolution of squeezed-light interferometry"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir = "out";
  int jobs = 0;
  app.add_option("--config", config_path, "Run a JSON config (as written to config.json) instead of a subcommand")
      ->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--jobs", jobs, "Worker threads for sweeps (default: $SQUEEZELAB_JOBS or 1)")
      ->check(CLI::PositiveNumber);

  std::string kind = "degenerate", variant = "bs", numerator = "intensity";

  sl::SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Propagate one oscillator and locate optimal squeezing");
  simulate->add_option("--kind", kind, "degenerate | nondegenerate")->capture_default_str();
  simulate->add_option("--N", sim.n_pump, "Initial pump photon number")->capture_default_str();
  simulate->add_option("--points", sim.points, "Trajectory samples")->capture_default_str();
  simulate->add_option("--t-max", sim.t_max, "End of the trajectory (default 5/sqrt(N))");
  simulate->add_option("--pump-cutoff", sim.pump_cutoff, "Pin the pump Fock cutoff");

  sl::SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Optimal squeezing over a range of pump photon numbers");
  sweep_cmd->add_option("--kind", kind, "degenerate | nondegenerate")->capture_default_str();
  sweep_cmd->add_option("--N", sweep.n_range, "lo:hi:linear|geometric:count or comma list")->capture_default_str();

  sl::MixArgs mix;
  auto* mix_cmd = app.add_subcommand("mix", "Closed-form phase resolution of one mixer");
  mix_cmd->add_option("--variant", variant, "bs | in")->capture_default_str();
  mix_cmd->add_option("--alpha", mix.alpha, "Coherent amplitude")->capture_default_str();
  mix_cmd->add_option("--s", mix.s, "Squeeze parameter")->capture_default_str();
  mix_cmd->add_option("--r2", mix.r2, "Beam splitter reflection amplitude")->capture_default_str();
  mix_cmd->add_option("--delta", mix.delta, "Beam splitter phase delta")->capture_default_str();
  mix_cmd->add_option("--psi", mix.psi, "Mixer phase psi")->capture_default_str();
  mix_cmd->add_option("--theta", mix.theta, "Squeeze angle (beam splitter; default optimal)");
  mix_cmd->add_option("--phi", mix.phi, "Interferometer phase difference, radians")->capture_default_str();
  mix_cmd->add_option("--Phi", mix.Phi, "Interferometer common phase")->capture_default_str();
  mix_cmd->add_flag("--oracle", mix.oracle, "Also evaluate in Fock space and compare");

  sl::SchemeArgs scheme;
  auto* scheme_cmd = app.add_subcommand("scheme", "Oscillator output fed into a mixer, closed form");
  scheme_cmd->add_option("--variant", variant, "bs | in")->capture_default_str();
  scheme_cmd->add_option("--N", scheme.n_pump, "Pump photon number")->capture_default_str();
  scheme_cmd->add_option("--lambda", scheme.lambda, "Fraction of pump photons kept coherent")->capture_default_str();
  scheme_cmd->add_option("--r2", scheme.r2, "Beam splitter reflection amplitude")->capture_default_str();
  scheme_cmd->add_option("--phi", scheme.phi, "Interferometer phase difference, radians")->capture_default_str();

  sl::SurfaceArgs surface;
  auto* surface_cmd = app.add_subcommand("surface", "Scheme phase resolution over N and the mixer parameter");
  surface_cmd->add_option("--variant", variant, "bs | in")->capture_default_str();
  surface_cmd->add_option("--N", surface.n_range, "N range")->capture_default_str();
  surface_cmd->add_option("--axis-points", surface.axis_points, "Samples of r2 or phi")->capture_default_str();
  surface_cmd->add_option("--lambda", surface.lambda, "Coherent fraction")->capture_default_str();

  sl::FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "Power-law fit of a two-column CSV");
  fit_cmd->add_option("input", fit.input, "CSV with x,value columns")->required()->check(CLI::ExistingFile);

  sl::SpectralArgs spectral;
  auto* spectral_cmd = app.add_subcommand("spectral", "Phase resolution from noise spectra");
  spectral_cmd->add_option("--variance", spectral.variance, "CSV omega,V")->required()->check(CLI::ExistingFile);
  spectral_cmd->add_option("--numerator", spectral.numerator, "CSV omega,W")->required()->check(CLI::ExistingFile);
  spectral_cmd->add_option("--numerator-kind", numerator, "intensity | quadrature")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    sl::RunConfig cfg;
    if (!config_path.empty()) {
      if (!app.get_subcommands().empty()) throw sl::ConfigError("--config cannot be combined with a subcommand");
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(sl::io::read_file(config_path));
      } catch (const nlohmann::json::exception& e) {
        throw sl::ConfigError(std::string("config: ") + e.what());
      }
      cfg = sl::run_config_from_json(j);
    } else if (simulate->parsed()) {
      sim.kind = sl::parse_oscillator_kind(kind);
      cfg.args = sim;
    } else if (sweep_cmd->parsed()) {
      sweep.kind = sl::parse_oscillator_kind(kind);
      cfg.args = sweep;
    } else if (mix_cmd->parsed()) {
      mix.variant = sl::parse_mixer_variant(variant);
      cfg.args = mix;
    } else if (scheme_cmd->parsed()) {
      scheme.variant = sl::parse_mixer_variant(variant);
      cfg.args = scheme;
    } else if (surface_cmd->parsed()) {
      surface.variant = sl::parse_mixer_variant(variant);
      cfg.args = surface;
    } else if (fit_cmd->parsed()) {
      cfg.args = fit;
    } else if (spectral_cmd->parsed()) {
      spectral.kind = sl::parse_numerator(numerator);
      cfg.args = spectral;
    } else {
      std::cerr << app.help();
      return 2;
    }
    sl::cli::CommandContext ctx;
    ctx.out_dir = out_dir;
    ctx.jobs = jobs > 0 ? static_cast<unsigned>(jobs) : default_jobs();
    ctx.log = &std::cout;
    return sl::cli::run_command(cfg, ctx);
  } catch (const sl::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const sl::TruncationError& e) {
    std::cerr << "truncation: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
