// Command-line front end: analytic bounds, spectra, Monte Carlo runs and
// figure recipes. Output is CSV on stdout or in --out.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>

#include "CLI11.hpp"
#include "apilab/convolutional.hpp"
#include "apilab/harness.hpp"
#include "apilab/turbo.hpp"

namespace fs = std::filesystem;
using namespace apilab;

namespace {

struct Common {
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::string out;
  std::string config;
  std::vector<std::string> sets;  // key=value overrides
  bool quiet = false;
};

// Flags shared by the experiment subcommands; each maps onto a config key.
struct ExperimentFlags {
  std::map<std::string, std::string> values;

  void attach(CLI::App* app, const std::vector<std::pair<std::string, std::string>>& keys) {
    for (const auto& [flag, key] : keys) app->add_option("--" + flag, values[key], "config key " + key);
  }
};

ExperimentConfig assemble(Scenario scenario, const Common& common, const ExperimentFlags& flags) {
  ExperimentConfig cfg;
  cfg.scenario = scenario;
  if (scenario == Scenario::bounds) cfg.code = "uncoded";
  if (!common.config.empty()) cfg = load_config(common.config, cfg);
  cfg.scenario = scenario;
  for (const auto& [key, value] : flags.values)
    if (!value.empty()) apply_config_value(cfg, key, value);
  for (const auto& kv : common.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
    apply_config_value(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (common.seed) cfg.master_seed = *common.seed;
  if (common.workers) cfg.workers = *common.workers;
  cfg.validate();
  return cfg;
}

// Runs `write` against --out if given, else stdout.
template <typename Fn>
void with_output(const std::string& path, Fn&& write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  if (fs::path(path).has_parent_path()) fs::create_directories(fs::path(path).parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write(out);
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string thresholds_path(const std::string& out) {
  fs::path p(out);
  return (p.parent_path() / (p.stem().string() + "_thresholds.csv")).string();
}

void progress_line(const BerRecord& r) {
  std::fprintf(stderr, "point %d  gamma %.2f dB  rho %.3f  rho_est %.3f  bits %ld  errors %ld  ber %.3e%s\n",
               r.point_id, r.gamma_b_db, r.rho, r.rho_est, r.bits_simulated, r.bit_errors, r.ber,
               r.converged ? "" : "  (not converged)");
}

void run_bounds_command(const ExperimentConfig& cfg, const std::string& out) {
  const BoundsReport rep = run_bounds(cfg);
  with_output(out, [&](std::ostream& os) { emit_bounds_csv(rep.curves, os); });
  if (out.empty()) {
    std::cout << '\n';
    emit_thresholds_csv(rep.thresholds, std::cout);
  } else {
    with_output(thresholds_path(out), [&](std::ostream& os) { emit_thresholds_csv(rep.thresholds, os); });
  }
}

void run_sim_command(const ExperimentConfig& cfg, const std::string& out, bool quiet) {
  const auto records = run_experiment(cfg, quiet ? ProgressFn{} : ProgressFn(progress_line));
  with_output(out, [&](std::ostream& os) { emit_csv(records, os); });
}

void run_recipe(const std::string& name, const Common& common) {
  if (name == "list") {
    for (const auto& r : figure_recipes()) std::cout << r.name << ": " << r.description << "\n";
    return;
  }
  const Recipe& recipe = find_recipe(name);
  const fs::path dir = common.out.empty() ? fs::path(name) : fs::path(common.out);
  fs::create_directories(dir);
  std::cerr << recipe.name << ": " << recipe.description << "\n";
  for (auto [stem, cfg] : recipe.runs) {
    if (common.seed) cfg.master_seed = *common.seed;
    if (common.workers) cfg.workers = *common.workers;
    for (const auto& kv : common.sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
      apply_config_value(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    const std::string path = (dir / (stem + ".csv")).string();
    std::cerr << "-> " << path << "\n";
    if (cfg.scenario == Scenario::bounds)
      run_bounds_command(cfg, path);
    else
      run_sim_command(cfg, path, common.quiet);
  }
}

void run_spectrum(const std::string& code, int d_max, int w_max, const ExperimentConfig& cfg, const std::string& out) {
  WeightSpectrum ws;
  if (code == "turbo") {
    const TurboSpec spec(
        std::make_shared<const Interleaver>(build_interleaver(cfg.interleaver, cfg.k, cfg.interleaver_seed)),
        cfg.punctured);
    ws = enumerate_turbo_floor_spectrum(spec, std::min(w_max, 4), d_max);
  } else if (code == "nonrecursive") {
    ws = enumerate_spectrum(codes::nonrecursive_k4, d_max, w_max);
  } else if (code == "recursive") {
    ws = enumerate_spectrum(codes::recursive_k4, d_max, w_max);
  } else {
    throw std::invalid_argument("--code must be nonrecursive, recursive or turbo");
  }
  with_output(out, [&](std::ostream& os) {
    os << "w,d,beta\n";
    for (const auto& r : ws.records()) os << r.w << ',' << r.d << ',' << r.beta << '\n';
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Channel coding with a-priori information: bounds, codecs and Monte Carlo"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--seed", common.seed, "master seed");
  app.add_option("--workers", common.workers, "worker threads (results do not depend on this)");
  app.add_option("--out", common.out, "output file (directory for recipe); default stdout");
  app.add_option("--config", common.config, "key=value configuration file")->check(CLI::ExistingFile);
  app.add_option("--set", common.sets, "extra key=value override (repeatable)");
  app.add_flag("--quiet", common.quiet, "no per-point progress on stderr");

  const std::vector<std::pair<std::string, std::string>> grid_keys = {
      {"gamma", "gamma_db"}, {"rho", "rho"}, {"rho-est", "rho_est"}, {"k", "k"},
      {"max-bits", "max_bits"}, {"min-errors", "min_bit_errors"}, {"min-frame-errors", "min_frame_errors"}};

  ExperimentFlags bounds_flags, uncoded_flags, conv_flags, turbo_flags, jscd_flags, spectrum_flags;

  auto* bounds = app.add_subcommand("bounds", "analytic bound curves and gamma_b thresholds");
  bounds_flags.attach(bounds, {{"code", "code"}, {"gamma", "gamma_db"}, {"rho", "rho"}, {"rho-est", "rho_est"},
                               {"k", "k"}, {"target", "target_ber"}, {"interleaver", "interleaver"},
                               {"interleaver-seed", "interleaver_seed"}});

  auto* spectrum = app.add_subcommand("spectrum", "weight spectrum records (w,d,beta)");
  std::string spectrum_code = "nonrecursive";
  int d_max = 12, w_max = 12;
  spectrum->add_option("--code", spectrum_code, "nonrecursive | recursive | turbo");
  spectrum->add_option("--dmax", d_max, "largest output weight");
  spectrum->add_option("--wmax", w_max, "largest input weight (turbo: at most 4)");
  spectrum_flags.attach(spectrum, {{"k", "k"}, {"interleaver", "interleaver"}, {"interleaver-seed", "interleaver_seed"}});

  auto* uncoded = app.add_subcommand("uncoded-sim", "uncoded BPSK with side information");
  uncoded_flags.attach(uncoded, grid_keys);

  auto* conv = app.add_subcommand("conv-sim", "K=4 convolutional code, Viterbi with prior");
  conv_flags.attach(conv, grid_keys);
  conv_flags.attach(conv, {{"code", "code"}});

  auto* turbo = app.add_subcommand("turbo-sim", "turbo code, log-MAP iterative decoding with prior");
  turbo_flags.attach(turbo, grid_keys);
  turbo_flags.attach(turbo, {{"interleaver", "interleaver"}, {"interleaver-seed", "interleaver_seed"},
                             {"iterations", "turbo_iterations"}, {"punctured", "punctured"}});

  auto* jscd = app.add_subcommand("jscd-sim", "two correlated sources: JSCD or the DSC baseline");
  jscd_flags.attach(jscd, {{"snr", "gamma_db"}, {"rho", "rho"}, {"k", "k"}, {"max-bits", "max_bits"},
                           {"min-errors", "min_bit_errors"}, {"min-frame-errors", "min_frame_errors"},
                           {"fading", "fading"}, {"scheme", "jscd_scheme"}, {"outer", "outer_iterations"},
                           {"inner", "turbo_iters_per_pass"}, {"oracle-rho", "oracle_rho"},
                           {"interleaver", "interleaver"}, {"interleaver-seed", "interleaver_seed"}});

  auto* recipe = app.add_subcommand("recipe", "run a figure preset (or 'list')");
  std::string recipe_name;
  recipe->add_option("name", recipe_name, "fig1 .. fig9, or list")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (bounds->parsed()) {
      run_bounds_command(assemble(Scenario::bounds, common, bounds_flags), common.out);
    } else if (spectrum->parsed()) {
      run_spectrum(spectrum_code, d_max, w_max, assemble(Scenario::turbo, common, spectrum_flags), common.out);
    } else if (uncoded->parsed()) {
      run_sim_command(assemble(Scenario::uncoded, common, uncoded_flags), common.out, common.quiet);
    } else if (conv->parsed()) {
      run_sim_command(assemble(Scenario::conv, common, conv_flags), common.out, common.quiet);
    } else if (turbo->parsed()) {
      run_sim_command(assemble(Scenario::turbo, common, turbo_flags), common.out, common.quiet);
    } else if (jscd->parsed()) {
      run_sim_command(assemble(Scenario::jscd, common, jscd_flags), common.out, common.quiet);
    } else if (recipe->parsed()) {
      run_recipe(recipe_name, common);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
