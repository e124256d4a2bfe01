#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "apilab/channel.hpp"
#include "apilab/interleaver.hpp"

namespace apilab {

enum class Scenario { uncoded, conv, turbo, jscd, bounds };

struct StoppingRule {
  long min_bit_errors = 200;
  long min_frame_errors = 0;  ///< > 0 for fading links, where errors arrive in bursts
  long max_bits = 100'000'000;
};

/// Every field has a key of the same name in the key=value config format
/// (see parse_config). Grids are in dB.
struct ExperimentConfig {
  Scenario scenario = Scenario::uncoded;
  /// conv: nonrecursive | recursive. bounds: uncoded | nonrecursive |
  /// recursive | random | turbo.
  std::string code = "nonrecursive";
  std::vector<double> gamma_db{0.0};  ///< Eb/N0 grid; per-link SNR grid for jscd
  std::vector<double> rho{0.5};       ///< side-information reliability (source correlation for jscd)
  std::vector<double> rho_est;        ///< empty: rho_est = rho
  int k = 1000;
  InterleaverKind interleaver = InterleaverKind::random;
  std::uint64_t interleaver_seed = 1;
  bool punctured = true;
  int turbo_iterations = 10;
  StoppingRule stop;
  std::uint64_t master_seed = 1;
  int workers = 1;
  int batch_frames = 0;  ///< frames per batch; 0 picks a size from the scenario

  // jscd only
  Fading fading = Fading::none;
  std::string jscd_scheme = "jscd";  ///< jscd | dsc
  int outer_iterations = 5;
  int turbo_iters_per_pass = 2;
  bool oracle_rho = false;

  // bounds only
  double target_ber = 1e-4;  ///< for the gamma threshold table

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

std::string to_string(Scenario s);
Scenario parse_scenario(const std::string& name);

/// Flat `key = value` text, '#' starts a comment. Lists are comma separated;
/// a grid may also be written `from:to:step`. Unknown keys and malformed
/// values throw std::invalid_argument with the line number and key.
ExperimentConfig parse_config(std::istream& in, ExperimentConfig base = {});
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {});
/// Applies one key=value assignment (same syntax as the file format).
void apply_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value);
std::vector<double> parse_grid(const std::string& text);

struct BerRecord {
  int point_id = 0;
  double gamma_b_db = 0.0;
  double rho = 0.5;
  double rho_est = 0.5;  ///< mean final estimate for jscd
  long bits_simulated = 0;
  long bit_errors = 0;
  long frame_errors = 0;
  double ber = 0.0;
  bool converged = false;
  std::uint64_t seed = 0;

  friend bool operator==(const BerRecord&, const BerRecord&) = default;
};

/// Per-point progress callback (may be empty).
using ProgressFn = std::function<void(const BerRecord&)>;

/// Runs every grid point (rho outermost, then rho_est, then gamma). Frame f
/// of point p uses seed derive_seed(point_seed, {f}) with point_seed =
/// derive_seed(master_seed, {p}); frames are grouped into fixed batches that
/// are merged in order, so results do not depend on the worker count.
std::vector<BerRecord> run_experiment(const ExperimentConfig& cfg, const ProgressFn& progress = {});

inline constexpr const char* ber_csv_header =
    "point_id,gamma_b_db,rho,rho_est,bits_simulated,bit_errors,frame_errors,ber,converged,seed";

void emit_csv(const std::vector<BerRecord>& records, std::ostream& out);
void emit_csv(const std::vector<BerRecord>& records, const std::filesystem::path& path);
/// Inverse of emit_csv; ber is recomputed from the counts.
std::vector<BerRecord> parse_csv(std::istream& in);
std::vector<BerRecord> parse_csv(const std::filesystem::path& path);

struct BoundRecord {
  double gamma_b_db = 0.0;
  double p_exact = 0.0;
  double p_approx = 0.0;
  double p_chernoff = 0.0;
  std::string bound_name;
  double rho = 0.5;
  double rho_est = 0.5;
};

/// gamma_b at which the exact and approximate bounds reach target_ber, and
/// the exact-bound gain over the same code without prior.
struct ThresholdRecord {
  std::string bound_name;
  double rho = 0.5;
  double rho_est = 0.5;
  double target = 0.0;
  double gamma_exact_db = 0.0;
  double gamma_approx_db = 0.0;
  double gain_db = 0.0;
};

struct BoundsReport {
  std::vector<BoundRecord> curves;
  std::vector<ThresholdRecord> thresholds;
};

BoundsReport run_bounds(const ExperimentConfig& cfg);
void emit_bounds_csv(const std::vector<BoundRecord>& records, std::ostream& out);
void emit_thresholds_csv(const std::vector<ThresholdRecord>& records, std::ostream& out);

/// A named set of experiments reproducing one figure at desk scale.
struct Recipe {
  std::string name;
  std::string description;  ///< what the figure shows and the values it targets
  std::vector<std::pair<std::string, ExperimentConfig>> runs;  ///< (output stem, config)
};

std::vector<Recipe> figure_recipes();
const Recipe& find_recipe(const std::string& name);

}  // namespace apilab
