#pragma once

#include <cstdint>
#include <vector>

#include "apilab/apriori.hpp"
#include "apilab/channel.hpp"
#include "apilab/interleaver.hpp"
#include "apilab/turbo.hpp"

namespace apilab {

/// Two correlated sources X and Y, each turbo coded and sent over its own
/// link. Both links share the SNR statistics; noise and fades are independent.
struct ScenarioConfig {
  int k = 1000;
  double rho_source = 0.939;
  double snr_db = 0.0;  ///< per-link SNR = 2 r gamma_b (mean SNR under fading)
  Fading fading = Fading::none;
  int outer_iterations = 5;
  int turbo_iters_per_pass = 2;
  InterleaverKind interleaver = InterleaverKind::random;
  std::uint64_t interleaver_seed = 1;
  /// Fix the correlation estimate at rho_source instead of estimating it.
  bool oracle_rho = false;
  /// Keep each decoder's extrinsic state from one outer pass to the next.
  bool warm_start = true;
  /// Decoder Y uses x_hat of the same pass; otherwise both use the previous pass.
  bool sequential = true;

  void validate() const;
};

struct JscdResult {
  long bit_errors_x = 0;
  long bit_errors_y = 0;
  int k = 0;
  /// Entry m is the rho estimate used in outer pass m (the first is 0.5
  /// unless the oracle is enabled); the last entry follows the final pass.
  std::vector<double> rho_estimates;
  int iterations_used = 0;  ///< outer passes run

  double ber_x() const { return static_cast<double>(bit_errors_x) / k; }
  double ber_y() const { return static_cast<double>(bit_errors_y) / k; }
  double ber() const { return 0.5 * (ber_x() + ber_y()); }
  double final_rho_estimate() const { return rho_estimates.back(); }
};

/// Rate-1/2 punctured turbo code with the scenario's interleaver.
TurboSpec jscd_code(const ScenarioConfig& cfg);
/// Rate-1/3 unpunctured turbo code with the same interleaver.
TurboSpec dsc_code(const ScenarioConfig& cfg);

/// Outer pass m: decoder X runs with prior built from (y_hat^(m-1), rho^(m))
/// (no prior on the first pass), then decoder Y with (x_hat^(m), rho^(m)).
/// rho^(m+1) is estimated from (x_hat^(m), y_hat^(m)). Both decoders keep
/// their extrinsic state across passes. Stops after outer_iterations or once
/// both decisions repeat.
JscdResult run_jscd_frame(const ScenarioConfig& cfg, const TurboSpec& code, std::uint64_t seed);

struct DscResult {
  long bit_errors = 0;  ///< over both sources
  long frame_errors = 0;
  long bits = 0;
  double ber() const { return static_cast<double>(bit_errors) / static_cast<double>(bits); }
};

/// Separation baseline: ideally compressed (i.i.d. uniform) bits of both
/// sources, rate-1/3 turbo code, no prior, outer_iterations *
/// turbo_iters_per_pass iterations, at the same SNR (gamma_b 1.76 dB higher).
DscResult run_dsc_baseline(const ScenarioConfig& cfg, const TurboSpec& code, std::uint64_t seed);

/// Eb/N0 in dB implied by a per-link SNR for code rate r.
double gamma_b_db_for_snr(double snr_db, double rate);

/// Coded symbols sent per source bit and energy per symbol, for both schemes.
struct EnergyAudit {
  double jscd_symbols_per_source_bit = 0.0;
  double dsc_symbols_per_source_bit = 0.0;
  double jscd_symbol_snr = 0.0;
  double dsc_symbol_snr = 0.0;
  bool balanced() const;
};
EnergyAudit energy_audit(const ScenarioConfig& cfg);

struct SlopePoint {
  double snr_db = 0.0;
  double ber = 0.0;
  long bit_errors = 0;
};

/// Negated least-squares slope of log10(BER) against SNR_dB / 10 over the
/// points with from_db <= snr_db <= to_db. Throws std::invalid_argument with
/// fewer than 3 such points or any of them below min_errors.
double diversity_slope(const std::vector<SlopePoint>& curve, double from_db, double to_db, long min_errors = 100);

}  // namespace apilab
