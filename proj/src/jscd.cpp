#include "apilab/jscd.hpp"

#include <cmath>
#include <stdexcept>

#include "apilab/bounds.hpp"
#include "apilab/rng.hpp"

namespace apilab {

namespace {

std::shared_ptr<const Interleaver> scenario_interleaver(const ScenarioConfig& cfg) {
  return std::make_shared<const Interleaver>(build_interleaver(cfg.interleaver, cfg.k, cfg.interleaver_seed));
}

}  // namespace

void ScenarioConfig::validate() const {
  if (k < 2 || k % 2 != 0) throw std::invalid_argument("jscd: k must be even and >= 2");
  if (!(rho_source >= 0.5 && rho_source < 1.0)) throw std::invalid_argument("jscd: rho_source must be in [0.5, 1)");
  if (outer_iterations < 1) throw std::invalid_argument("jscd: outer_iterations must be >= 1");
  if (turbo_iters_per_pass < 1) throw std::invalid_argument("jscd: turbo_iters_per_pass must be >= 1");
  if (!std::isfinite(snr_db)) throw std::invalid_argument("jscd: snr_db must be finite");
}

TurboSpec jscd_code(const ScenarioConfig& cfg) { return TurboSpec(scenario_interleaver(cfg), true); }
TurboSpec dsc_code(const ScenarioConfig& cfg) { return TurboSpec(scenario_interleaver(cfg), false); }

double gamma_b_db_for_snr(double snr_db, double rate) { return snr_db - linear_to_db(2.0 * rate); }

JscdResult run_jscd_frame(const ScenarioConfig& cfg, const TurboSpec& code, std::uint64_t seed) {
  cfg.validate();
  if (code.k() != cfg.k || !code.punctured) throw std::invalid_argument("jscd: code must be the rate-1/2 turbo code of size k");
  const BitSequence x = random_bits(static_cast<std::size_t>(cfg.k), derive_seed(seed, Stream::source));
  const BitSequence y = generate_side_info(x, Reliability(cfg.rho_source), derive_seed(seed, Stream::side_info)).bits;

  ChannelConfig ch{gamma_b_db_for_snr(cfg.snr_db, code.rate()), code.rate(), cfg.fading};
  // Each link draws its noise and fade from its own stream.
  const auto llr_x = depuncture(code, channel_llrs(transmit(turbo_encode(code, x), ch, derive_seed(seed, Stream::channel_x))));
  const auto llr_y = depuncture(code, channel_llrs(transmit(turbo_encode(code, y), ch, derive_seed(seed, Stream::channel_y))));

  TurboDecoder dec_x(code), dec_y(code);
  JscdResult res;
  res.k = cfg.k;
  double rho_est = cfg.oracle_rho ? cfg.rho_source : 0.5;
  const LlrSequence no_prior = LlrSequence::Zero(cfg.k);
  BitSequence x_hat, y_hat;
  for (int m = 0; m < cfg.outer_iterations; ++m) {
    res.rho_estimates.push_back(rho_est);
    const Reliability r = Reliability::clamped(rho_est);
    if (!cfg.warm_start) {
      dec_x.reset();
      dec_y.reset();
    }
    const LlrSequence prior_x = y_hat.empty() ? no_prior : apriori_llrs(y_hat, r);
    BitSequence nx = dec_x.run(llr_x, prior_x, cfg.turbo_iters_per_pass).bits;
    const BitSequence& x_for_y = cfg.sequential ? nx : x_hat;
    const LlrSequence prior_y = x_for_y.empty() ? no_prior : apriori_llrs(x_for_y, r);
    BitSequence ny = dec_y.run(llr_y, prior_y, cfg.turbo_iters_per_pass).bits;
    const bool stable = m >= 1 && nx == x_hat && ny == y_hat;
    x_hat = std::move(nx);
    y_hat = std::move(ny);
    res.iterations_used = m + 1;
    if (!cfg.oracle_rho) rho_est = estimate_correlation(x_hat, y_hat).value();
    if (stable) break;
  }
  res.rho_estimates.push_back(rho_est);
  res.bit_errors_x = static_cast<long>(hamming_distance(x_hat, x));
  res.bit_errors_y = static_cast<long>(hamming_distance(y_hat, y));
  return res;
}

DscResult run_dsc_baseline(const ScenarioConfig& cfg, const TurboSpec& code, std::uint64_t seed) {
  cfg.validate();
  if (code.k() != cfg.k || code.punctured) throw std::invalid_argument("dsc: code must be the rate-1/3 turbo code of size k");
  const ChannelConfig ch{gamma_b_db_for_snr(cfg.snr_db, code.rate()), code.rate(), cfg.fading};
  const int iters = cfg.outer_iterations * cfg.turbo_iters_per_pass;
  const LlrSequence no_prior = LlrSequence::Zero(cfg.k);
  DscResult res;
  for (Stream src : {Stream::channel_x, Stream::channel_y}) {
    const BitSequence u = random_bits(static_cast<std::size_t>(cfg.k), derive_seed(seed, {static_cast<std::uint64_t>(src), 17}));
    const auto rx = transmit(turbo_encode(code, u), ch, derive_seed(seed, src));
    const long errors = static_cast<long>(hamming_distance(turbo_decode(code, channel_llrs(rx), no_prior, iters).bits, u));
    res.bit_errors += errors;
    res.frame_errors += errors > 0;
    res.bits += cfg.k;
  }
  return res;
}

bool EnergyAudit::balanced() const {
  return std::abs(jscd_symbols_per_source_bit * jscd_symbol_snr - dsc_symbols_per_source_bit * dsc_symbol_snr) <
         1e-9 * jscd_symbols_per_source_bit * jscd_symbol_snr;
}

EnergyAudit energy_audit(const ScenarioConfig& cfg) {
  constexpr double rate_jscd = 0.5;
  constexpr double rate_dsc = 1.0 / 3.0;
  constexpr double dsc_compression = 2.0 / 3.0;  // per-source share of the joint entropy, rounded
  EnergyAudit a;
  a.jscd_symbols_per_source_bit = 1.0 / rate_jscd;
  a.dsc_symbols_per_source_bit = dsc_compression / rate_dsc;
  // Unit-amplitude symbols: per-symbol SNR is 2 r gamma_b for each scheme's own gamma_b.
  a.jscd_symbol_snr = 2.0 * rate_jscd * db_to_linear(gamma_b_db_for_snr(cfg.snr_db, rate_jscd));
  a.dsc_symbol_snr = 2.0 * rate_dsc * db_to_linear(gamma_b_db_for_snr(cfg.snr_db, rate_dsc));
  return a;
}

double diversity_slope(const std::vector<SlopePoint>& curve, double from_db, double to_db, long min_errors) {
  std::vector<const SlopePoint*> window;
  for (const auto& p : curve) {
    if (p.snr_db < from_db || p.snr_db > to_db) continue;
    if (p.bit_errors < min_errors || !(p.ber > 0.0))
      throw std::invalid_argument("diversity_slope: point at " + std::to_string(p.snr_db) + " dB has only " +
                                  std::to_string(p.bit_errors) + " errors");
    window.push_back(&p);
  }
  if (window.size() < 3) throw std::invalid_argument("diversity_slope: need at least 3 points in the fit window");
  const auto n = static_cast<Eigen::Index>(window.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = window[static_cast<std::size_t>(i)]->snr_db / 10.0;
    rhs[i] = std::log10(window[static_cast<std::size_t>(i)]->ber);
  }
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(rhs);
  return -coef[1];
}

}  // namespace apilab
