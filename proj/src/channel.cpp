#include "apilab/channel.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "apilab/bounds.hpp"
#include "apilab/rng.hpp"

namespace apilab {

double ChannelConfig::snr() const { return 2.0 * rate * db_to_linear(gamma_b_db); }

void ChannelConfig::validate() const {
  if (!std::isfinite(gamma_b_db)) throw std::invalid_argument("channel: gamma_b_db must be finite");
  if (!(rate > 0.0 && rate <= 1.0)) throw std::invalid_argument("channel: rate must be in (0, 1]");
}

ReceivedFrame transmit(const BitSequence& coded, const ChannelConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  Rng rng(seed);
  ReceivedFrame frame;
  double fade_power = 1.0;
  if (cfg.fading == Fading::block_rayleigh) {
    std::exponential_distribution<double> exp1(1.0);
    do fade_power = exp1(rng);
    while (fade_power <= 0.0);
  }
  frame.fade_amplitude = std::sqrt(fade_power);
  frame.noise_variance = 1.0 / (cfg.snr() * fade_power);
  std::normal_distribution<double> noise(0.0, std::sqrt(frame.noise_variance));
  frame.samples.resize(static_cast<Eigen::Index>(coded.size()));
  for (std::size_t i = 0; i < coded.size(); ++i)
    frame.samples[static_cast<Eigen::Index>(i)] = bit_sign(coded[i]) + noise(rng);
  return frame;
}

LlrSequence channel_llrs(const ReceivedFrame& frame) {
  if (!(frame.noise_variance > 0.0)) throw std::invalid_argument("channel_llrs: noise variance must be positive");
  return (2.0 / frame.noise_variance) * frame.samples;
}

LlrSequence channel_llrs_scaled(const Eigen::VectorXd& samples, double amplitude, double noise_variance) {
  if (!(amplitude > 0.0) || !(noise_variance > 0.0))
    throw std::invalid_argument("channel_llrs_scaled: amplitude and variance must be positive");
  const double sigma2 = noise_variance / (amplitude * amplitude);
  return (2.0 / (amplitude * sigma2)) * samples;
}

std::string to_string(Fading f) { return f == Fading::none ? "awgn" : "rayleigh"; }

Fading parse_fading(const std::string& name) {
  if (name == "awgn" || name == "none") return Fading::none;
  if (name == "rayleigh" || name == "block_rayleigh") return Fading::block_rayleigh;
  throw std::invalid_argument("unknown fading '" + name + "' (expected awgn or rayleigh)");
}

}  // namespace apilab
