#pragma once

#include <cstdint>
#include <string>

#include "apilab/bits.hpp"

namespace apilab {

enum class Fading { none, block_rayleigh };

/// BPSK over AWGN with unit signal amplitude. gamma_b_db is Eb/N0; under
/// block Rayleigh fading it is the mean, so the mean per-frame SNR is 2 r gamma_b.
struct ChannelConfig {
  double gamma_b_db = 0.0;
  double rate = 0.5;
  Fading fading = Fading::none;

  double snr() const;  ///< 2 r gamma_b (linear)
  void validate() const;
};

struct ReceivedFrame {
  Eigen::VectorXd samples;
  double fade_amplitude = 1.0;
  double noise_variance = 1.0;
};

/// Bit 0 maps to +1. Noise variance is 1/(2 r gamma_b a^2) where a^2 is the
/// frame's fade power (1 without fading, Exp(1) with block Rayleigh).
ReceivedFrame transmit(const BitSequence& coded, const ChannelConfig& cfg, std::uint64_t seed);

/// 2 z / sigma^2 per sample; the fade is known and already folded into sigma^2.
LlrSequence channel_llrs(const ReceivedFrame& frame);

/// Same LLRs computed from samples carried at an arbitrary amplitude `a`
/// with noise variance a^2 sigma^2, i.e. 2 (z / a) / sigma^2.
LlrSequence channel_llrs_scaled(const Eigen::VectorXd& samples, double amplitude, double noise_variance);

std::string to_string(Fading f);
Fading parse_fading(const std::string& name);

}  // namespace apilab
