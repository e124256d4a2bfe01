#include "apilab/apriori.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "apilab/rng.hpp"

namespace apilab {

Reliability::Reliability(double value) : value_(value) {
  if (!(value >= 0.5 && value < 1.0))
    throw std::domain_error("reliability must lie in [0.5, 1), got " + std::to_string(value));
}

Reliability Reliability::clamped(double value, double upper) {
  upper = std::min(upper, std::nextafter(1.0, 0.0));
  if (std::isnan(value)) value = 0.5;
  return Reliability(std::clamp(value, 0.5, std::max(0.5, upper)), Unchecked{});
}

SideInfo generate_side_info(const BitSequence& source, Reliability rho, std::uint64_t rng_seed) {
  Rng rng(rng_seed);
  std::bernoulli_distribution flip(1.0 - rho.value());
  SideInfo info;
  info.bits.resize(source.size());
  for (std::size_t i = 0; i < source.size(); ++i) info.bits[i] = source[i] ^ static_cast<std::uint8_t>(flip(rng));
  info.true_reliability = rho;
  info.estimated_reliability = rho;
  return info;
}

double reliability_to_llr(Reliability rho_est) {
  const double p = rho_est.value();
  return std::log(p / (1.0 - p));
}

Reliability llr_to_reliability(double llr) { return Reliability::clamped(1.0 / (1.0 + std::exp(-llr))); }

LlrSequence apriori_llrs(const BitSequence& side_bits, Reliability rho_est) {
  const double l = reliability_to_llr(rho_est);
  LlrSequence out(static_cast<Eigen::Index>(side_bits.size()));
  for (std::size_t i = 0; i < side_bits.size(); ++i) out[static_cast<Eigen::Index>(i)] = side_bits[i] ? -l : l;
  return out;
}

LlrSequence apriori_llrs(const SideInfo& info) { return apriori_llrs(info.bits, info.estimated_reliability); }

double a_factor(Reliability rho, Reliability rho_est) {
  const double p = rho.value();
  const double q = rho_est.value();
  return (1.0 - p) * std::sqrt(q / (1.0 - q)) + p * std::sqrt((1.0 - q) / q);
}

Reliability estimate_correlation(const BitSequence& x_hat, const BitSequence& y_hat) {
  if (x_hat.size() != y_hat.size() || x_hat.empty())
    throw std::invalid_argument("estimate_correlation: sequences must be non-empty and of equal length");
  const auto k = static_cast<double>(x_hat.size());
  const double agree = k - static_cast<double>(hamming_distance(x_hat, y_hat));
  return Reliability::clamped(agree / k, 1.0 - 1.0 / (2.0 * k));
}

}  // namespace apilab
