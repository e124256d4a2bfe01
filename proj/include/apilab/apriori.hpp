#pragma once

#include <cstdint>

#include "apilab/bits.hpp"

namespace apilab {

/// Probability that a side-information bit equals the true bit.
/// Always in [0.5, 1): the open upper end keeps the LLR finite.
class Reliability {
 public:
  /// Upper clamp used in analytic contexts where no block length is known.
  static constexpr double analytic_max = 1.0 - 1e-6;

  /// Throws std::domain_error unless 0.5 <= value < 1.
  explicit Reliability(double value);

  /// Clamps into [0.5, upper]. Values below 0.5 (anti-correlation) clamp up
  /// to 0.5 rather than flipping the sign of the prior.
  static Reliability clamped(double value, double upper = analytic_max);

  double value() const { return value_; }
  operator double() const { return value_; }

 private:
  struct Unchecked {};
  Reliability(double value, Unchecked) : value_(value) {}
  double value_;
};

struct SideInfo {
  BitSequence bits;
  Reliability true_reliability{0.5};
  Reliability estimated_reliability{0.5};
};

/// Flips each source bit independently with probability 1 - rho.
/// The estimated reliability is initialised to rho (perfect estimation).
SideInfo generate_side_info(const BitSequence& source, Reliability rho, std::uint64_t rng_seed);

/// ln(rho / (1 - rho)).
double reliability_to_llr(Reliability rho_est);

/// Inverse of reliability_to_llr: 1 / (1 + exp(-llr)), clamped.
Reliability llr_to_reliability(double llr);

/// Per-bit priors: +L when the side bit is 0, -L when it is 1.
LlrSequence apriori_llrs(const SideInfo& info);
LlrSequence apriori_llrs(const BitSequence& side_bits, Reliability rho_est);

/// A = (1-rho) sqrt(rho_est/(1-rho_est)) + rho sqrt((1-rho_est)/rho_est).
/// Scales the pairwise error probability of a weight-w error event as A^w.
double a_factor(Reliability rho, Reliability rho_est);

/// Fraction of agreeing positions, clamped to [0.5, 1 - 1/(2k)].
Reliability estimate_correlation(const BitSequence& x_hat, const BitSequence& y_hat);

}  // namespace apilab
