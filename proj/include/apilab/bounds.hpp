#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "apilab/apriori.hpp"
#include "apilab/spectrum.hpp"

namespace apilab {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

/// Weights of one error event: codeword distance d, information distance w,
/// code rate r and E_b/N_0 (linear).
struct PairwiseParams {
  int d = 1;
  int w = 0;
  double r = 1.0;
  double gamma_b = 1.0;
};

/// Exact pairwise error probability with a-priori information, averaged over
/// the Binomial(w, 1 - rho) number of wrong side-information bits on the
/// error positions. Accumulated in the log domain, largest term first.
double pairwise_exact(const PairwiseParams& p, Reliability rho, Reliability rho_est);

/// 0.5 erfc(sqrt(r d gamma_b)) A^w. Not a strict bound; may exceed 1.
double pairwise_approx(const PairwiseParams& p, double a);

/// exp(-r d gamma_b) A^w.
double pairwise_chernoff(const PairwiseParams& p, double a);

/// d + w ln(1/A) / (r gamma_b); larger is better. Throws for A <= 0.
double design_metric(int d, int w, double r, double gamma_b, double a);

/// Bit error probability of uncoded BPSK with the MAP decision that adds the
/// prior LLR to the channel LLR.
double uncoded_exact(double gamma_b, Reliability rho, Reliability rho_est);
double uncoded_approx(double gamma_b, double a);

enum class Kernel { exact, approx, chernoff };

/// sum over records of beta * w * P(d, w) with the selected pairwise kernel.
/// Throws std::invalid_argument for an empty spectrum.
double conv_union_bound(const WeightSpectrum& spectrum, double r, double gamma_b, Reliability rho,
                        Reliability rho_est, Kernel kernel);

struct InversionBracket {
  double lo = 1e-4;
  double hi = 1e3;
  int max_iterations = 200;
};

/// Finds gamma_b (linear) with bound(gamma_b) == target for a bound that
/// decreases monotonically in gamma_b. Throws std::domain_error when the
/// target is not reachable inside the bracket.
double invert_bound_for_gamma(const std::function<double(double)>& bound, double target,
                              InversionBracket bracket = {});

/// 10 log10(gamma(target, no prior) / gamma(target, with prior)).
double gain_db(const std::function<double(double)>& without_prior, const std::function<double(double)>& with_prior,
               double target);

// Random-coding ensemble.
double random_code_r1(double r, double gamma_b);  ///< log2(2 / (1 + e^{-r gamma_b}))
double random_code_eta(double a);                 ///< log2(2 / (1 + A))
double cutoff_rate(double r, double gamma_b, double a);  ///< R1 / (1 - eta)

/// M ((1 + e^{-r gamma_b}) / 2)^n ((1 + A) / 2)^k with M = 2^k, r = k/n.
double random_code_bound(int n, int k, double gamma_b, double a);
/// Same quantity in exponent form 2^{-n [R1 - r (1 - eta)]}.
double random_code_bound_exponent_form(int n, int k, double gamma_b, double a);

/// Smallest gamma_b (linear) for which r is below the cutoff rate:
/// (1/r) ln(1 / (2^{1 - r (1 - eta)} - 1)).
double cutoff_threshold(double r, double eta);
/// 10 log10(cutoff_threshold(r, 0) / cutoff_threshold(r, eta)).
double random_code_gain_db(double r, double eta);

/// Weight-2 error-floor fit (2/k) erfc(sqrt(r gamma_b d2t)) A^2.
double turbo_error_floor(int k, double r, double gamma_b, int d2t, double a);

/// sum (beta w / k) 0.5 erfc(sqrt(r gamma_b d)) A^w over the dominant records.
double union_floor_from_spectrum(const WeightSpectrum& spectrum, int k, double r, double gamma_b, double a);

struct SlepianWolfRates {
  double joint_entropy_bits = 0.0;  ///< 1 + H_b(rho)
  double compression_rate = 0.0;    ///< joint / 2 per source
};
SlepianWolfRates slepian_wolf_rates(Reliability rho);

/// (gamma_b in dB, probability) points, strictly increasing in gamma_b.
struct BoundCurve {
  std::vector<std::pair<double, double>> points;

  static BoundCurve evaluate(const std::function<double(double)>& bound, const std::vector<double>& gamma_db_grid);
  bool is_non_increasing() const;
};

/// gamma_b grid in dB: [from, to] inclusive with the given step.
std::vector<double> db_grid(double from = 0.0, double to = 10.0, double step = 0.25);

/// ln(0.5 erfc(x)), accurate for large positive x.
double log_half_erfc(double x);

}  // namespace apilab
