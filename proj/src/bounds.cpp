#include "apilab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace apilab {

double log_half_erfc(double x) {
  if (x < 25.0) return std::log(0.5 * std::erfc(x));
  const double x2 = x * x;
  const double inv = 1.0 / (2.0 * x2);
  const double series = 1.0 - inv + 3.0 * inv * inv - 15.0 * inv * inv * inv;
  return -x2 - std::log(x * std::sqrt(std::numbers::pi)) + std::log(series) - std::numbers::ln2;
}

namespace {

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double log_sum_exp_sorted(std::vector<double>& logs) {
  std::sort(logs.begin(), logs.end(), std::greater<>());
  const double top = logs.front();
  if (top == -std::numeric_limits<double>::infinity()) return top;
  double acc = 0.0;
  for (double l : logs) acc += std::exp(l - top);
  return top + std::log(acc);
}

}  // namespace

double pairwise_exact(const PairwiseParams& p, Reliability rho, Reliability rho_est) {
  if (p.d < 1) throw std::invalid_argument("pairwise_exact: d must be >= 1");
  if (!(p.gamma_b > 0.0)) throw std::invalid_argument("pairwise_exact: gamma_b must be positive");
  const double l = reliability_to_llr(rho_est);
  const double snr = p.r * p.d * p.gamma_b;
  const double root = std::sqrt(snr);
  const double log_rho = std::log(rho.value());
  const double log_flip = std::log1p(-rho.value());

  std::vector<double> logs;
  logs.reserve(static_cast<std::size_t>(p.w) + 1);
  for (int wt = 0; wt <= p.w; ++wt) {
    // Signed argument: strong contrary priors push the term above 0.5.
    const double arg = root * (1.0 + l * (p.w - 2 * wt) / (4.0 * snr));
    logs.push_back(log_binomial(p.w, wt) + (p.w - wt) * log_rho + wt * log_flip + log_half_erfc(arg));
  }
  return std::exp(log_sum_exp_sorted(logs));
}

double pairwise_approx(const PairwiseParams& p, double a) {
  return 0.5 * std::erfc(std::sqrt(p.r * p.d * p.gamma_b)) * std::pow(a, p.w);
}

double pairwise_chernoff(const PairwiseParams& p, double a) {
  return std::exp(-p.r * p.d * p.gamma_b) * std::pow(a, p.w);
}

double design_metric(int d, int w, double r, double gamma_b, double a) {
  if (!(a > 0.0)) throw std::domain_error("design_metric: A must be positive");
  return d + w * std::log(1.0 / a) / (r * gamma_b);
}

double uncoded_exact(double gamma_b, Reliability rho, Reliability rho_est) {
  if (!(gamma_b > 0.0)) throw std::invalid_argument("uncoded_exact: gamma_b must be positive");
  const double l = reliability_to_llr(rho_est);
  const double root = std::sqrt(gamma_b);
  const double shift = l / (4.0 * gamma_b);
  return rho.value() * 0.5 * std::erfc(root * (1.0 + shift)) + (1.0 - rho.value()) * 0.5 * std::erfc(root * (1.0 - shift));
}

double uncoded_approx(double gamma_b, double a) { return 0.5 * std::erfc(std::sqrt(gamma_b)) * a; }

double conv_union_bound(const WeightSpectrum& spectrum, double r, double gamma_b, Reliability rho,
                        Reliability rho_est, Kernel kernel) {
  if (spectrum.empty()) throw std::invalid_argument("conv_union_bound: empty spectrum");
  const double a = a_factor(rho, rho_est);
  double sum = 0.0;
  for (const auto& rec : spectrum.records()) {
    const PairwiseParams p{rec.d, rec.w, r, gamma_b};
    double pe = 0.0;
    switch (kernel) {
      case Kernel::exact: pe = pairwise_exact(p, rho, rho_est); break;
      case Kernel::approx: pe = pairwise_approx(p, a); break;
      case Kernel::chernoff: pe = pairwise_chernoff(p, a); break;
    }
    sum += rec.beta * rec.w * pe;
  }
  return sum;
}

double invert_bound_for_gamma(const std::function<double(double)>& bound, double target, InversionBracket bracket) {
  if (!(target > 0.0)) throw std::domain_error("invert_bound_for_gamma: target must be positive");
  double lo = bracket.lo;
  double hi = bracket.hi;
  const double f_lo = bound(lo);
  const double f_hi = bound(hi);
  if (!(target < f_lo) || !(target > f_hi))
    throw std::domain_error("invert_bound_for_gamma: target not reachable inside the bracket");
  double mid = 0.5 * (lo + hi);
  for (int i = 0; i < bracket.max_iterations; ++i) {
    mid = 0.5 * (lo + hi);
    const double f = bound(mid);
    if (std::abs(f - target) <= 1e-9 * target || hi - lo <= 1e-9) break;
    if (f > target)
      lo = mid;
    else
      hi = mid;
  }
  return mid;
}

double gain_db(const std::function<double(double)>& without_prior, const std::function<double(double)>& with_prior,
               double target) {
  return linear_to_db(invert_bound_for_gamma(without_prior, target) / invert_bound_for_gamma(with_prior, target));
}

double random_code_r1(double r, double gamma_b) { return std::log2(2.0 / (1.0 + std::exp(-r * gamma_b))); }
double random_code_eta(double a) { return std::log2(2.0 / (1.0 + a)); }
double cutoff_rate(double r, double gamma_b, double a) { return random_code_r1(r, gamma_b) / (1.0 - random_code_eta(a)); }

double random_code_bound(int n, int k, double gamma_b, double a) {
  if (k > n || k < 1) throw std::invalid_argument("random_code_bound: need 1 <= k <= n");
  const double r = static_cast<double>(k) / n;
  const double log2_bound = k + n * std::log2((1.0 + std::exp(-r * gamma_b)) / 2.0) + k * std::log2((1.0 + a) / 2.0);
  return std::exp2(log2_bound);
}

double random_code_bound_exponent_form(int n, int k, double gamma_b, double a) {
  const double r = static_cast<double>(k) / n;
  return std::exp2(-n * (random_code_r1(r, gamma_b) - r * (1.0 - random_code_eta(a))));
}

double cutoff_threshold(double r, double eta) {
  const double arg = std::exp2(1.0 - r * (1.0 - eta)) - 1.0;
  if (!(arg > 0.0)) throw std::domain_error("cutoff_threshold: rate not supportable");
  return std::log(1.0 / arg) / r;
}

double random_code_gain_db(double r, double eta) { return linear_to_db(cutoff_threshold(r, 0.0) / cutoff_threshold(r, eta)); }

double turbo_error_floor(int k, double r, double gamma_b, int d2t, double a) {
  if (k < 2) throw std::invalid_argument("turbo_error_floor: k must be >= 2");
  return (2.0 / k) * std::erfc(std::sqrt(r * gamma_b * d2t)) * a * a;
}

double union_floor_from_spectrum(const WeightSpectrum& spectrum, int k, double r, double gamma_b, double a) {
  if (spectrum.empty()) throw std::invalid_argument("union_floor_from_spectrum: empty spectrum");
  double sum = 0.0;
  for (const auto& rec : spectrum.records())
    sum += rec.beta * rec.w / k * 0.5 * std::erfc(std::sqrt(r * gamma_b * rec.d)) * std::pow(a, rec.w);
  return sum;
}

SlepianWolfRates slepian_wolf_rates(Reliability rho) {
  const double p = rho.value();
  const double q = 1.0 - p;
  const double hb = -(p > 0 ? p * std::log2(p) : 0.0) - (q > 0 ? q * std::log2(q) : 0.0);
  return {1.0 + hb, (1.0 + hb) / 2.0};
}

BoundCurve BoundCurve::evaluate(const std::function<double(double)>& bound, const std::vector<double>& gamma_db_grid) {
  BoundCurve c;
  c.points.reserve(gamma_db_grid.size());
  for (double g : gamma_db_grid) c.points.emplace_back(g, bound(db_to_linear(g)));
  return c;
}

bool BoundCurve::is_non_increasing() const {
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i].first > points[i - 1].first)) return false;
    if (points[i].second > points[i - 1].second) return false;
  }
  return true;
}

std::vector<double> db_grid(double from, double to, double step) {
  if (!(step > 0.0) || to < from) throw std::invalid_argument("db_grid: invalid range");
  std::vector<double> g;
  const int n = static_cast<int>(std::floor((to - from) / step + 1e-9));
  for (int i = 0; i <= n; ++i) g.push_back(from + i * step);
  return g;
}

}  // namespace apilab
