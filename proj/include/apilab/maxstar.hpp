#pragma once

#include <algorithm>
#include <array>
#include <cmath>

namespace apilab {

namespace detail {

// ln(1 + e^{-x}) on [0, range) by cubic Hermite interpolation between nodes
// spaced 1/density apart; interpolation error stays below 1e-9.
struct CorrectionTable {
  static constexpr int density = 32;
  static constexpr double range = 40.0;
  static constexpr int nodes = static_cast<int>(range) * density + 2;
  std::array<double, nodes> value{};
  std::array<double, nodes> slope{};  // derivative times node spacing

  CorrectionTable();

  double operator()(double x) const {
    const double pos = x * density;
    const int i = static_cast<int>(pos);
    const double t = pos - i;
    const double t2 = t * t;
    const double t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * value[i] + (t3 - 2 * t2 + t) * slope[i] + (3 * t2 - 2 * t3) * value[i + 1] +
           (t3 - t2) * slope[i + 1];
  }
};

extern const CorrectionTable correction_table;

}  // namespace detail

/// ln(e^a + e^b).
inline double max_star(double a, double b) {
  const double m = std::max(a, b);
  const double x = std::abs(a - b);
  if (!(x < detail::CorrectionTable::range)) return m;
  return m + detail::correction_table(x);
}

/// Reference ln(e^a + e^b) via log1p; used to validate the table.
inline double max_star_reference(double a, double b) {
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

}  // namespace apilab
