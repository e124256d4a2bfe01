#include "apilab/maxstar.hpp"

namespace apilab::detail {

CorrectionTable::CorrectionTable() {
  const double h = 1.0 / density;
  for (int i = 0; i < nodes; ++i) {
    const double x = i * h;
    value[i] = std::log1p(std::exp(-x));
    slope[i] = -h / (1.0 + std::exp(x));
  }
}

const CorrectionTable correction_table;

}  // namespace apilab::detail
