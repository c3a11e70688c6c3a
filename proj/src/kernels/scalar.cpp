#include "udscheme/kernels.hpp"

namespace udscheme::kernels {

namespace {

void accumulate_scalar(double* acc, const double* row, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] += row[i];
}

void average_scalar(double* out, const double* weights, const double* totals, double count, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = weights[i] - totals[i] / count;
}

}  // namespace

const KernelTable& scalar() {
  static const KernelTable table{"scalar", accumulate_scalar, average_scalar};
  return table;
}

}  // namespace udscheme::kernels
