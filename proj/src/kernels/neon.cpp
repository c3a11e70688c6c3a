#include <arm_neon.h>

#include "udscheme/kernels.hpp"

namespace udscheme::kernels::detail {

namespace {

void accumulate_neon(double* acc, const double* row, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(acc + i, vaddq_f64(vld1q_f64(acc + i), vld1q_f64(row + i)));
  for (; i < n; ++i) acc[i] += row[i];
}

void average_neon(double* out, const double* weights, const double* totals, double count, std::size_t n) {
  const float64x2_t c = vdupq_n_f64(count);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(out + i, vsubq_f64(vld1q_f64(weights + i), vdivq_f64(vld1q_f64(totals + i), c)));
  }
  for (; i < n; ++i) out[i] = weights[i] - totals[i] / count;
}

}  // namespace

const KernelTable& neon_table() {
  static const KernelTable table{"neon", accumulate_neon, average_neon};
  return table;
}

}  // namespace udscheme::kernels::detail
