// Compiled with -mavx2 only; callers must check CPU support first.

#include <immintrin.h>

#include "udscheme/kernels.hpp"

namespace udscheme::kernels::detail {

namespace {

void accumulate_avx2(double* acc, const double* row, std::size_t n) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d a0 = _mm256_loadu_pd(acc + i);
    __m256d a1 = _mm256_loadu_pd(acc + i + 4);
    a0 = _mm256_add_pd(a0, _mm256_loadu_pd(row + i));
    a1 = _mm256_add_pd(a1, _mm256_loadu_pd(row + i + 4));
    _mm256_storeu_pd(acc + i, a0);
    _mm256_storeu_pd(acc + i + 4, a1);
  }
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), _mm256_loadu_pd(row + i)));
  }
  for (; i < n; ++i) acc[i] += row[i];
}

void average_avx2(double* out, const double* weights, const double* totals, double count, std::size_t n) {
  const __m256d c = _mm256_set1_pd(count);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d q = _mm256_div_pd(_mm256_loadu_pd(totals + i), c);
    _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_loadu_pd(weights + i), q));
  }
  for (; i < n; ++i) out[i] = weights[i] - totals[i] / count;
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{"avx2", accumulate_avx2, average_avx2};
  return table;
}

}  // namespace udscheme::kernels::detail
