#pragma once

// Dense inner loops of the perceptron: summing weight rows into a score
// vector and materializing averaged weights. Each loop has a scalar reference
// and SIMD variants; the variant is chosen once at runtime. All variants use
// the same per-element operation order, so results are bitwise identical.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace udscheme::kernels {

struct KernelTable {
  std::string_view name;
  /// acc[i] += row[i]
  void (*accumulate)(double* acc, const double* row, std::size_t n);
  /// out[i] = weights[i] - totals[i] / count
  void (*average)(double* out, const double* weights, const double* totals, double count, std::size_t n);
};

const KernelTable& scalar();
/// nullptr when the variant is not compiled in or the CPU lacks support.
const KernelTable* avx2();
const KernelTable* neon();

/// The selected table. Defaults to the widest supported variant; the
/// UDSCHEME_KERNELS environment variable (scalar|avx2|neon) overrides it.
const KernelTable& active();

/// Overrides the selection; returns false if the variant is unavailable.
bool select(std::string_view name);

/// Variants usable on this machine, scalar first.
std::vector<const KernelTable*> available();

inline void accumulate(std::span<double> acc, std::span<const double> row) {
  active().accumulate(acc.data(), row.data(), acc.size());
}

}  // namespace udscheme::kernels
