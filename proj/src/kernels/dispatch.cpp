#include <atomic>
#include <cstdlib>

#include "udscheme/kernels.hpp"

namespace udscheme::kernels {

namespace detail {
#if defined(UDSCHEME_HAVE_AVX2)
const KernelTable& avx2_table();
#endif
#if defined(UDSCHEME_HAVE_NEON)
const KernelTable& neon_table();
#endif
}  // namespace detail

const KernelTable* avx2() {
#if defined(UDSCHEME_HAVE_AVX2)
  if (__builtin_cpu_supports("avx2")) return &detail::avx2_table();
#endif
  return nullptr;
}

const KernelTable* neon() {
#if defined(UDSCHEME_HAVE_NEON)
  return &detail::neon_table();
#else
  return nullptr;
#endif
}

std::vector<const KernelTable*> available() {
  std::vector<const KernelTable*> out{&scalar()};
  if (auto* t = avx2()) out.push_back(t);
  if (auto* t = neon()) out.push_back(t);
  return out;
}

namespace {

const KernelTable* by_name(std::string_view name) {
  for (auto* t : available()) {
    if (t->name == name) return t;
  }
  return nullptr;
}

const KernelTable* initial_choice() {
  if (const char* env = std::getenv("UDSCHEME_KERNELS")) {
    if (auto* t = by_name(env)) return t;
  }
  return available().back();
}

std::atomic<const KernelTable*>& slot() {
  static std::atomic<const KernelTable*> chosen{initial_choice()};
  return chosen;
}

}  // namespace

const KernelTable& active() { return *slot().load(std::memory_order_relaxed); }

bool select(std::string_view name) {
  auto* t = by_name(name);
  if (!t) return false;
  slot().store(t, std::memory_order_relaxed);
  return true;
}

}  // namespace udscheme::kernels
