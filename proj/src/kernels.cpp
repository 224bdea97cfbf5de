#include <cstdlib>
#include <cstring>

#include "loopeq/kernels.hpp"

namespace loopeq::kernels {

bool avx2_available() {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

bool forced_scalar() {
  const char* env = std::getenv("LOOPEQ_SIMD");
  return env != nullptr && std::strcmp(env, "scalar") == 0;
}

PowerMomentsFn select() {
#if defined(__x86_64__)
  if (!forced_scalar() && avx2_available()) return &power_moments_avx2;
#endif
  return &power_moments_scalar;
}

}  // namespace

PowerMomentsFn power_moments() {
  static const PowerMomentsFn fn = select();
  return fn;
}

const char* power_moments_variant() {
#if defined(__x86_64__)
  if (power_moments() == &power_moments_avx2) return "avx2";
#endif
  return "scalar";
}

}  // namespace loopeq::kernels
