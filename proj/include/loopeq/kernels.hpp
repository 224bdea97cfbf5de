#pragma once

#include <cstddef>

namespace loopeq::kernels {

// For k = 0..kmax:
//   acc_re[k] + i acc_im[k] += sum_i w_i z_i^k
//   abs_acc[k]              += sum_i |w_i| |z_i|^k
// with z = zr + i zi, w = wr + i wi stored as separate arrays of length n.
using PowerMomentsFn = void (*)(const double* zr, const double* zi, const double* wr, const double* wi,
                                std::size_t n, int kmax, double* acc_re, double* acc_im, double* abs_acc);

void power_moments_scalar(const double* zr, const double* zi, const double* wr, const double* wi, std::size_t n,
                          int kmax, double* acc_re, double* acc_im, double* abs_acc);
#if defined(__x86_64__)
void power_moments_avx2(const double* zr, const double* zi, const double* wr, const double* wi, std::size_t n,
                        int kmax, double* acc_re, double* acc_im, double* abs_acc);
#endif

bool avx2_available();
// Chosen once: AVX2+FMA when the CPU has it, unless LOOPEQ_SIMD=scalar.
PowerMomentsFn power_moments();
const char* power_moments_variant();

}  // namespace loopeq::kernels
