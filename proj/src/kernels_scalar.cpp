#include <cmath>

#include "loopeq/kernels.hpp"

namespace loopeq::kernels {

void power_moments_scalar(const double* zr, const double* zi, const double* wr, const double* wi, std::size_t n,
                          int kmax, double* acc_re, double* acc_im, double* abs_acc) {
  for (std::size_t i = 0; i < n; ++i) {
    const double az = std::hypot(zr[i], zi[i]);
    double tr = wr[i], ti = wi[i];
    double a = std::hypot(wr[i], wi[i]);
    for (int k = 0; k <= kmax; ++k) {
      acc_re[k] += tr;
      acc_im[k] += ti;
      abs_acc[k] += a;
      const double nr = tr * zr[i] - ti * zi[i];
      ti = tr * zi[i] + ti * zr[i];
      tr = nr;
      a *= az;
    }
  }
}

}  // namespace loopeq::kernels
