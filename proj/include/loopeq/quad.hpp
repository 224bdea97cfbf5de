#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "loopeq/contours.hpp"
#include "loopeq/powersum.hpp"

namespace loopeq {

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved) : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const { return achieved_; }

 private:
  double achieved_;
};

// Vector-valued contour integral with per-component error estimates and the
// integral of |integrand| (the scale errors are measured against).
struct ContourIntegral {
  std::vector<cplx> value;
  std::vector<double> err;
  std::vector<double> scale;
};

// Writes f_0(x)..f_{M-1}(x) (the full integrand without dx) to out.
using PointIntegrand = std::function<void(cplx x, cplx* out)>;

struct QuadOptions {
  double tol = 1e-12;         // relative to the absolute-value integral, per component
  int max_panels = 20000;     // per segment
  // |integrand| <= C |x|^growth |e^{-V(x)}| along rays; rays are cut where this
  // bound falls below 1e-18 of its peak.
  double growth = 0.0;
};

// Integral of a general integrand along c. Closed circles use the periodic
// trapezoid rule; everything else adaptive Gauss-Kronrod (7/15).
ContourIntegral integrate(const Contour& c, const Potential& V, int M, const PointIntegrand& f, const QuadOptions& opt);

// m(k) = int_c x^k e^{-V(x)} dx for k = 0..K, all k in one pass.
ContourIntegral arc_moments(const Contour& c, const Potential& V, int K, double tol = 1e-12);
std::pair<cplx, double> arc_moment(const Contour& c, const Potential& V, int k, double tol = 1e-12);

struct MomentTable {
  int K = 0;
  std::vector<ContourIntegral> arcs;
};
MomentTable moment_table(const std::vector<Contour>& arcs, const Potential& V, int K, double tol = 1e-12);

struct Expectation {
  cplx value{};
  double err = 0.0;    // propagated worst-case bound
  double scale = 0.0;  // magnitude of the integral of |integrand|, upper estimate
};

// Highest arc moment needed for E(p) with N eigenvalues: weight + 2(N-1).
int required_moment(const PowerSumPoly& p, int N);

// int over gamma_{word_1} x ... x gamma_{word_N} of p_mu Delta^2 prod e^{-V},
// assembled as sum_sigma sgn(sigma) det[m_{word_i}(sigma(i) + j + e_i)] over the
// exponent shifts e of p_mu. Caps: N <= 5, l(mu) <= 6.
Expectation word_integral(const std::vector<int>& word, const Partition& mu, const MomentTable& T);

// E_{gamma^n}(p_mu) = (#distinct words of type n) * word_integral(canonical word).
Expectation class_expectation(const Composition& n, const Partition& mu, const MomentTable& T);

Expectation expectation(const HomologyClass& G, const PowerSumPoly& p, const MomentTable& T);
Expectation expectation(const HomologyClass& G, const PowerSumPoly& p, const Potential& V, double tol = 1e-12);

struct MomentMatrix {
  std::vector<Composition> rows;
  std::vector<Partition> cols;
  std::vector<std::vector<cplx>> entries;
  std::vector<std::vector<double>> errors;
  std::vector<double> singular_values;  // of the column-scaled matrix, descending
  double min_scaled_singular_value() const { return singular_values.empty() ? 0.0 : singular_values.back(); }
};
MomentMatrix moment_matrix(const Potential& V, int N, double tol = 1e-12);
MomentMatrix moment_matrix(const std::vector<Contour>& arcs, const Potential& V, int N, double tol = 1e-12);
// From a precomputed table over the d basis arcs, K >= moment_matrix_order(N, d).
MomentMatrix moment_matrix(const MomentTable& T, int N);
int moment_matrix_order(int N, int d);

}  // namespace loopeq
