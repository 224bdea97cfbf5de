#pragma once

#include <complex>
#include <map>
#include <vector>

#include "loopeq/contours.hpp"
#include "loopeq/potential.hpp"

namespace loopeq {

// Critical points of V_r = V - r log x, i.e. roots of x V'(x) = r, in order of
// increasing argument in [0, 2 pi).
struct SaddleSet {
  int r = 0;
  std::vector<cplx> xi;
  std::vector<cplx> Q_prime;    // Q'(xi_j) = prod_{k != j} (xi_j - xi_k)
  std::vector<cplx> Vr_values;  // V(xi) - r log(xi), principal log
  std::vector<cplx> Vr_second;  // V''(xi) + r / xi^2
  std::vector<cplx> pole_assoc; // 0 for every saddle (all associate to the pole at infinity)
};

// Polynomial V only. Throws std::invalid_argument for r < 1 or when two saddles
// coincide (suggesting a larger r).
SaddleSet saddle_points(const Potential& V, int r);

// Lagrange basis on the saddles, evaluated pointwise as a product of ratios.
struct LagrangeBasis {
  std::vector<cplx> nodes;
  int size() const { return static_cast<int>(nodes.size()); }
  cplx operator()(int j, cplx x) const;
};
LagrangeBasis lagrange_f(const SaddleSet& S);

// Ray from 0 through xi_j: the j-th arc of the discriminator basis.
std::vector<Contour> discriminator_arcs(const SaddleSet& S);

// log A(n), with C_n = int_{R^n} Delta^2 prod e^{-x_i^2/2} = (2 pi)^{n/2} prod_{k=1}^{n} k!
// and sqrt(V_r'') on the branch
// with Re(sqrt(V_r'') e^{i arg xi}) > 0.
cplx log_A(const SaddleSet& S, const Composition& n);

struct DiscriminatorEntry {
  Composition n, m;
  cplx ratio{};
  double err = 0.0;
};

struct DiscriminatorReport {
  int r = 0;
  int N = 0;
  SaddleSet saddles;
  std::vector<Composition> classes;
  std::vector<cplx> log_A;           // per class
  std::vector<Composition> J_max;    // classes with Re log A within 1 of the maximum
  std::vector<DiscriminatorEntry> entries;  // all (n, m) pairs
  double tol = 0.0;

  const DiscriminatorEntry& at(const Composition& n, const Composition& m) const;
};

// E_{gamma^n}(p_{r,m}) prod_j Q'(xi_j)^{m_j} / A(m), with p_{r,m} evaluated inside the
// integrand. Requires N <= 2 and deg V' <= 3.
cplx discriminator_ratio(const Composition& n, const Composition& m, int r, const Potential& V, double tol = 1e-10);
DiscriminatorReport discriminator_report(const Potential& V, int r, int N, double tol = 1e-10);

// For Gamma = sum_n c_n gamma^n: the normalized E_Gamma(p_{r,m}) for each m in
// the maximal set of the support of c. Each is expected to approach c_m.
std::map<Composition, cplx> injectivity_witness(const DiscriminatorReport& rep, const std::map<Composition, cplx>& c);

}  // namespace loopeq
