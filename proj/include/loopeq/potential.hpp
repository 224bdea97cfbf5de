#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "loopeq/crational.hpp"
#include "loopeq/upoly.hpp"

namespace loopeq {

// Malformed user input (potential files, class files). The message names the
// offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Simple pole of V' at `location` with residue V' ~ residue/(x - location).
// e^{-V} behaves like (x - location)^{-residue}.
struct Pole {
  std::complex<double> location;
  std::complex<double> residue;
  bool integer_residue = false;
  long rounded_residue = 0;
};

// V with V = sum_k t_k x^k / k (polynomial), or V' = R/D (rational).
class Potential {
 public:
  enum class Kind { polynomial, rational };

  // t[0] = t_1, ..., t[d] = t_{d+1}; trailing zeros are dropped. Requires d >= 1.
  static Potential polynomial(std::vector<CRational> t);
  // R, D low degree first. D is normalized to be monic. Requires gcd(R, D) = 1.
  static Potential rational(UPoly R, UPoly D);

  Kind kind() const { return kind_; }
  bool is_polynomial() const { return kind_ == Kind::polynomial; }
  // Number of independent arcs: deg V' for polynomials, max(deg R, deg D) otherwise.
  int d() const { return d_; }
  const std::vector<CRational>& t() const;  // polynomial only
  const UPoly& R() const { return R_; }
  const UPoly& D() const { return D_; }

  // Polynomial part S of V' = S + sum residue/(x - p), exact.
  const UPoly& polynomial_part() const { return S_; }
  const std::vector<Pole>& poles() const { return poles_; }

  std::complex<double> dV(std::complex<double> x) const;
  std::complex<double> d2V(std::complex<double> x) const;
  // V up to an additive constant (principal logs for rational V).
  std::complex<double> V(std::complex<double> x) const;
  // e^{-V}; for rational V needs integer residues so it is single valued.
  std::complex<double> exp_neg_V(std::complex<double> x) const;
  // log|e^{-V(x)}| = -Re V(x), with log-singular terms at poles.
  double log_abs_weight(std::complex<double> x) const;

  nlohmann::json to_json() const;
  static Potential from_json(const nlohmann::json& j);
  static Potential from_file(const std::string& path);

  std::string describe() const;

 private:
  Kind kind_ = Kind::polynomial;
  int d_ = 0;
  std::vector<CRational> t_;
  UPoly R_, D_, S_;
  CVec R_num_, D_num_, V_poly_num_;  // V_poly_num_ = primitive of S (numeric)
  std::vector<Pole> poles_;
};

// Pair of polynomial potentials for the two-matrix model
// e^{-Tr V(X) - Tr Vt(Y) + Tr XY}.
struct TwoPotential {
  Potential V;
  Potential Vt;
  TwoPotential(Potential v, Potential vt);
};

}  // namespace loopeq
