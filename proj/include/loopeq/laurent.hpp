#pragma once

#include <map>
#include <string>
#include <vector>

#include "loopeq/crational.hpp"

namespace loopeq {

// Sparse multivariate Laurent polynomial over the Gaussian rationals.
//
// Exponent keys are vectors of (possibly negative) integers with trailing zeros
// trimmed, so polynomials in different numbers of variables mix freely. Used for
// polynomials in N (with N^-1 allowed), for map generating series in t, t_k, N,
// and for symbolic potential coefficients.
class LaurentPoly {
 public:
  using Exponents = std::vector<int>;

  LaurentPoly() = default;
  LaurentPoly(const CRational& c);  // NOLINT(google-explicit-constructor)
  LaurentPoly(long c) : LaurentPoly(CRational(c)) {}  // NOLINT(google-explicit-constructor)

  // x_var^power.
  static LaurentPoly variable(int var, int power = 1);
  static LaurentPoly monomial(const CRational& coeff, Exponents exps);

  const std::map<Exponents, CRational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  CRational coefficient(const Exponents& exps) const;
  // Exponent of variable `var` in a key (0 when absent).
  static int exponent(const Exponents& exps, int var) {
    return var < static_cast<int>(exps.size()) ? exps[static_cast<std::size_t>(var)] : 0;
  }

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  LaurentPoly& operator*=(const CRational& c);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(LaurentPoly a, const CRational& c) { return a *= c; }
  LaurentPoly operator-() const;
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

  // Drops every term whose exponent of `var` exceeds `max_power`.
  LaurentPoly truncated(int var, int max_power) const;
  // Substitutes x_var := value (value must be nonzero if negative powers occur).
  LaurentPoly substituted(int var, const CRational& value) const;
  // Evaluates all variables; `values[i]` for x_i.
  CRational evaluate(const std::vector<CRational>& values) const;

  // e.g. "2*N^3 + N" with the given variable names.
  std::string to_string(const std::vector<std::string>& names) const;

 private:
  void add_term(const Exponents& exps, const CRational& c);
  static Exponents trimmed(Exponents e);

  std::map<Exponents, CRational> terms_;
};

// Polynomial in N (Laurent: N^-1 may occur) with Gaussian-rational coefficients.
using NPoly = LaurentPoly;

}  // namespace loopeq
