#pragma once

#include <complex>
#include <span>
#include <vector>

#include "loopeq/crational.hpp"

namespace loopeq {

// Dense univariate polynomial, coefficients low degree first. The zero
// polynomial is the empty vector.
using UPoly = std::vector<CRational>;

void trim(UPoly& p);
int degree(const UPoly& p);  // -1 for the zero polynomial
UPoly derivative(const UPoly& p);
UPoly operator*(const UPoly& a, const UPoly& b);
UPoly operator-(const UPoly& a, const UPoly& b);
// Euclidean division; throws std::domain_error on division by zero.
void divmod(const UPoly& a, const UPoly& b, UPoly& quot, UPoly& rem);
// Monic gcd (empty when both inputs vanish).
UPoly gcd(UPoly a, UPoly b);

std::complex<double> eval(const UPoly& p, std::complex<double> x);
CRational eval(const UPoly& p, const CRational& x);

using CVec = std::vector<std::complex<double>>;
CVec to_complex(const UPoly& p);
std::complex<double> eval(std::span<const std::complex<double>> p, std::complex<double> x);

// All roots of a numeric polynomial (low degree first, nonzero leading
// coefficient) from companion-matrix eigenvalues, then polished by Newton.
CVec polynomial_roots(std::span<const std::complex<double>> p);

}  // namespace loopeq
