#include "loopeq/upoly.hpp"

#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace loopeq {

void trim(UPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int degree(const UPoly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
    if (!p[static_cast<std::size_t>(i)].is_zero()) return i;
  }
  return -1;
}

UPoly derivative(const UPoly& p) {
  UPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * CRational(static_cast<long>(i)));
  trim(d);
  return d;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

UPoly operator-(const UPoly& a, const UPoly& b) {
  UPoly out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

void divmod(const UPoly& a, const UPoly& b, UPoly& quot, UPoly& rem) {
  const int db = degree(b);
  if (db < 0) throw std::domain_error("polynomial division by zero");
  rem = a;
  trim(rem);
  const int da = degree(rem);
  quot.assign(da >= db ? static_cast<std::size_t>(da - db + 1) : 0, CRational(0));
  const CRational lead_inv = CRational(1) / b[static_cast<std::size_t>(db)];
  for (int k = da - db; k >= 0; --k) {
    const CRational c = rem[static_cast<std::size_t>(k + db)] * lead_inv;
    quot[static_cast<std::size_t>(k)] = c;
    if (c.is_zero()) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= c * b[static_cast<std::size_t>(j)];
  }
  trim(quot);
  trim(rem);
}

UPoly gcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.empty()) return a;
  const CRational inv = CRational(1) / a.back();
  for (auto& c : a) c *= inv;
  return a;
}

std::complex<double> eval(const UPoly& p, std::complex<double> x) {
  std::complex<double> acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + it->to_complex();
  return acc;
}

CRational eval(const UPoly& p, const CRational& x) {
  CRational acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

CVec to_complex(const UPoly& p) {
  CVec out;
  out.reserve(p.size());
  for (const auto& c : p) out.push_back(c.to_complex());
  return out;
}

std::complex<double> eval(std::span<const std::complex<double>> p, std::complex<double> x) {
  std::complex<double> acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

CVec polynomial_roots(std::span<const std::complex<double>> p) {
  std::size_t n = p.size();
  while (n > 0 && p[n - 1] == 0.0) --n;
  if (n < 2) return {};
  const int deg = static_cast<int>(n) - 1;
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -p[static_cast<std::size_t>(i)] / p[n - 1];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  CVec roots(solver.eigenvalues().data(), solver.eigenvalues().data() + deg);

  CVec dp;
  for (std::size_t i = 1; i < n; ++i) dp.push_back(p[i] * static_cast<double>(i));
  const auto coeffs = p.first(n);
  for (auto& z : roots) {
    for (int it = 0; it < 8; ++it) {
      const auto f = eval(coeffs, z);
      const auto df = eval(std::span<const std::complex<double>>(dp), z);
      if (df == 0.0) break;
      const auto step = f / df;
      z -= step;
      if (std::abs(step) <= 1e-16 * (1.0 + std::abs(z))) break;
    }
  }
  return roots;
}

}  // namespace loopeq
