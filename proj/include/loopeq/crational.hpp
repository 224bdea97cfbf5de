#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace loopeq {

// Exact Gaussian rational re + i*im. All symbolic modules compute in this field.
class CRational {
 public:
  CRational() = default;
  CRational(long v) : re_(v), im_(0) {}  // NOLINT(google-explicit-constructor)
  CRational(mpq_class re) : re_(std::move(re)), im_(0) { re_.canonicalize(); }  // NOLINT
  CRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static CRational i() { return {0, 1}; }

  // Parses "p/q" or an integer string; throws std::invalid_argument.
  static mpq_class parse_rational(std::string_view s);
  static CRational parse(std::string_view re, std::string_view im = "0");

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_integer() const;

  CRational conj() const { return {re_, -im_}; }
  // |z|^2, exact.
  mpq_class norm() const { return re_ * re_ + im_ * im_; }
  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }
  double abs() const { return std::abs(to_complex()); }

  CRational& operator+=(const CRational& o);
  CRational& operator-=(const CRational& o);
  CRational& operator*=(const CRational& o);
  CRational& operator/=(const CRational& o);  // throws std::domain_error on zero

  friend CRational operator+(CRational a, const CRational& b) { return a += b; }
  friend CRational operator-(CRational a, const CRational& b) { return a -= b; }
  friend CRational operator*(CRational a, const CRational& b) { return a *= b; }
  friend CRational operator/(CRational a, const CRational& b) { return a /= b; }
  CRational operator-() const { return {-re_, -im_}; }

  friend bool operator==(const CRational& a, const CRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  CRational pow(unsigned e) const;

  // "p/q" strings in canonical form (denominator omitted when 1).
  std::string re_string() const { return re_.get_str(); }
  std::string im_string() const { return im_.get_str(); }
  // Human-readable, e.g. "3/2", "-i", "1+2i".
  std::string to_string() const;

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

std::ostream& operator<<(std::ostream& os, const CRational& z);

}  // namespace loopeq
