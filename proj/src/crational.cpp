#include "loopeq/crational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace loopeq {

mpq_class CRational::parse_rational(std::string_view s) {
  std::string str(s);
  while (!str.empty() && str.front() == ' ') str.erase(str.begin());
  while (!str.empty() && str.back() == ' ') str.pop_back();
  if (str.empty()) throw std::invalid_argument("empty rational string");
  if (str.front() == '+') str.erase(str.begin());
  for (char c : str) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-')) {
      throw std::invalid_argument("malformed rational '" + std::string(s) + "'");
    }
  }
  mpq_class q;
  if (q.set_str(str, 10) != 0) {
    throw std::invalid_argument("malformed rational '" + std::string(s) + "'");
  }
  if (sgn(q.get_den()) == 0) throw std::invalid_argument("zero denominator in '" + str + "'");
  q.canonicalize();
  return q;
}

CRational CRational::parse(std::string_view re, std::string_view im) {
  return {parse_rational(re), parse_rational(im)};
}

bool CRational::is_integer() const {
  return sgn(im_) == 0 && re_.get_den() == 1;
}

CRational& CRational::operator+=(const CRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

CRational& CRational::operator-=(const CRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

CRational& CRational::operator*=(const CRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

CRational& CRational::operator/=(const CRational& o) {
  if (o.is_zero()) throw std::domain_error("CRational division by zero");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  const mpq_class n = o.norm();
  *this *= o.conj();
  re_ /= n;
  im_ /= n;
  return *this;
}

CRational CRational::pow(unsigned e) const {
  CRational result(1);
  CRational base = *this;
  while (e != 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e != 0) base *= base;
  }
  return result;
}

std::string CRational::to_string() const {
  if (sgn(im_) == 0) return re_.get_str();
  std::string imag;
  if (im_ == 1) {
    imag = "i";
  } else if (im_ == -1) {
    imag = "-i";
  } else {
    imag = im_.get_str() + "i";
  }
  if (sgn(re_) == 0) return imag;
  if (imag.front() != '-') imag = "+" + imag;
  return re_.get_str() + imag;
}

std::ostream& operator<<(std::ostream& os, const CRational& z) { return os << z.to_string(); }

}  // namespace loopeq
