#include "loopeq/laurent.hpp"

#include <sstream>
#include <stdexcept>

namespace loopeq {

LaurentPoly::Exponents LaurentPoly::trimmed(Exponents e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
  return e;
}

LaurentPoly::LaurentPoly(const CRational& c) {
  if (!c.is_zero()) terms_.emplace(Exponents{}, c);
}

LaurentPoly LaurentPoly::variable(int var, int power) {
  Exponents e(static_cast<std::size_t>(var) + 1, 0);
  e.back() = power;
  return monomial(CRational(1), std::move(e));
}

LaurentPoly LaurentPoly::monomial(const CRational& coeff, Exponents exps) {
  LaurentPoly p;
  p.add_term(trimmed(std::move(exps)), coeff);
  return p;
}

void LaurentPoly::add_term(const Exponents& exps, const CRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

CRational LaurentPoly::coefficient(const Exponents& exps) const {
  auto it = terms_.find(trimmed(exps));
  return it == terms_.end() ? CRational(0) : it->second;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly out;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      LaurentPoly::Exponents e(std::max(ea.size(), eb.size()), 0);
      for (std::size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
      for (std::size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
      out.add_term(LaurentPoly::trimmed(std::move(e)), ca * cb);
    }
  }
  return out;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
  *this = *this * o;
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const CRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out = *this;
  for (auto& [e, v] : out.terms_) v = -v;
  return out;
}

LaurentPoly LaurentPoly::truncated(int var, int max_power) const {
  LaurentPoly out;
  for (const auto& [e, c] : terms_) {
    if (exponent(e, var) <= max_power) out.terms_.emplace(e, c);
  }
  return out;
}

LaurentPoly LaurentPoly::substituted(int var, const CRational& value) const {
  LaurentPoly out;
  for (const auto& [e, c] : terms_) {
    const int p = exponent(e, var);
    CRational factor(1);
    if (p > 0) {
      factor = value.pow(static_cast<unsigned>(p));
    } else if (p < 0) {
      factor = CRational(1) / value.pow(static_cast<unsigned>(-p));
    }
    Exponents rest = e;
    if (var < static_cast<int>(rest.size())) rest[static_cast<std::size_t>(var)] = 0;
    out.add_term(trimmed(std::move(rest)), c * factor);
  }
  return out;
}

CRational LaurentPoly::evaluate(const std::vector<CRational>& values) const {
  CRational total(0);
  for (const auto& [e, c] : terms_) {
    CRational term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (i >= values.size()) throw std::invalid_argument("LaurentPoly::evaluate: missing variable value");
      if (e[i] > 0) {
        term *= values[i].pow(static_cast<unsigned>(e[i]));
      } else {
        term /= values[i].pow(static_cast<unsigned>(-e[i]));
      }
    }
    total += term;
  }
  return total;
}

std::string LaurentPoly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest total degree first reads more naturally.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string coeff = c.to_string();
    const bool complex_coeff = !c.is_real() && sgn(c.re()) != 0;
    if (complex_coeff) coeff = "(" + coeff + ")";
    bool negative = !complex_coeff && !coeff.empty() && coeff.front() == '-';
    if (negative) coeff.erase(coeff.begin());
    if (!first) {
      os << (negative ? " - " : " + ");
    } else if (negative) {
      os << "-";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += i < names.size() ? names[i] : "x" + std::to_string(i);
      if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      os << coeff;
    } else if (coeff == "1") {
      os << mono;
    } else {
      os << coeff << "*" << mono;
    }
  }
  return os.str();
}

}  // namespace loopeq
