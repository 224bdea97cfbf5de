#include "loopeq/potential.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "loopeq/serialize.hpp"

namespace loopeq {

namespace {

CVec primitive(const CVec& p) {
  CVec out(p.size() + 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) out[i + 1] = p[i] / static_cast<double>(i + 1);
  return out;
}

UPoly parse_coefficients(const nlohmann::json& j, const std::string& field) {
  if (!j.contains(field)) throw ConfigError("potential." + field + ": missing");
  const auto& arr = j.at(field);
  if (!arr.is_array()) throw ConfigError("potential." + field + ": expected an array");
  UPoly out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(crational_from_json(arr[i], "potential." + field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

nlohmann::json coefficients_json(const UPoly& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : p) arr.push_back({c.re_string(), c.im_string()});
  return arr;
}

}  // namespace

Potential Potential::polynomial(std::vector<CRational> t) {
  trim(t);
  if (t.size() < 2) throw std::invalid_argument("polynomial potential needs deg V >= 2 (t_{d+1} != 0, d >= 1)");
  Potential v;
  v.kind_ = Kind::polynomial;
  v.d_ = static_cast<int>(t.size()) - 1;
  v.t_ = t;
  v.R_ = t;
  v.D_ = {CRational(1)};
  v.S_ = t;
  v.R_num_ = to_complex(v.R_);
  v.D_num_ = {1.0};
  v.V_poly_num_ = primitive(v.R_num_);
  return v;
}

Potential Potential::rational(UPoly R, UPoly D) {
  trim(R);
  trim(D);
  if (D.empty()) throw std::invalid_argument("rational potential: D must be nonzero");
  if (R.empty()) throw std::invalid_argument("rational potential: R must be nonzero");
  const CRational inv = CRational(1) / D.back();
  for (auto& c : R) c *= inv;
  for (auto& c : D) c *= inv;
  if (degree(gcd(R, D)) > 0) throw std::invalid_argument("rational potential: R and D are not coprime");

  Potential v;
  v.kind_ = Kind::rational;
  v.d_ = std::max(degree(R), degree(D));
  if (v.d_ < 1) throw std::invalid_argument("rational potential: V' is constant");
  v.R_ = R;
  v.D_ = D;
  UPoly rem;
  divmod(R, D, v.S_, rem);
  v.R_num_ = to_complex(R);
  v.D_num_ = to_complex(D);
  v.V_poly_num_ = primitive(to_complex(v.S_));

  const UPoly dD = derivative(D);
  if (degree(gcd(D, dD)) > 0) {
    throw std::invalid_argument("rational potential: D has a repeated root (higher-order pole unsupported)");
  }
  const CVec dD_num = to_complex(dD);
  for (const auto& p : polynomial_roots(v.D_num_)) {
    Pole pole;
    pole.location = p;
    pole.residue = eval(v.R_num_, p) / eval(std::span<const std::complex<double>>(dD_num), p);
    const double re = std::round(pole.residue.real());
    pole.integer_residue = std::abs(pole.residue - re) < 1e-9 * (1.0 + std::abs(pole.residue));
    pole.rounded_residue = static_cast<long>(re);
    v.poles_.push_back(pole);
  }
  return v;
}

const std::vector<CRational>& Potential::t() const {
  if (kind_ != Kind::polynomial) throw std::logic_error("Potential::t on a rational potential");
  return t_;
}

std::complex<double> Potential::dV(std::complex<double> x) const {
  return eval(std::span<const std::complex<double>>(R_num_), x) /
         eval(std::span<const std::complex<double>>(D_num_), x);
}

std::complex<double> Potential::d2V(std::complex<double> x) const {
  CVec dR, dD;
  for (std::size_t i = 1; i < R_num_.size(); ++i) dR.push_back(R_num_[i] * static_cast<double>(i));
  for (std::size_t i = 1; i < D_num_.size(); ++i) dD.push_back(D_num_[i] * static_cast<double>(i));
  const auto r = eval(std::span<const std::complex<double>>(R_num_), x);
  const auto dd = eval(std::span<const std::complex<double>>(D_num_), x);
  const auto r1 = eval(std::span<const std::complex<double>>(dR), x);
  const auto d1 = eval(std::span<const std::complex<double>>(dD), x);
  return (r1 * dd - r * d1) / (dd * dd);
}

std::complex<double> Potential::V(std::complex<double> x) const {
  auto v = eval(std::span<const std::complex<double>>(V_poly_num_), x);
  for (const auto& p : poles_) v += p.residue * std::log(x - p.location);
  return v;
}

std::complex<double> Potential::exp_neg_V(std::complex<double> x) const {
  auto w = std::exp(-eval(std::span<const std::complex<double>>(V_poly_num_), x));
  for (const auto& p : poles_) {
    const auto dx = x - p.location;
    if (p.integer_residue) {
      const long n = p.rounded_residue;
      auto f = std::complex<double>(1.0);
      for (long i = 0; i < std::labs(n); ++i) f *= dx;
      w = n >= 0 ? w / f : w * f;
    } else {
      w *= std::pow(dx, -p.residue);
    }
  }
  return w;
}

double Potential::log_abs_weight(std::complex<double> x) const {
  double s = -eval(std::span<const std::complex<double>>(V_poly_num_), x).real();
  for (const auto& p : poles_) s -= (p.residue * std::log(x - p.location)).real();
  return s;
}

nlohmann::json Potential::to_json() const {
  if (kind_ == Kind::polynomial) return {{"kind", "polynomial"}, {"t", coefficients_json(t_)}};
  return {{"kind", "rational"}, {"R", coefficients_json(R_)}, {"D", coefficients_json(D_)}};
}

Potential Potential::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("potential: expected a JSON object");
  if (!j.contains("kind") || !j.at("kind").is_string()) {
    throw ConfigError("potential.kind: missing or not a string");
  }
  const std::string kind = j.at("kind").get<std::string>();
  try {
    if (kind == "polynomial") return polynomial(parse_coefficients(j, "t"));
    if (kind == "rational") return rational(parse_coefficients(j, "R"), parse_coefficients(j, "D"));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("potential: ") + e.what());
  }
  throw ConfigError("potential.kind: expected \"polynomial\" or \"rational\", got \"" + kind + "\"");
}

Potential Potential::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("potential file not readable: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("potential file " + path + ": " + e.what());
  }
  return from_json(j);
}

std::string Potential::describe() const {
  std::ostringstream os;
  auto list = [&](const UPoly& p) {
    os << "[";
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
    os << "]";
  };
  if (kind_ == Kind::polynomial) {
    os << "polynomial t=";
    list(t_);
  } else {
    os << "rational R=";
    list(R_);
    os << " D=";
    list(D_);
  }
  return os.str();
}

TwoPotential::TwoPotential(Potential v, Potential vt) : V(std::move(v)), Vt(std::move(vt)) {
  if (!V.is_polynomial() || !Vt.is_polynomial()) {
    throw std::invalid_argument("two-matrix model needs polynomial V and Vt");
  }
}

}  // namespace loopeq
