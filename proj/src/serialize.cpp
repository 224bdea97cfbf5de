#include "loopeq/serialize.hpp"

#include <sstream>

#include "loopeq/potential.hpp"

namespace loopeq {

nlohmann::json to_json(const CRational& c) { return {c.re_string(), c.im_string()}; }

CRational crational_from_json(const nlohmann::json& v, const std::string& field) {
  try {
    if (v.is_string()) return CRational::parse(v.get<std::string>());
    if (v.is_number_integer()) return CRational(v.get<long>());
    if (v.is_array() && v.size() == 2) {
      auto part = [&](const nlohmann::json& x) -> std::string {
        if (x.is_string()) return x.get<std::string>();
        if (x.is_number_integer()) return std::to_string(x.get<long>());
        throw ConfigError(field + ": expected rational string");
      };
      return CRational::parse(part(v[0]), part(v[1]));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(field + ": " + e.what());
  }
  throw ConfigError(field + ": expected \"p/q\" or [re, im] rational strings");
}

nlohmann::json to_json(std::complex<double> z) { return {z.real(), z.imag()}; }

nlohmann::json to_json(const Partition& mu) { return mu.parts(); }

Partition partition_from_json(const nlohmann::json& v, const std::string& field) {
  if (!v.is_array()) throw ConfigError(field + ": expected an integer array");
  std::vector<int> parts;
  for (const auto& x : v) {
    if (!x.is_number_integer() || x.get<int>() < 1) throw ConfigError(field + ": parts must be integers >= 1");
    parts.push_back(x.get<int>());
  }
  return Partition(std::move(parts));
}

nlohmann::json to_json(const PowerSumPoly& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [mu, c] : p.terms()) arr.push_back({{"mu", mu.parts()}, {"re", c.re_string()}, {"im", c.im_string()}});
  return arr;
}

PowerSumPoly powersum_from_json(const nlohmann::json& v, int nvars, const std::string& field) {
  if (!v.is_array()) throw ConfigError(field + ": expected an array of terms");
  PowerSumPoly p(nvars);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string f = field + "[" + std::to_string(i) + "]";
    const auto& t = v[i];
    if (!t.is_object() || !t.contains("mu")) throw ConfigError(f + ": expected {\"mu\", \"re\", \"im\"}");
    const auto re = t.value("re", std::string("0")), im = t.value("im", std::string("0"));
    p.add_term(partition_from_json(t.at("mu"), f + ".mu"), crational_from_json(nlohmann::json{re, im}, f));
  }
  return p;
}

nlohmann::json raw_terms_json(const std::vector<RawTerm<CRational>>& raw) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& t : raw) arr.push_back({{"mu", t.parts}, {"re", t.coeff.re_string()}, {"im", t.coeff.im_string()}});
  return arr;
}

std::string raw_terms_text(const std::vector<RawTerm<CRational>>& raw) {
  if (raw.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (i) os << " + ";
    os << "(" << raw[i].coeff << ")*p(";
    for (std::size_t j = 0; j < raw[i].parts.size(); ++j) os << (j ? "," : "") << raw[i].parts[j];
    os << ")";
  }
  return os.str();
}

std::vector<int> parse_int_list(const std::string& s, const std::string& field) {
  std::vector<int> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw ConfigError(field + ": \"" + s + "\" is not a comma-separated integer list");
    }
    if (used != item.size()) throw ConfigError(field + ": \"" + s + "\" is not a comma-separated integer list");
    out.push_back(v);
  }
  return out;
}

std::vector<Partition> parse_partition_list(const std::string& s, const std::string& field) {
  std::vector<Partition> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ';')) {
    const auto parts = parse_int_list(item, field);
    for (int p : parts) {
      if (p < 1) throw ConfigError(field + ": partition parts must be >= 1");
    }
    out.emplace_back(parts);
  }
  return out;
}

HomologyClass class_from_json(const nlohmann::json& v, const std::vector<Contour>& arcs) {
  if (!v.is_object()) throw ConfigError("class: expected a JSON object");
  if (!v.contains("N") || !v.at("N").is_number_integer() || v.at("N").get<int>() < 1) {
    throw ConfigError("class.N: expected a positive integer");
  }
  const int N = v.at("N").get<int>();
  const std::size_t d = arcs.size();
  if (v.contains("power")) {
    const auto& c = v.at("power");
    if (!c.is_array() || c.size() != d) {
      throw ConfigError("class.power: expected " + std::to_string(d) + " coefficients (one per basis arc)");
    }
    std::vector<CRational> coeffs;
    for (std::size_t j = 0; j < d; ++j) coeffs.push_back(crational_from_json(c[j], "class.power[" + std::to_string(j) + "]"));
    return power_class(arcs, coeffs, N);
  }
  if (!v.contains("terms") || !v.at("terms").is_array()) throw ConfigError("class: needs \"power\" or \"terms\"");
  HomologyClass G;
  G.N = N;
  G.arcs = arcs;
  const auto& terms = v.at("terms");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string f = "class.terms[" + std::to_string(i) + "]";
    const auto& t = terms[i];
    if (!t.is_object() || !t.contains("n") || !t.at("n").is_array() || t.at("n").size() != d) {
      throw ConfigError(f + ".n: expected a composition with " + std::to_string(d) + " entries");
    }
    Composition n;
    int total = 0;
    for (const auto& x : t.at("n")) {
      if (!x.is_number_integer() || x.get<int>() < 0) throw ConfigError(f + ".n: entries must be integers >= 0");
      n.push_back(x.get<int>());
      total += n.back();
    }
    if (total != N) throw ConfigError(f + ".n: entries must sum to N = " + std::to_string(N));
    const CRational c = t.contains("c") ? crational_from_json(t.at("c"), f + ".c") : CRational(1);
    auto [it, inserted] = G.terms.try_emplace(n, c);
    if (!inserted) it->second += c;
  }
  return G;
}

nlohmann::json to_json(const HomologyClass& G) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [n, c] : G.terms) terms.push_back({{"n", n}, {"c", to_json(c)}});
  return {{"N", G.N}, {"terms", terms}};
}

}  // namespace loopeq
