#pragma once

#include <complex>
#include <string>
#include <vector>

#include "json.hpp"
#include "loopeq/contours.hpp"
#include "loopeq/crational.hpp"
#include "loopeq/partition.hpp"
#include "loopeq/powersum.hpp"

namespace loopeq {

// Exact rationals travel as strings "p/q"; a complex one as [re, im].
nlohmann::json to_json(const CRational& c);
// Accepts "p/q", an integer, or [re, im] (strings or integers). Throws ConfigError naming `field`.
CRational crational_from_json(const nlohmann::json& v, const std::string& field);

nlohmann::json to_json(std::complex<double> z);  // [re, im] as doubles

nlohmann::json to_json(const Partition& mu);
Partition partition_from_json(const nlohmann::json& v, const std::string& field);

// {"mu": [...], "re": "p/q", "im": "p/q"} per term, in graded order.
nlohmann::json to_json(const PowerSumPoly& p);
PowerSumPoly powersum_from_json(const nlohmann::json& v, int nvars, const std::string& field);
// Same layout, but "mu" keeps explicit 0 entries for p_0.
nlohmann::json raw_terms_json(const std::vector<RawTerm<CRational>>& raw);
// "t*p(a,b) + ..." for terminal output.
std::string raw_terms_text(const std::vector<RawTerm<CRational>>& raw);

// "3,1" -> {3, 1}; "" -> {}. Throws ConfigError on anything else.
std::vector<int> parse_int_list(const std::string& s, const std::string& field);
// "4;3,1" -> {(4), (3,1)}.
std::vector<Partition> parse_partition_list(const std::string& s, const std::string& field);

// {"N": 2, "power": [c_1, ..., c_d]} for (sum c_j gamma_j)^N, or
// {"N": 2, "terms": [{"n": [2, 0], "c": "1"}, ...]} for an explicit combination.
HomologyClass class_from_json(const nlohmann::json& v, const std::vector<Contour>& arcs);
nlohmann::json to_json(const HomologyClass& G);

}  // namespace loopeq
