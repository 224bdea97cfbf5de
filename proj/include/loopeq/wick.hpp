#pragma once

#include <map>
#include <string>
#include <vector>

#include "loopeq/laurent.hpp"
#include "loopeq/partition.hpp"
#include "loopeq/powersum.hpp"

namespace loopeq {

// Variable slots used in the map-model Laurent polynomials: N, the edge weight
// t, and t_k stored in slot k (k >= 3).
inline constexpr int kVarN = 0;
inline constexpr int kVarT = 1;
std::vector<std::string> map_variable_names(int max_degree);

// <prod_i Tr M^{powers_i}> for the Gaussian weight e^{-Tr M^2/2} on N x N
// Hermitian matrices, as an exact polynomial in N. Memoized on the sorted powers.
NPoly gaussian_trace_moment(const std::vector<int>& powers);

namespace detail {
// Plain matching enumeration in the given order, no cache (tests use it to check symmetry).
NPoly wick_enumerate(const std::vector<int>& powers);
}  // namespace detail

// Vertex weights of the map model V(x) = N(x^2/(2t) - sum_k t_k x^k / k).
// Each weight is a LaurentPoly, so t_k can be symbolic (variable k) or a number.
struct MapModel {
  std::map<int, LaurentPoly> weights;

  static MapModel symbolic(const std::vector<int>& degrees);
  static MapModel numeric(const std::map<int, CRational>& values);
  int max_degree() const;
  // t_1 .. t_{d+1} in the Q_mu convention (coefficients of V'), as Laurent polynomials in N, t, t_k.
  std::vector<LaurentPoly> dV_coefficients() const;
};

// Non-connected generating series T_{k_1..k_n} = sum_e t^e coeffs[e].
struct MapSeries {
  std::vector<int> marked;
  int e_max = 0;
  std::map<int, LaurentPoly> coeffs;  // polynomials in N (and symbolic t_k)

  bool is_zero() const;
  std::string to_string(const std::vector<std::string>& names) const;
};

inline constexpr int kMaxOrder = 6;
inline constexpr int kMaxHalfEdges = 16;

// Expands exp(N sum_k t_k Tr M^k / k) against the Gaussian with propagator t/N up to
// e_max edges, inserting the marked traces. Throws std::invalid_argument if e_max > 6.
MapSeries map_series(const MapModel& model, const std::vector<int>& marked, int e_max);

// sum_e T_nu[e] t^e for e <= order, as a LaurentPoly in (N, t, t_k). Allows order up
// to kMaxHalfEdges / 2 so the loop equations can look one order ahead.
LaurentPoly map_generating_function(const MapModel& model, const Partition& nu, int order);

// Applies E(p_nu) := T_nu to raw power-sum terms (p_0 = N) and keeps orders <= e_max.
LaurentPoly evaluate_on_maps(const std::vector<RawTerm<LaurentPoly>>& raw, const MapModel& model, int e_max);

// E(Q_mu) on the map series, grouped by order in t. Exactly zero when the
// loop equations hold. Throws when e_max > 6 or when e_max is below the first
// order at which E(Q_mu) has any term (the check would be vacuous).
MapSeries tutte_residual(const MapModel& model, const std::vector<int>& mu, int e_max);

}  // namespace loopeq
