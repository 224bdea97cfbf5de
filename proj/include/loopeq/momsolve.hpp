#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "loopeq/potential.hpp"
#include "loopeq/powersum.hpp"

namespace loopeq {

int hn_dimension(int N, int d);

template <class T>
struct MomentFunctional {
  int N = 1;
  int d = 1;
  // Keys: partitions_in_box(N, d-1); the empty partition carries E(1) = Z.
  std::map<Partition, T, GradedRevLex> basis_values;
};

enum class EliminationOrder {
  largest_part,    // always lower the largest part (leftmost on ties)
  smallest_eligible,  // lower the smallest part that is >= d
};

// Expresses E(p_mu) as an exact combination of E(p_nu), nu in A_{N,d}, using
// only loop equations: a part mu_i >= d is the leading term t_{d+1} p_mu of
// Q_{(mu_i - d, rest)}; every other term of that Q has lower weight.
class Reducer {
 public:
  Reducer(const Potential& V, int N, EliminationOrder order = EliminationOrder::largest_part);

  const PowerSumPoly& reduce(const Partition& mu);
  PowerSumPoly reduce(const PowerSumPoly& p);

  int N() const { return N_; }
  int d() const { return d_; }
  // Largest row sum sum_nu |c_{mu,nu}| over everything reduced so far; a cheap
  // stand-in for the conditioning of the reduction.
  double growth_factor() const { return growth_; }

 private:
  const Potential& V_;
  int N_, d_;
  EliminationOrder order_;
  CRational lead_inv_;
  std::map<Partition, PowerSumPoly, GradedRevLex> memo_;
  double growth_ = 1.0;
};

template <class T>
T from_crational(const CRational& c);
template <>
inline CRational from_crational<CRational>(const CRational& c) {
  return c;
}
template <>
inline std::complex<double> from_crational<std::complex<double>>(const CRational& c) {
  return c.to_complex();
}

void check_functional_shape(int N, int d, const std::vector<Partition>& keys, const Potential& V);

template <class T>
T apply_functional(const MomentFunctional<T>& F, const PowerSumPoly& reduced) {
  T total{};
  for (const auto& [nu, c] : reduced.terms()) {
    auto it = F.basis_values.find(nu);
    if (it == F.basis_values.end()) throw std::logic_error("reduction left the basis at " + nu.to_string());
    total = total + from_crational<T>(c) * it->second;
  }
  return total;
}

template <class T>
std::map<Partition, T, GradedRevLex> solve_moments(const MomentFunctional<T>& F, const Potential& V,
                                                   const std::vector<Partition>& targets,
                                                   double* growth_factor = nullptr) {
  std::vector<Partition> keys;
  for (const auto& [k, v] : F.basis_values) keys.push_back(k);
  check_functional_shape(F.N, F.d, keys, V);
  Reducer reducer(V, F.N);
  std::map<Partition, T, GradedRevLex> out;
  for (const auto& mu : targets) out[mu] = apply_functional(F, reducer.reduce(mu));
  if (growth_factor) *growth_factor = reducer.growth_factor();
  return out;
}

// Oracle values for residual checks: the value and an absolute magnitude scale
// (e.g. the integral of |integrand|) used to normalize cancellations.
struct OracleEntry {
  std::complex<double> value;
  double scale = 0.0;
};
using Oracle = std::map<Partition, OracleEntry, GradedRevLex>;

class MissingMoments : public std::runtime_error {
 public:
  MissingMoments(std::vector<Partition> missing);
  const std::vector<Partition>& missing() const { return missing_; }

 private:
  std::vector<Partition> missing_;
};

// All loop indices (mu_1 >= 0; rest a partition) with mu_1 + |rest| <= weight_max.
std::vector<std::vector<int>> loop_indices(int weight_max);

// Partitions (length <= N) an oracle must provide for residuals().
std::vector<Partition> needed_partitions(const Potential& V, int N, int weight_max);

struct ResidualEntry {
  std::vector<int> mu;
  std::complex<double> value;
  double denominator = 0.0;
  double relative = 0.0;
};

struct ResidualReport {
  std::vector<ResidualEntry> entries;
  double max_relative = 0.0;
  std::vector<int> worst_mu;
};

// |E(Q_mu)| / sum_nu |c_nu| scale(nu) for every loop index up to weight_max, Q_mu
// first rewritten on partitions of length <= N.
ResidualReport residuals(const Oracle& oracle, const Potential& V, int N, int weight_max);

// Dimension of the solution space of the loop equations E(Q_mu) = 0, |mu| <= weight_max,
// in the unknowns E(p_nu), l(nu) <= N, computed by exact rank. For weight_max + d >=
// N(d-1) it should equal hn_dimension(N, d).
struct DimensionWitness {
  int unknowns = 0;
  int equations = 0;
  int rank = 0;
  int nullity = 0;
};
DimensionWitness solution_space_dimension(const Potential& V, int N, int weight_max);

}  // namespace loopeq
