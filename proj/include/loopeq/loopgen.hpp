#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "loopeq/potential.hpp"
#include "loopeq/powersum.hpp"

namespace loopeq {

// mu = (mu_1, mu_2, ...) with mu_1 >= 0 the "active" exponent and the rest >= 1.
void validate_loop_index(const std::vector<int>& mu);

namespace detail {

// Products of power sums keyed by their parts sorted non-increasing, zeros
// (p_0) kept as explicit entries.
template <class Coeff>
using RawSum = std::map<std::vector<int>, Coeff>;

inline std::vector<int> sorted_parts(std::vector<int> parts) {
  std::sort(parts.begin(), parts.end(), std::greater<>());
  return parts;
}

template <class Coeff>
void accumulate(RawSum<Coeff>& out, std::vector<int> parts, const Coeff& c) {
  if (c == Coeff{}) return;
  auto key = sorted_parts(std::move(parts));
  auto [it, inserted] = out.try_emplace(key, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second == Coeff{}) out.erase(it);
  }
}

template <class Coeff>
std::vector<RawTerm<Coeff>> to_raw(const RawSum<Coeff>& s) {
  std::vector<RawTerm<Coeff>> out;
  out.reserve(s.size());
  for (const auto& [parts, c] : s) out.push_back({c, parts});
  return out;
}

inline std::vector<int> with(std::vector<int> base, std::initializer_list<int> extra) {
  base.insert(base.end(), extra);
  return base;
}

inline std::vector<int> without(const std::vector<int>& base, std::size_t i) {
  std::vector<int> out = base;
  out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
  return out;
}

}  // namespace detail

// Q_mu for V' = sum_j t[j] x^j (t[j] = t_{j+1}):
//   sum_j t_{j+1} p_{mu1+j} P - sum_{a<mu1} p_a p_{mu1-1-a} P - sum_{i>=2} mu_i p_{mu1+mu_i-1} P_hat_i
// where P = prod_{i>=2} p_{mu_i} and P_hat_i omits p_{mu_i}. Comes from
// sum_i d/dx_i (x_i^{mu1} P Delta^2 e^{-sum V}) = -Q_mu Delta^2 e^{-sum V}.
template <class Coeff>
std::vector<RawTerm<Coeff>> loop_terms_polynomial(const std::vector<int>& mu, const std::vector<Coeff>& t) {
  validate_loop_index(mu);
  const int m1 = mu[0];
  const std::vector<int> rest(mu.begin() + 1, mu.end());
  detail::RawSum<Coeff> out;
  for (std::size_t j = 0; j < t.size(); ++j) detail::accumulate(out, detail::with(rest, {m1 + static_cast<int>(j)}), t[j]);
  for (int a = 0; a < m1; ++a) detail::accumulate(out, detail::with(rest, {a, m1 - 1 - a}), Coeff(-1));
  for (std::size_t i = 0; i < rest.size(); ++i) {
    detail::accumulate(out, detail::with(detail::without(rest, i), {m1 + rest[i] - 1}), Coeff(-rest[i]));
  }
  return detail::to_raw(out);
}

// Q_mu for V' = R/D, from sum_i d/dx_i (D(x_i) x_i^{mu1} P Delta^2 e^{-sum V}):
//   sum_j R_j p_{mu1+j} P
//   - sum_k D_k [ sum_{a=0}^{k+mu1-1} p_a p_{k+mu1-1-a} P + sum_{i>=2} mu_i p_{k+mu1+mu_i-1} P_hat_i ].
template <class Coeff>
std::vector<RawTerm<Coeff>> loop_terms_rational(const std::vector<int>& mu, const std::vector<Coeff>& R,
                                                const std::vector<Coeff>& D) {
  validate_loop_index(mu);
  const int m1 = mu[0];
  const std::vector<int> rest(mu.begin() + 1, mu.end());
  detail::RawSum<Coeff> out;
  for (std::size_t j = 0; j < R.size(); ++j) detail::accumulate(out, detail::with(rest, {m1 + static_cast<int>(j)}), R[j]);
  for (std::size_t k = 0; k < D.size(); ++k) {
    if (D[k] == Coeff{}) continue;
    const int m = m1 + static_cast<int>(k);
    const Coeff neg = Coeff(0) - D[k];
    for (int a = 0; a < m; ++a) detail::accumulate(out, detail::with(rest, {a, m - 1 - a}), neg);
    for (std::size_t i = 0; i < rest.size(); ++i) {
      detail::accumulate(out, detail::with(detail::without(rest, i), {m + rest[i] - 1}), neg * Coeff(rest[i]));
    }
  }
  return detail::to_raw(out);
}

// Two-matrix model e^{-Tr V(X) - Tr Vt(Y) + Tr XY}. Symbols
// S(l, k, P) = E(Tr X^k Y^l * prod_i Tr X^{P_i}) are eliminated through the
// X-equation
//   S(l+1, k, P) = sum_j t_{j+1} S(l, k+j, P) - sum_{a<k} S(l, a, P+{k-1-a})
//                  - sum_i P_i S(l, k+P_i-1, P minus P_i),
// starting from S(0, k, P) = p_k P, and substituted into the Y-equation
//   sum_l tt_{l+1} S(l, k, P) - p_{k+1} P = 0.
template <class Coeff>
class TwoMatrixEliminator {
 public:
  TwoMatrixEliminator(std::vector<Coeff> t, std::vector<Coeff> tt) : t_(std::move(t)), tt_(std::move(tt)) {}

  std::vector<RawTerm<Coeff>> q(const std::vector<int>& mu) {
    validate_loop_index(mu);
    const int k = mu[0];
    const std::vector<int> rest = detail::sorted_parts({mu.begin() + 1, mu.end()});
    detail::RawSum<Coeff> out;
    for (std::size_t l = 0; l < tt_.size(); ++l) {
      if (tt_[l] == Coeff{}) continue;
      for (const auto& [parts, c] : level(static_cast<int>(l), k, rest)) detail::accumulate(out, parts, tt_[l] * c);
    }
    detail::accumulate(out, detail::with(rest, {k + 1}), Coeff(-1));
    return detail::to_raw(out);
  }

 private:
  using Key = std::tuple<int, int, std::vector<int>>;

  const detail::RawSum<Coeff>& level(int l, int k, const std::vector<int>& spectators) {
    Key key{l, k, spectators};
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    detail::RawSum<Coeff> out;
    if (l == 0) {
      detail::accumulate(out, detail::with(spectators, {k}), Coeff(1));
    } else {
      for (std::size_t j = 0; j < t_.size(); ++j) {
        if (t_[j] == Coeff{}) continue;
        add_scaled(out, level(l - 1, k + static_cast<int>(j), spectators), t_[j]);
      }
      for (int a = 0; a < k; ++a) {
        add_scaled(out, level(l - 1, a, detail::sorted_parts(detail::with(spectators, {k - 1 - a}))), Coeff(-1));
      }
      for (std::size_t i = 0; i < spectators.size(); ++i) {
        if (spectators[i] == 0) continue;
        add_scaled(out, level(l - 1, k + spectators[i] - 1, detail::without(spectators, i)), Coeff(-spectators[i]));
      }
    }
    return memo_.emplace(std::move(key), std::move(out)).first->second;
  }

  static void add_scaled(detail::RawSum<Coeff>& out, const detail::RawSum<Coeff>& src, const Coeff& c) {
    for (const auto& [parts, v] : src) detail::accumulate(out, parts, c * v);
  }

  std::vector<Coeff> t_, tt_;
  std::map<Key, detail::RawSum<Coeff>> memo_;
};

// Raw (p_0 kept) forms with exact coefficients taken from the potentials.
std::vector<RawTerm<CRational>> q_polynomial_raw(const std::vector<int>& mu, const Potential& V);
std::vector<RawTerm<CRational>> q_rational_raw(const std::vector<int>& mu, const Potential& V);
std::vector<RawTerm<CRational>> q_twomatrix_raw(const std::vector<int>& mu, const TwoPotential& W);
// Either of the one-matrix forms, by potential kind.
std::vector<RawTerm<CRational>> q_raw(const std::vector<int>& mu, const Potential& V);

// Folded forms with p_0 = nvars.
PowerSumPoly q_polynomial(const std::vector<int>& mu, const Potential& V, int nvars);
PowerSumPoly q_rational(const std::vector<int>& mu, const Potential& V, int nvars);
PowerSumPoly q_twomatrix(const std::vector<int>& mu, const TwoPotential& W, int nvars);
PowerSumPoly q_mu(const std::vector<int>& mu, const Potential& V, int nvars);

}  // namespace loopeq
