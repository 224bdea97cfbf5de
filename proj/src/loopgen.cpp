#include "loopeq/loopgen.hpp"

namespace loopeq {

void validate_loop_index(const std::vector<int>& mu) {
  if (mu.empty()) throw std::invalid_argument("loop index mu must be non-empty");
  if (mu[0] < 0) throw std::invalid_argument("loop index mu_1 must be >= 0");
  for (std::size_t i = 1; i < mu.size(); ++i) {
    if (mu[i] < 1) throw std::invalid_argument("loop index parts mu_i (i >= 2) must be >= 1");
  }
}

std::vector<RawTerm<CRational>> q_polynomial_raw(const std::vector<int>& mu, const Potential& V) {
  if (!V.is_polynomial()) throw std::invalid_argument("q_polynomial needs a polynomial potential (use q_rational)");
  return loop_terms_polynomial(mu, V.t());
}

std::vector<RawTerm<CRational>> q_rational_raw(const std::vector<int>& mu, const Potential& V) {
  if (V.is_polynomial()) throw std::invalid_argument("q_rational needs a rational potential (use q_polynomial)");
  return loop_terms_rational(mu, V.R(), V.D());
}

std::vector<RawTerm<CRational>> q_twomatrix_raw(const std::vector<int>& mu, const TwoPotential& W) {
  TwoMatrixEliminator<CRational> elim(W.V.t(), W.Vt.t());
  return elim.q(mu);
}

std::vector<RawTerm<CRational>> q_raw(const std::vector<int>& mu, const Potential& V) {
  return V.is_polynomial() ? q_polynomial_raw(mu, V) : q_rational_raw(mu, V);
}

PowerSumPoly q_polynomial(const std::vector<int>& mu, const Potential& V, int nvars) {
  return PowerSumPoly::from_raw(nvars, q_polynomial_raw(mu, V));
}

PowerSumPoly q_rational(const std::vector<int>& mu, const Potential& V, int nvars) {
  return PowerSumPoly::from_raw(nvars, q_rational_raw(mu, V));
}

PowerSumPoly q_twomatrix(const std::vector<int>& mu, const TwoPotential& W, int nvars) {
  return PowerSumPoly::from_raw(nvars, q_twomatrix_raw(mu, W));
}

PowerSumPoly q_mu(const std::vector<int>& mu, const Potential& V, int nvars) {
  return PowerSumPoly::from_raw(nvars, q_raw(mu, V));
}

}  // namespace loopeq
