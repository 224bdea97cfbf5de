#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "loopeq/crational.hpp"
#include "loopeq/partition.hpp"

namespace loopeq {

// A product of power sums written as a raw tuple, where a 0 entry stands for
// p_0 = N. Loop-equation generators produce these before p_0 is folded away.
template <class Coeff>
struct RawTerm {
  Coeff coeff;
  std::vector<int> parts;
};

template <class Coeff>
using FoldedTerms = std::map<Partition, Coeff, GradedRevLex>;

// Folds every p_0 factor into the coefficient as `n_value` and merges like terms.
template <class Coeff>
FoldedTerms<Coeff> fold_p0(const std::vector<RawTerm<Coeff>>& raw, const Coeff& n_value) {
  FoldedTerms<Coeff> out;
  for (const auto& term : raw) {
    Coeff c = term.coeff;
    std::vector<int> positive;
    for (int p : term.parts) {
      if (p == 0) {
        c = c * n_value;
      } else {
        positive.push_back(p);
      }
    }
    if (c == Coeff{}) continue;
    Partition key(std::move(positive));
    auto [it, inserted] = out.try_emplace(key, c);
    if (!inserted) {
      it->second = it->second + c;
      if (it->second == Coeff{}) out.erase(it);
    }
  }
  return out;
}

// Finite combination of p_mu with exact Gaussian-rational coefficients, viewed
// as a symmetric function of `nvars` variables. No zero coefficients are stored.
class PowerSumPoly {
 public:
  using Terms = std::map<Partition, CRational, GradedRevLex>;

  explicit PowerSumPoly(int nvars);
  PowerSumPoly(int nvars, Terms terms);

  static PowerSumPoly constant(int nvars, const CRational& c);
  static PowerSumPoly power_sum(int nvars, const Partition& mu, const CRational& c = CRational(1));
  // p_0 factors become the scalar nvars.
  static PowerSumPoly from_raw(int nvars, const std::vector<RawTerm<CRational>>& raw);

  int nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  CRational coefficient(const Partition& mu) const;
  int max_length() const;
  int max_weight() const;
  bool is_homogeneous() const;

  void add_term(const Partition& mu, const CRational& c);

  PowerSumPoly& operator+=(const PowerSumPoly& o);
  PowerSumPoly& operator-=(const PowerSumPoly& o);
  PowerSumPoly& operator*=(const CRational& c);
  friend PowerSumPoly operator+(PowerSumPoly a, const PowerSumPoly& b) { return a += b; }
  friend PowerSumPoly operator-(PowerSumPoly a, const PowerSumPoly& b) { return a -= b; }
  friend PowerSumPoly operator*(PowerSumPoly a, const CRational& c) { return a *= c; }
  friend PowerSumPoly operator*(const PowerSumPoly& a, const PowerSumPoly& b);
  friend bool operator==(const PowerSumPoly& a, const PowerSumPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  // e.g. "p(2) - 4*p()" style listing, for logs and test messages.
  std::string to_string() const;

 private:
  int nvars_;
  Terms terms_;
};

// Rewrites p in the basis {p_mu : length(mu) <= n}, valid as a function of n
// variables. Goes through the monomial symmetric basis truncated to n
// variables; weight-homogeneous components stay homogeneous.
PowerSumPoly reduce_length(const PowerSumPoly& p, int n);

// Exact value of p at the eigenvalue tuple. Throws std::invalid_argument when
// points.size() != p.nvars().
CRational eval_powersum(const PowerSumPoly& p, std::span<const CRational> points);

}  // namespace loopeq
