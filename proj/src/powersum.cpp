#include "loopeq/powersum.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace loopeq {

PowerSumPoly::PowerSumPoly(int nvars) : nvars_(nvars) {
  if (nvars < 1) throw std::invalid_argument("PowerSumPoly: nvars must be >= 1");
}

PowerSumPoly::PowerSumPoly(int nvars, Terms terms) : PowerSumPoly(nvars) {
  for (auto& [mu, c] : terms) add_term(mu, c);
}

PowerSumPoly PowerSumPoly::constant(int nvars, const CRational& c) {
  PowerSumPoly p(nvars);
  p.add_term(Partition{}, c);
  return p;
}

PowerSumPoly PowerSumPoly::power_sum(int nvars, const Partition& mu, const CRational& c) {
  PowerSumPoly p(nvars);
  p.add_term(mu, c);
  return p;
}

PowerSumPoly PowerSumPoly::from_raw(int nvars, const std::vector<RawTerm<CRational>>& raw) {
  PowerSumPoly p(nvars);
  for (auto& [mu, c] : fold_p0(raw, CRational(nvars))) p.add_term(mu, c);
  return p;
}

CRational PowerSumPoly::coefficient(const Partition& mu) const {
  auto it = terms_.find(mu);
  return it == terms_.end() ? CRational(0) : it->second;
}

int PowerSumPoly::max_length() const {
  int m = 0;
  for (const auto& [mu, c] : terms_) m = std::max(m, mu.length());
  return m;
}

int PowerSumPoly::max_weight() const {
  int m = 0;
  for (const auto& [mu, c] : terms_) m = std::max(m, mu.weight());
  return m;
}

bool PowerSumPoly::is_homogeneous() const {
  std::set<int> weights;
  for (const auto& [mu, c] : terms_) weights.insert(mu.weight());
  return weights.size() <= 1;
}

void PowerSumPoly::add_term(const Partition& mu, const CRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(mu, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

PowerSumPoly& PowerSumPoly::operator+=(const PowerSumPoly& o) {
  for (const auto& [mu, c] : o.terms_) add_term(mu, c);
  return *this;
}

PowerSumPoly& PowerSumPoly::operator-=(const PowerSumPoly& o) {
  for (const auto& [mu, c] : o.terms_) add_term(mu, -c);
  return *this;
}

PowerSumPoly& PowerSumPoly::operator*=(const CRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [mu, v] : terms_) v *= c;
  return *this;
}

PowerSumPoly operator*(const PowerSumPoly& a, const PowerSumPoly& b) {
  PowerSumPoly out(a.nvars_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma.joined(mb), ca * cb);
  }
  return out;
}

std::string PowerSumPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mu, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c << ")*p" << mu.to_string();
  }
  return os.str();
}

namespace {

using MonomialExpansion = std::map<Partition, mpz_class, GradedRevLex>;

// Coefficient of m_target in p_k * m_base: number of positions i of target
// with target - k*e_i equal to base as a multiset (zeros dropped).
mpz_class multiply_coefficient(const Partition& base, const Partition& target, int k) {
  mpz_class count = 0;
  const auto& t = target.parts();
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < k) continue;
    std::vector<int> rest;
    rest.reserve(t.size());
    for (std::size_t j = 0; j < t.size(); ++j) {
      const int v = j == i ? t[j] - k : t[j];
      if (v > 0) rest.push_back(v);
    }
    if (Partition(std::move(rest)) == base) ++count;
  }
  return count;
}

// p_mu expanded in monomial symmetric functions m_lambda, keeping only
// lambda with at most max_length parts. Length never decreases under
// multiplication by p_k, so truncating early is exact.
MonomialExpansion power_to_monomial(const Partition& mu, int max_length) {
  MonomialExpansion cur;
  cur.emplace(Partition{}, 1);
  for (int k : mu.parts()) {
    MonomialExpansion next;
    for (const auto& [lambda, c] : cur) {
      std::set<Partition, GradedRevLex> targets;
      if (lambda.length() + 1 <= max_length) targets.insert(lambda.with_part(k));
      const auto& parts = lambda.parts();
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0 && parts[i] == parts[i - 1]) continue;
        std::vector<int> bumped = parts;
        bumped[i] += k;
        targets.insert(Partition(std::move(bumped)));
      }
      for (const auto& target : targets) {
        const mpz_class m = multiply_coefficient(lambda, target, k);
        if (m != 0) next[target] += c * m;
      }
    }
    cur = std::move(next);
  }
  return cur;
}

class MonomialToPower {
 public:
  explicit MonomialToPower(int nvars) : nvars_(nvars) {}

  // m_lambda in the power-sum basis. Every partition in the result is a
  // coarsening of lambda, so its length is at most length(lambda).
  const PowerSumPoly& convert(const Partition& lambda) {
    auto it = memo_.find(lambda);
    if (it != memo_.end()) return it->second;
    const MonomialExpansion expansion = power_to_monomial(lambda, lambda.length());
    PowerSumPoly result = PowerSumPoly::power_sum(nvars_, lambda);
    mpz_class diagonal = 0;
    for (const auto& [target, c] : expansion) {
      if (target == lambda) {
        diagonal = c;
        continue;
      }
      result -= convert(target) * CRational(mpq_class(c));
    }
    result *= CRational(1) / CRational(mpq_class(diagonal));
    return memo_.emplace(lambda, std::move(result)).first->second;
  }

 private:
  int nvars_;
  std::map<Partition, PowerSumPoly, GradedRevLex> memo_;
};

}  // namespace

PowerSumPoly reduce_length(const PowerSumPoly& p, int n) {
  if (n < 1) throw std::invalid_argument("reduce_length: n must be >= 1");
  PowerSumPoly out(n);
  MonomialToPower back(n);
  for (const auto& [mu, c] : p.terms()) {
    if (mu.length() <= n) {
      out.add_term(mu, c);
      continue;
    }
    for (const auto& [lambda, m] : power_to_monomial(mu, n)) {
      out += back.convert(lambda) * (c * CRational(mpq_class(m)));
    }
  }
  return out;
}

CRational eval_powersum(const PowerSumPoly& p, std::span<const CRational> points) {
  if (static_cast<int>(points.size()) != p.nvars()) {
    throw std::invalid_argument("eval_powersum: expected " + std::to_string(p.nvars()) +
                                " points, got " + std::to_string(points.size()));
  }
  std::map<int, CRational> sums;
  auto power_sum = [&](int k) -> const CRational& {
    auto it = sums.find(k);
    if (it != sums.end()) return it->second;
    CRational s(0);
    for (const auto& x : points) s += x.pow(static_cast<unsigned>(k));
    return sums.emplace(k, std::move(s)).first->second;
  };
  CRational total(0);
  for (const auto& [mu, c] : p.terms()) {
    CRational term = c;
    for (int k : mu.parts()) term *= power_sum(k);
    total += term;
  }
  return total;
}

}  // namespace loopeq
