#include "loopeq/momsolve.hpp"

#include <algorithm>
#include <set>

#include "loopeq/loopgen.hpp"

namespace loopeq {

int hn_dimension(int N, int d) {
  if (N < 1 || d < 1) throw std::invalid_argument("hn_dimension needs N, d >= 1");
  return static_cast<int>(binomial(N + d - 1, N));
}

namespace {

// Leading coefficient of Q in its highest power sum; requires the loop
// equations to be triangular in weight.
CRational leading_coefficient(const Potential& V) {
  if (V.is_polynomial()) return V.t().back();
  if (degree(V.R()) <= degree(V.D())) {
    throw std::invalid_argument("moment reduction needs deg R > deg D for rational V' = R/D");
  }
  return V.R().back();
}

}  // namespace

Reducer::Reducer(const Potential& V, int N, EliminationOrder order)
    : V_(V), N_(N), d_(V.d()), order_(order), lead_inv_(CRational(1) / leading_coefficient(V)) {
  if (N < 1) throw std::invalid_argument("Reducer: N must be >= 1");
}

const PowerSumPoly& Reducer::reduce(const Partition& mu) {
  if (auto it = memo_.find(mu); it != memo_.end()) return it->second;
  PowerSumPoly result(N_);
  if (mu.length() > N_) {
    const PowerSumPoly shorter = reduce_length(PowerSumPoly::power_sum(N_, mu), N_);
    for (const auto& [nu, c] : shorter.terms()) {
      result += reduce(nu) * c;
    }
  } else {
    const auto& parts = mu.parts();
    std::ptrdiff_t pick = -1;
    if (!parts.empty() && parts.front() >= d_) {
      if (order_ == EliminationOrder::largest_part) {
        pick = 0;
      } else {
        pick = std::find_if(parts.rbegin(), parts.rend(), [&](int p) { return p >= d_; }).base() - parts.begin() - 1;
      }
    }
    if (pick < 0) {
      result.add_term(mu, CRational(1));
    } else {
      std::vector<int> index{parts[static_cast<std::size_t>(pick)] - d_};
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (static_cast<std::ptrdiff_t>(i) != pick) index.push_back(parts[i]);
      }
      const PowerSumPoly q = q_mu(index, V_, N_);
      if (!(q.coefficient(mu) * lead_inv_ == CRational(1))) {
        throw std::logic_error("loop equation leading term mismatch at " + mu.to_string());
      }
      for (const auto& [nu, c] : q.terms()) {
        if (nu == mu) continue;
        result -= reduce(nu) * (c * lead_inv_);
      }
    }
  }
  double row = 0.0;
  for (const auto& [nu, c] : result.terms()) row += c.abs();
  growth_ = std::max(growth_, row);
  return memo_.emplace(mu, std::move(result)).first->second;
}

PowerSumPoly Reducer::reduce(const PowerSumPoly& p) {
  PowerSumPoly out(N_);
  for (const auto& [mu, c] : p.terms()) out += reduce(mu) * c;
  return out;
}

void check_functional_shape(int N, int d, const std::vector<Partition>& keys, const Potential& V) {
  if (d != V.d()) {
    throw std::invalid_argument("functional has d=" + std::to_string(d) + " but the potential has d=" +
                                std::to_string(V.d()));
  }
  const auto box = partitions_in_box(N, d - 1);
  if (keys.size() != box.size() || !std::equal(keys.begin(), keys.end(), box.begin())) {
    throw std::invalid_argument("functional basis values must be keyed exactly by A_{N,d}");
  }
}

namespace {

std::string list_partitions(const std::vector<Partition>& ps) {
  std::string s;
  for (const auto& p : ps) s += (s.empty() ? "" : " ") + p.to_string();
  return s;
}

}  // namespace

MissingMoments::MissingMoments(std::vector<Partition> missing)
    : std::runtime_error("oracle is missing moments for partitions: " + list_partitions(missing)),
      missing_(std::move(missing)) {}

std::vector<std::vector<int>> loop_indices(int weight_max) {
  std::vector<std::vector<int>> out;
  for (int w = 0; w <= weight_max; ++w) {
    for (int m1 = w; m1 >= 0; --m1) {
      for (const auto& rest : partitions_of(w - m1, w - m1)) {
        std::vector<int> mu{m1};
        mu.insert(mu.end(), rest.parts().begin(), rest.parts().end());
        out.push_back(std::move(mu));
      }
    }
  }
  return out;
}

std::vector<Partition> needed_partitions(const Potential& V, int N, int weight_max) {
  std::set<Partition, GradedRevLex> need;
  for (const auto& mu : loop_indices(weight_max)) {
    const PowerSumPoly q = reduce_length(q_mu(mu, V, N), N);
    for (const auto& [nu, c] : q.terms()) need.insert(nu);
  }
  return {need.begin(), need.end()};
}

ResidualReport residuals(const Oracle& oracle, const Potential& V, int N, int weight_max) {
  ResidualReport report;
  std::set<Partition, GradedRevLex> missing;
  for (const auto& mu : loop_indices(weight_max)) {
    const PowerSumPoly q = reduce_length(q_mu(mu, V, N), N);
    ResidualEntry e;
    e.mu = mu;
    for (const auto& [nu, c] : q.terms()) {
      auto it = oracle.find(nu);
      if (it == oracle.end()) {
        missing.insert(nu);
        continue;
      }
      e.value += c.to_complex() * it->second.value;
      e.denominator += c.abs() * std::max(it->second.scale, std::abs(it->second.value));
    }
    e.relative = std::abs(e.value) == 0.0 ? 0.0 : std::abs(e.value) / e.denominator;
    if (e.relative > report.max_relative || report.worst_mu.empty()) {
      report.max_relative = std::max(report.max_relative, e.relative);
      report.worst_mu = mu;
    }
    report.entries.push_back(std::move(e));
  }
  if (!missing.empty()) throw MissingMoments({missing.begin(), missing.end()});
  return report;
}

namespace {

int exact_rank(std::vector<std::vector<CRational>> rows, std::size_t cols) {
  int rank = 0;
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    std::size_t pivot = static_cast<std::size_t>(rank);
    while (pivot < rows.size() && rows[pivot][c].is_zero()) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[static_cast<std::size_t>(rank)]);
    const auto& prow = rows[static_cast<std::size_t>(rank)];
    const CRational inv = CRational(1) / prow[c];
    for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < rows.size(); ++r) {
      if (rows[r][c].is_zero()) continue;
      const CRational f = rows[r][c] * inv;
      for (std::size_t k = c; k < cols; ++k) {
        if (!prow[k].is_zero()) rows[r][k] -= f * prow[k];
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace

DimensionWitness solution_space_dimension(const Potential& V, int N, int weight_max) {
  // Q_mu has weight at most |mu| + max(deg R, deg D - 1).
  const int shift = std::max(degree(V.R()), degree(V.D()) - 1);
  const auto unknowns = partitions_up_to(weight_max + shift, N);
  std::map<Partition, std::size_t, GradedRevLex> column;
  for (std::size_t i = 0; i < unknowns.size(); ++i) column[unknowns[i]] = i;
  std::vector<std::vector<CRational>> rows;
  for (const auto& mu : loop_indices(weight_max)) {
    std::vector<CRational> row(unknowns.size());
    const PowerSumPoly q = reduce_length(q_mu(mu, V, N), N);
    for (const auto& [nu, c] : q.terms()) row[column.at(nu)] = c;
    rows.push_back(std::move(row));
  }
  DimensionWitness w;
  w.unknowns = static_cast<int>(unknowns.size());
  w.equations = static_cast<int>(rows.size());
  w.rank = exact_rank(std::move(rows), unknowns.size());
  w.nullity = w.unknowns - w.rank;
  return w;
}

}  // namespace loopeq
