#include "loopeq/wick.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "loopeq/loopgen.hpp"

namespace loopeq {

std::vector<std::string> map_variable_names(int max_degree) {
  std::vector<std::string> names{"N", "t", "t2"};
  for (int k = 3; k <= std::max(3, max_degree); ++k) names.push_back("t" + std::to_string(k));
  return names;
}

namespace detail {

namespace {

// Half-edges of trace i are consecutive; next[h] walks around its trace.
struct Pairing {
  std::vector<int> next, match;
  std::vector<long long> loops;  // loops[c] = number of matchings with c index cycles

  int cycles() const {
    const std::size_t n = next.size();
    std::vector<char> seen(n, 0);
    int c = 0;
    for (std::size_t h = 0; h < n; ++h) {
      if (seen[h]) continue;
      ++c;
      for (std::size_t x = h; !seen[x]; x = static_cast<std::size_t>(next[static_cast<std::size_t>(match[x])])) seen[x] = 1;
    }
    return c;
  }

  void run() {
    const auto it = std::find(match.begin(), match.end(), -1);
    if (it == match.end()) {
      const int c = cycles();
      if (static_cast<int>(loops.size()) <= c) loops.resize(static_cast<std::size_t>(c) + 1, 0);
      ++loops[static_cast<std::size_t>(c)];
      return;
    }
    const int a = static_cast<int>(it - match.begin());
    for (std::size_t b = static_cast<std::size_t>(a) + 1; b < match.size(); ++b) {
      if (match[b] != -1) continue;
      match[static_cast<std::size_t>(a)] = static_cast<int>(b);
      match[b] = a;
      run();
      match[b] = -1;
    }
    match[static_cast<std::size_t>(a)] = -1;
  }
};

}  // namespace

NPoly wick_enumerate(const std::vector<int>& powers) {
  int total = 0;
  for (int k : powers) {
    if (k < 1) throw std::invalid_argument("gaussian_trace_moment: trace powers must be >= 1");
    total += k;
  }
  if (total % 2) return {};
  if (total > kMaxHalfEdges) {
    throw std::invalid_argument("gaussian_trace_moment: " + std::to_string(total) + " half-edges exceeds the cap of " +
                                std::to_string(kMaxHalfEdges));
  }
  Pairing p;
  p.next.resize(static_cast<std::size_t>(total));
  p.match.assign(static_cast<std::size_t>(total), -1);
  int start = 0;
  for (int k : powers) {
    for (int j = 0; j < k; ++j) p.next[static_cast<std::size_t>(start + j)] = start + (j + 1) % k;
    start += k;
  }
  p.run();
  NPoly out;
  for (std::size_t c = 0; c < p.loops.size(); ++c) {
    if (p.loops[c]) out += NPoly::variable(kVarN, static_cast<int>(c)) * CRational(p.loops[c]);
  }
  return out;
}

}  // namespace detail

NPoly gaussian_trace_moment(const std::vector<int>& powers) {
  static std::mutex mu;
  static std::map<std::vector<int>, NPoly> memo;
  std::vector<int> key = powers;
  std::sort(key.begin(), key.end());
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  NPoly v = detail::wick_enumerate(key);
  std::lock_guard<std::mutex> lock(mu);
  return memo.emplace(std::move(key), std::move(v)).first->second;
}

MapModel MapModel::symbolic(const std::vector<int>& degrees) {
  MapModel m;
  for (int k : degrees) {
    if (k < 3) throw std::invalid_argument("map model vertex degrees must be >= 3");
    m.weights[k] = LaurentPoly::variable(k);
  }
  return m;
}

MapModel MapModel::numeric(const std::map<int, CRational>& values) {
  MapModel m;
  for (const auto& [k, v] : values) {
    if (k < 3) throw std::invalid_argument("map model vertex degrees must be >= 3");
    if (!v.is_zero()) m.weights[k] = LaurentPoly(v);
  }
  return m;
}

int MapModel::max_degree() const { return weights.empty() ? 2 : weights.rbegin()->first; }

std::vector<LaurentPoly> MapModel::dV_coefficients() const {
  // V'(x) = N x / t - N sum_k t_k x^{k-1}
  std::vector<LaurentPoly> c(static_cast<std::size_t>(max_degree()));
  const LaurentPoly N = LaurentPoly::variable(kVarN);
  c[1] = N * LaurentPoly::variable(kVarT, -1);
  for (const auto& [k, w] : weights) c[static_cast<std::size_t>(k - 1)] = -(N * w);
  return c;
}

bool MapSeries::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

std::string MapSeries::to_string(const std::vector<std::string>& names) const {
  std::ostringstream os;
  for (const auto& [e, c] : coeffs) os << "t^" << e << ": " << c.to_string(names) << "\n";
  return os.str();
}

namespace {

// sum over vertex multisets {n_k}: prod (N w_k / k)^{n_k} / n_k! * N^{-e} * W(nu u k^{n_k}),
// filed under e = (|nu| + sum k n_k) / 2.
std::map<int, LaurentPoly> expand(const MapModel& model, const std::vector<int>& marked, int order) {
  if (2 * order > kMaxHalfEdges) {
    throw std::invalid_argument("map series order " + std::to_string(order) + " exceeds the half-edge cap of " +
                                std::to_string(kMaxHalfEdges));
  }
  const int s = std::accumulate(marked.begin(), marked.end(), 0);
  std::vector<std::pair<int, LaurentPoly>> verts(model.weights.begin(), model.weights.end());
  std::map<int, LaurentPoly> out;
  const LaurentPoly N = LaurentPoly::variable(kVarN);
  std::vector<int> traces = marked;
  std::function<void(std::size_t, int, LaurentPoly)> rec = [&](std::size_t i, int half, LaurentPoly w) {
    if (i == verts.size()) {
      if (half % 2) return;
      const int e = half / 2;
      out[e] += w * LaurentPoly::variable(kVarN, -e) * gaussian_trace_moment(traces);
      return;
    }
    const auto& [k, tk] = verts[i];
    const LaurentPoly step = N * tk * (CRational(1) / CRational(k));
    const std::size_t depth = traces.size();
    LaurentPoly acc = w;
    for (int n = 0; half + n * k <= 2 * order; ++n) {
      if (n > 0) {
        acc *= step * (CRational(1) / CRational(n));
        traces.push_back(k);
      }
      rec(i + 1, half + n * k, acc);
    }
    traces.resize(depth);
  };
  if (s <= 2 * order) rec(0, s, LaurentPoly(1));
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace

MapSeries map_series(const MapModel& model, const std::vector<int>& marked, int e_max) {
  if (e_max < 0 || e_max > kMaxOrder) {
    throw std::invalid_argument("map_series: e_max = " + std::to_string(e_max) + " outside 0.." + std::to_string(kMaxOrder));
  }
  for (int k : marked) {
    if (k < 1) throw std::invalid_argument("map_series: marked face sizes must be >= 1");
  }
  return {marked, e_max, expand(model, marked, e_max)};
}

LaurentPoly map_generating_function(const MapModel& model, const Partition& nu, int order) {
  LaurentPoly out;
  for (const auto& [e, c] : expand(model, nu.parts(), order)) out += c * LaurentPoly::variable(kVarT, e);
  return out;
}

LaurentPoly evaluate_on_maps(const std::vector<RawTerm<LaurentPoly>>& raw, const MapModel& model, int e_max) {
  // Coefficients may carry t^{-1}, so the series is taken one order further.
  std::map<Partition, LaurentPoly, GradedRevLex> cache;
  LaurentPoly total;
  for (const auto& [nu, c] : fold_p0(raw, LaurentPoly::variable(kVarN))) {
    auto it = cache.find(nu);
    if (it == cache.end()) it = cache.emplace(nu, map_generating_function(model, nu, e_max + 1)).first;
    total += c * it->second;
  }
  return total.truncated(kVarT, e_max);
}

MapSeries tutte_residual(const MapModel& model, const std::vector<int>& mu, int e_max) {
  if (e_max < 0 || e_max > kMaxOrder) {
    throw std::invalid_argument("tutte_residual: e_max = " + std::to_string(e_max) + " outside 0.." +
                                std::to_string(kMaxOrder));
  }
  validate_loop_index(mu);
  // Lowest order in E(Q_mu) comes from (N/t) T_{mu_1+1, rest}.
  const int w = std::accumulate(mu.begin(), mu.end(), 0) + 1;
  const int first = (w + 1) / 2 - 1;
  if (first > e_max) {
    throw std::invalid_argument("tutte_residual: order shortfall, E(Q_mu) starts at t^" + std::to_string(first) +
                                " but e_max = " + std::to_string(e_max));
  }
  const auto raw = loop_terms_polynomial(mu, model.dV_coefficients());
  const LaurentPoly r = evaluate_on_maps(raw, model, e_max);
  MapSeries out;
  out.marked = mu;
  out.e_max = e_max;
  for (int e = first; e <= e_max; ++e) out.coeffs[e] = LaurentPoly();
  for (const auto& [exps, c] : r.terms()) {
    auto key = exps;
    const int e = LaurentPoly::exponent(exps, kVarT);
    if (static_cast<int>(key.size()) > kVarT) key[kVarT] = 0;
    out.coeffs[e] += LaurentPoly::monomial(c, key);
  }
  return out;
}

}  // namespace loopeq
