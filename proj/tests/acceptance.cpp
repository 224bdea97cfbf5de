// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Quantities and tolerances are fixed here; nothing is tuned to the outcome.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "loopeq/contours.hpp"
#include "loopeq/discrim.hpp"
#include "loopeq/loopgen.hpp"
#include "loopeq/momsolve.hpp"
#include "loopeq/quad.hpp"
#include "loopeq/wick.hpp"

using namespace loopeq;

namespace {

constexpr double kPi = std::numbers::pi;

Potential poly(std::vector<CRational> t) { return Potential::polynomial(std::move(t)); }
Potential cubic() { return poly({1, 0, 1}); }       // x^3/3 + x
Potential quartic() { return poly({0, 1, 0, 1}); }  // x^4/4 + x^2/2
Potential gauss() { return poly({0, 1}); }

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// Relative residual of every loop equation with |mu| <= w, expectations from quadrature on G.
double quadrature_residual(const HomologyClass& G, const Potential& V, int w, int extra_k) {
  const auto need = needed_partitions(V, G.N, w);
  int K = 0;
  for (const auto& p : need) K = std::max(K, p.weight());
  const auto T = moment_table(G.arcs, V, K + 2 * (G.N - 1) + extra_k);
  Oracle oracle;
  for (const auto& nu : need) {
    const auto e = expectation(G, PowerSumPoly::power_sum(G.N, nu), T);
    oracle[nu] = {e.value, e.scale};
  }
  return residuals(oracle, V, G.N, w).max_relative;
}

Outcome criterion1() {
  struct Case {
    int N, d;
    Potential V;
    std::size_t size;
  };
  const std::vector<Case> cases{{1, 2, cubic(), 2}, {2, 2, cubic(), 3}, {2, 3, quartic(), 6}, {3, 2, cubic(), 4}};
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto m = moment_matrix(c.V, c.N);
    const double dt = seconds_since(t0);
    const bool square = m.rows.size() == c.size && m.cols.size() == c.size;
    const bool good = square && c.size == binomial(c.N + c.d - 1, c.N) && m.min_scaled_singular_value() > 1e-8 && dt < 60;
    ok = ok && good;
    detail += " (N,d)=(" + std::to_string(c.N) + "," + std::to_string(c.d) + ") size " + std::to_string(m.rows.size()) +
              " smin " + fmt("%.3g", m.min_scaled_singular_value()) + " " + fmt("%.2fs", dt) + ";";
  }
  return {ok, detail};
}

Outcome criterion2() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto V = quartic();
  // R = gamma_1 + gamma_2 for this potential.
  const auto G = power_class(basis_arcs(V), {CRational(1), CRational(1), CRational(0)}, 2);
  const double r = quadrature_residual(G, V, 6, 0);
  const double dt = seconds_since(t0);
  return {r < 1e-8 && dt < 30, " max relative residual " + fmt("%.3g", r) + " " + fmt("%.2fs", dt)};
}

Outcome criterion3() {
  const auto V = gauss();
  const auto G = power_class(basis_arcs(V), {CRational(1)}, 2);
  const auto Z = expectation(G, PowerSumPoly::constant(2, 1), V);
  const auto E2 = expectation(G, PowerSumPoly::power_sum(2, Partition{2}), V);
  const double dz = std::abs(Z.value - 4 * kPi);
  const double de = std::abs(E2.value / Z.value - 4.0);
  const NPoly n = NPoly::variable(kVarN);
  const NPoly expected = n * n * n * CRational(2) + n;
  const NPoly got = gaussian_trace_moment({4});
  const bool at_one = got.evaluate({CRational(1)}) == CRational(3);
  const bool ok = dz < 1e-10 && de < 1e-10 && got == expected && at_one;
  return {ok, " |Z-4pi| " + fmt("%.2g", dz) + " |E(p2)/Z-4| " + fmt("%.2g", de) + " <Tr M^4> = " + got.to_string({"N"})};
}

Outcome criterion4() {
  const auto t0 = std::chrono::steady_clock::now();
  int zero = 0, total = 0;
  for (int k : {3, 4}) {
    MapModel m;
    m.weights[k] = LaurentPoly::variable(k);
    for (const auto& mu : loop_indices(4)) {
      ++total;
      if (tutte_residual(m, mu, 4).is_zero()) ++zero;
    }
  }
  const double dt = seconds_since(t0);
  return {zero == total && total > 0 && dt < 120,
          " " + std::to_string(zero) + "/" + std::to_string(total) + " residual series identically zero " + fmt("%.2fs", dt)};
}

Outcome criterion5() {
  const auto haar = Potential::rational({CRational(2)}, {CRational(0), CRational(1)});
  const int N = 2;
  const auto G = power_class(basis_arcs(haar), {CRational(1)}, N);
  const double r = quadrature_residual(G, haar, 4, 2);
  const auto T = moment_table(G.arcs, haar, 6);
  const auto Z = expectation(G, PowerSumPoly::constant(N, 1), T);
  double worst = 0;
  for (int k = 1; k <= 2; ++k) {
    worst = std::max(worst, std::abs(expectation(G, PowerSumPoly::power_sum(N, Partition{k}), T).value / Z.value));
  }
  const int dim = hn_dimension(N, static_cast<int>(basis_arcs(haar).size()));
  return {r < 1e-10 && worst < 1e-10 && dim == 1,
          " residual " + fmt("%.2g", r) + " max |E(p_k)/Z| " + fmt("%.2g", worst) + " hn_dimension " + std::to_string(dim)};
}

Outcome criterion6() {
  const auto V = cubic();
  const int N = 2;
  const auto arcs = basis_arcs(V);
  const auto G = single_class(arcs, {2, 0});
  const auto T = moment_table(arcs, V, 8 + 2 * (N - 1));
  MomentFunctional<cplx> F{N, V.d(), {}};
  for (const auto& nu : partitions_in_box(N, V.d() - 1)) F.basis_values[nu] = expectation(G, PowerSumPoly::power_sum(N, nu), T).value;
  const auto targets = partitions_up_to(8, 8);
  const auto solved = solve_moments(F, V, targets);
  double worst = 0;
  for (const auto& mu : targets) {
    // p_mu restricted to two variables; keeps the direct integral under the length cap
    const auto e = expectation(G, reduce_length(PowerSumPoly::power_sum(N, mu), N), T);
    worst = std::max(worst, std::abs(solved.at(mu) - e.value) / std::abs(e.value));
  }
  return {worst < 1e-6, " " + std::to_string(targets.size()) + " moments, max relative deviation " + fmt("%.3g", worst)};
}

Outcome criterion7() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<double> devs;
  std::size_t pairs = 0;
  for (int r : {25, 60, 100}) {
    const auto rep = discriminator_report(cubic(), r, 1);
    double worst = 0;
    pairs = 0;
    for (const auto& n : rep.J_max) {
      for (const auto& m : rep.J_max) {
        worst = std::max(worst, std::abs(rep.at(n, m).ratio - (n == m ? 1.0 : 0.0)));
        ++pairs;
      }
    }
    devs.push_back(worst);
  }
  const bool trend = devs[1] <= devs[0] + 0.1 && devs[2] <= devs[1] + 0.1;
  const double dt = seconds_since(t0);
  return {devs[1] < 0.2 && trend && pairs == 4 && dt < 60,
          " r=60: " + std::to_string(pairs) + " pairs, max |ratio-delta| " + fmt("%.3g", devs[1]) + "; r=25/60/100: " +
              fmt("%.3g", devs[0]) + "/" + fmt("%.3g", devs[1]) + "/" + fmt("%.3g", devs[2])};
}

Outcome criterion8() {
  const auto t0 = std::chrono::steady_clock::now();
  int ok = 0, total = 0;
  for (auto [d, dt] : std::vector<std::pair<int, int>>{{1, 2}, {2, 1}, {2, 2}}) {
    std::vector<LaurentPoly> t, tt;
    for (int k = 0; k <= d; ++k) t.push_back(LaurentPoly::variable(k));
    for (int k = 0; k <= dt; ++k) tt.push_back(LaurentPoly::variable(d + 1 + k));
    const LaurentPoly n_sym = LaurentPoly::variable(d + dt + 2);
    LaurentPoly expected = tt.back();
    for (int i = 0; i < dt; ++i) expected *= t.back();
    for (int m1 = 0; m1 <= 2; ++m1) {
      ++total;
      TwoMatrixEliminator<LaurentPoly> elim(t, tt);
      const auto folded = fold_p0(elim.q({m1, 1}), n_sym);
      const Partition top{m1 + d * dt, 1};
      if (folded.count(top) && folded.at(top) == expected) ++ok;
    }
  }
  const double secs = seconds_since(t0);
  return {ok == total && secs < 10, " " + std::to_string(ok) + "/" + std::to_string(total) + " leading coefficients exact " + fmt("%.2fs", secs)};
}

bool same_moments(const ContourIntegral& a, const ContourIntegral& b) {
  for (std::size_t k = 0; k < a.value.size(); ++k) {
    if (std::abs(a.value[k] - b.value[k]) > a.err[k] + b.err[k] + 1e-12 * (a.scale[k] + b.scale[k])) return false;
  }
  return true;
}

Outcome criterion9() {
  std::mt19937 rng(20261018);
  // reduce_length at random rational points
  int exact = 0;
  std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
  std::uniform_int_distribution<int> nvars(1, 4), len(0, 6), part(1, 4);
  auto q = [&] { return CRational(mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng))); };
  for (int i = 0; i < 500; ++i) {
    const int n = nvars(rng);
    std::vector<int> parts;
    int budget = 10;
    for (int l = len(rng); l > 0 && budget > 0; --l) {
      parts.push_back(std::min(part(rng), budget));
      budget -= parts.back();
    }
    const auto p = PowerSumPoly::power_sum(n, Partition(parts));
    const auto r = reduce_length(p, n);
    std::vector<CRational> pts;
    for (int k = 0; k < n; ++k) pts.push_back(q());
    if (r.max_length() <= n && eval_powersum(r, pts) == eval_powersum(p, pts)) ++exact;
  }

  // deformation invariance: 10 deformations x moments k = 0..4
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto V = cubic();
  const auto arcs = basis_arcs(V);
  const double hw = sectors(V)[0].half_width;
  int invariant = 0;
  for (int i = 0; i < 10; ++i) {
    const auto& arc = arcs[static_cast<std::size_t>(i) % arcs.size()];
    const Bump b{cplx(0.5 * u(rng), 0.5 * u(rng)), 1.0, 0.6 * hw * u(rng)};
    if (same_moments(arc_moments(arc, V, 4), arc_moments(deform(arc, b, V), V, 4))) ++invariant;
  }

  // linearity in the class and symmetry under reordering the variables
  const auto T = moment_table(arcs, V, 10);
  std::uniform_int_distribution<long> c5(-5, 5);
  std::uniform_int_distribution<int> nd(1, 3), p3(1, 3), l2(0, 2);
  int linear = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int N = nd(rng);
    std::vector<int> parts;
    for (int l = l2(rng); l > 0; --l) parts.push_back(p3(rng));
    const auto comps = compositions(N, 2);
    const auto& n1 = comps[static_cast<std::size_t>(trial) % comps.size()];
    const auto& n2 = comps[static_cast<std::size_t>(trial / 3) % comps.size()];
    const CRational a(c5(rng), c5(rng)), b(c5(rng), c5(rng));
    HomologyClass G;
    G.N = N;
    G.arcs = arcs;
    G.terms[n1] = a;
    G.terms[n2] = G.terms.count(n2) ? G.terms[n2] + b : b;
    const auto p = PowerSumPoly::power_sum(N, Partition(parts));
    const auto e = expectation(G, p, T), e1 = expectation(single_class(arcs, n1), p, T),
               e2 = expectation(single_class(arcs, n2), p, T);
    const bool lin = std::abs(e.value - (a.to_complex() * e1.value + b.to_complex() * e2.value)) <=
                     e.err + a.abs() * e1.err + b.abs() * e2.err + 1e-14 * e.scale;
    std::vector<int> word;
    for (std::size_t j = 0; j < n1.size(); ++j) word.insert(word.end(), static_cast<std::size_t>(n1[j]), static_cast<int>(j));
    const auto w0 = word_integral(word, Partition(parts), T);
    std::shuffle(word.begin(), word.end(), rng);
    const auto w1 = word_integral(word, Partition(parts), T);
    const bool sym = std::abs(w0.value - w1.value) <= w0.err + w1.err + 1e-14 * w0.scale;
    if (lin && sym) ++linear;
  }
  return {exact == 500 && invariant == 10 && linear == 50,
          " reduce_length " + std::to_string(exact) + "/500, deformation " + std::to_string(invariant) +
              "/10, linearity+symmetry " + std::to_string(linear) + "/50"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"1 dimension witness", criterion1}, {"2 quadrature loop residuals", criterion2},
      {"3 Gaussian anchors", criterion3},  {"4 Tutte equals loop equations", criterion4},
      {"5 Haar on the circle", criterion5}, {"6 reduction round trip", criterion6},
      {"7 discriminator", criterion7},      {"8 two-matrix leading term", criterion8},
      {"9 property suites", criterion9}};
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o{false, ""};
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string(" exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s criterion %s:%s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
