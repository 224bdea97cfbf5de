#include "loopeq/discrim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "loopeq/quad.hpp"
#include "loopeq/upoly.hpp"

namespace loopeq {

namespace {

constexpr double kPi = std::numbers::pi;

// Argument in [0, 2 pi); roots on the positive axis with a rounding-level
// negative imaginary part still sort first.
double arg0(cplx z) {
  const double a = std::arg(z);
  if (std::abs(a) < 1e-9) return 0.0;
  return a < 0 ? a + 2 * kPi : a;
}

void check_sizes(const Potential& V, int N) {
  if (!V.is_polynomial()) throw std::invalid_argument("discriminator: polynomial potentials only");
  if (V.d() > 3) throw std::invalid_argument("discriminator: deg V' <= 3 required, got " + std::to_string(V.d()));
  if (N < 1 || N > 2) throw std::invalid_argument("discriminator: N must be 1 or 2, got " + std::to_string(N));
}

// Word (arc of each variable) for a composition.
std::vector<int> word_of(const Composition& n) {
  std::vector<int> w;
  for (std::size_t j = 0; j < n.size(); ++j) w.insert(w.end(), static_cast<std::size_t>(n[j]), static_cast<int>(j));
  return w;
}

double log_factorial(int n) { return std::lgamma(n + 1.0); }

}  // namespace

SaddleSet saddle_points(const Potential& V, int r) {
  if (!V.is_polynomial()) throw std::invalid_argument("saddle_points: polynomial potentials only");
  if (r < 1) throw std::invalid_argument("saddle_points: r must be >= 1");
  // x V'(x) - r, low degree first
  const auto& t = V.t();
  std::vector<cplx> P(t.size() + 1, 0.0);
  P[0] = -static_cast<double>(r);
  for (std::size_t j = 0; j < t.size(); ++j) P[j + 1] = t[j].to_complex();
  CVec xi = polynomial_roots(P);
  auto f = [&](cplx x) { return eval(std::span<const cplx>(P), x); };
  std::vector<cplx> dP(P.size() - 1);
  for (std::size_t k = 1; k < P.size(); ++k) dP[k - 1] = static_cast<double>(k) * P[k];
  for (auto& x : xi) {
    for (int it = 0; it < 4; ++it) {
      const cplx d = eval(std::span<const cplx>(dP), x);
      if (d == 0.0) break;
      x -= f(x) / d;
    }
    if (std::abs(f(x)) >= 1e-9 * r) {
      throw std::runtime_error("saddle_points: root polish failed, residual " + std::to_string(std::abs(f(x))));
    }
  }
  std::sort(xi.begin(), xi.end(), [](cplx a, cplx b) { return arg0(a) < arg0(b); });
  SaddleSet S;
  S.r = r;
  S.xi.assign(xi.begin(), xi.end());
  double size = 1.0;
  for (auto x : xi) size = std::max(size, std::abs(x));
  for (std::size_t j = 0; j < xi.size(); ++j) {
    cplx q = 1.0;
    for (std::size_t k = 0; k < xi.size(); ++k) {
      if (k == j) continue;
      if (std::abs(xi[j] - xi[k]) < 1e-6 * size) {
        throw std::invalid_argument("saddle_points: saddles coincide at r = " + std::to_string(r) + "; use a larger r");
      }
      q *= xi[j] - xi[k];
    }
    S.Q_prime.push_back(q);
    S.Vr_values.push_back(V.V(xi[j]) - static_cast<double>(r) * std::log(xi[j]));
    S.Vr_second.push_back(V.d2V(xi[j]) + static_cast<double>(r) / (xi[j] * xi[j]));
    S.pole_assoc.push_back(0.0);
  }
  return S;
}

cplx LagrangeBasis::operator()(int j, cplx x) const {
  cplx v = 1.0;
  const cplx xj = nodes[static_cast<std::size_t>(j)];
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (static_cast<int>(k) != j) v *= (x - nodes[k]) / (xj - nodes[k]);
  }
  return v;
}

LagrangeBasis lagrange_f(const SaddleSet& S) { return {S.xi}; }

std::vector<Contour> discriminator_arcs(const SaddleSet& S) {
  std::vector<Contour> out;
  for (std::size_t j = 0; j < S.xi.size(); ++j) {
    Contour c;
    c.segments = {Segment::ray(0.0, std::arg(S.xi[j]), 1)};
    c.start = {Endpoint::Kind::point, -1, 0.0};
    c.end = {Endpoint::Kind::sector, static_cast<int>(j), 0.0};
    c.label = "xi" + std::to_string(j + 1);
    out.push_back(std::move(c));
  }
  return out;
}

cplx log_A(const SaddleSet& S, const Composition& n) {
  const std::size_t J = S.xi.size();
  if (n.size() != J) throw std::invalid_argument("log_A: composition length must equal the number of saddles");
  cplx a = 0.0;
  for (std::size_t i = 0; i < J; ++i) {
    for (std::size_t j = i + 1; j < J; ++j) a += 2.0 * n[i] * n[j] * std::log(S.xi[i] - S.xi[j]);
  }
  for (std::size_t j = 0; j < J; ++j) {
    const int nj = n[j];
    if (nj == 0) continue;
    cplx s = std::sqrt(S.Vr_second[j]);
    if ((s * std::polar(1.0, std::arg(S.xi[j]))).real() < 0) s = -s;
    double logC = 0.5 * nj * std::log(2 * kPi);
    for (int k = 1; k <= nj; ++k) logC += log_factorial(k);
    a += -static_cast<double>(nj) * S.Vr_values[j] - static_cast<double>(nj * nj) * std::log(s) + logC +
         static_cast<double>(nj) * std::log(S.Q_prime[j]);
  }
  return a;
}

const DiscriminatorEntry& DiscriminatorReport::at(const Composition& n, const Composition& m) const {
  for (const auto& e : entries) {
    if (e.n == n && e.m == m) return e;
  }
  throw std::invalid_argument("DiscriminatorReport: no such (n, m) pair");
}

namespace {

// g[a][j][k] = e^{V_r(xi_a)} int_{ray a} x^{r+k} f_j(x) e^{-V(x)} dx, k = 0..2(N-1).
struct RayTable {
  std::vector<std::vector<std::vector<cplx>>> g;
  std::vector<std::vector<std::vector<double>>> err;
};

RayTable ray_table(const Potential& V, const SaddleSet& S, int N, double tol) {
  const auto arcs = discriminator_arcs(S);
  const auto f = lagrange_f(S);
  const int J = f.size();
  const int K = 2 * (N - 1);
  const int M = J * (K + 1);
  RayTable T;
  for (int a = 0; a < J; ++a) {
    const cplx shift = S.Vr_values[static_cast<std::size_t>(a)];
    auto integrand = [&](cplx x, cplx* out) {
      if (x == 0.0) {
        std::fill(out, out + M, cplx(0.0));
        return;
      }
      const cplx base = std::exp(-V.V(x) + static_cast<double>(S.r) * std::log(x) + shift);
      for (int j = 0; j < J; ++j) {
        cplx v = base * f(j, x);
        for (int k = 0; k <= K; ++k) {
          out[j * (K + 1) + k] = v;
          v *= x;
        }
      }
    };
    QuadOptions opt;
    opt.tol = tol;
    opt.growth = S.r + K + J;
    ContourIntegral I;
    try {
      I = integrate(arcs[static_cast<std::size_t>(a)], V, M, integrand, opt);
    } catch (const QuadratureError& e) {
      throw QuadratureError("discriminator: ray through xi_" + std::to_string(a + 1) + " at r = " + std::to_string(S.r) +
                                ": " + e.what(),
                            e.achieved());
    }
    T.g.emplace_back(J, std::vector<cplx>(static_cast<std::size_t>(K + 1)));
    T.err.emplace_back(J, std::vector<double>(static_cast<std::size_t>(K + 1)));
    for (int j = 0; j < J; ++j) {
      for (int k = 0; k <= K; ++k) {
        T.g.back()[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = I.value[static_cast<std::size_t>(j * (K + 1) + k)];
        T.err.back()[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = I.err[static_cast<std::size_t>(j * (K + 1) + k)];
      }
    }
  }
  return T;
}

// e^{sum_a n_a V_r(xi_a)} E_{gamma^n}(p_{r,m}): Delta^2 = sum_{sigma,tau} sgn sgn prod x_i^{sigma(i)+tau(i)},
// and p_{r,m} averages prod_i x_i^r f_{s(i)}(x_i) over the distinct assignments s.
std::pair<cplx, double> scaled_expectation(const RayTable& T, const Composition& n, const Composition& m) {
  const auto w = word_of(n);
  const int N = static_cast<int>(w.size());
  std::vector<int> s = word_of(m);
  std::vector<std::vector<int>> assignments;
  do assignments.push_back(s);
  while (std::next_permutation(s.begin(), s.end()));
  std::vector<int> sigma(static_cast<std::size_t>(N));
  std::vector<std::pair<std::vector<int>, int>> perms;
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    int inv = 0;
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j) inv += sigma[static_cast<std::size_t>(i)] > sigma[static_cast<std::size_t>(j)];
    perms.emplace_back(sigma, inv % 2 ? -1 : 1);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  cplx total = 0.0;
  double err = 0.0;
  for (const auto& a : assignments) {
    for (const auto& [p, sp] : perms) {
      for (const auto& [q, sq] : perms) {
        cplx term = static_cast<double>(sp * sq);
        double mag = 1.0, bound = 1.0;
        for (int i = 0; i < N; ++i) {
          const auto arc = static_cast<std::size_t>(w[static_cast<std::size_t>(i)]);
          const auto j = static_cast<std::size_t>(a[static_cast<std::size_t>(i)]);
          const auto k = static_cast<std::size_t>(p[static_cast<std::size_t>(i)] + q[static_cast<std::size_t>(i)]);
          term *= T.g[arc][j][k];
          mag *= std::abs(T.g[arc][j][k]);
          bound *= std::abs(T.g[arc][j][k]) + T.err[arc][j][k];
        }
        total += term;
        err += bound - mag;
      }
    }
  }
  const double norm = static_cast<double>(multinomial(n)) / static_cast<double>(assignments.size());
  return {norm * total, norm * err};
}

cplx shift_of(const SaddleSet& S, const Composition& n) {
  cplx s = 0.0;
  for (std::size_t a = 0; a < n.size(); ++a) s += static_cast<double>(n[a]) * S.Vr_values[a];
  return s;
}

DiscriminatorEntry entry(const RayTable& T, const SaddleSet& S, const Composition& n, const Composition& m) {
  const auto [scaled, err] = scaled_expectation(T, n, m);
  cplx log_factor = -shift_of(S, n) - log_A(S, m);
  for (std::size_t j = 0; j < m.size(); ++j) log_factor += static_cast<double>(m[j]) * std::log(S.Q_prime[j]);
  const cplx factor = std::exp(log_factor);
  return {n, m, scaled * factor, err * std::abs(factor)};
}

void check_composition(const Composition& n, std::size_t J, int N) {
  int sum = 0;
  for (int v : n) {
    if (v < 0) throw std::invalid_argument("discriminator: composition entries must be >= 0");
    sum += v;
  }
  if (n.size() != J || sum != N) {
    throw std::invalid_argument("discriminator: compositions need " + std::to_string(J) + " entries summing to N");
  }
}

}  // namespace

cplx discriminator_ratio(const Composition& n, const Composition& m, int r, const Potential& V, double tol) {
  int N = 0;
  for (int v : n) N += v;
  check_sizes(V, N);
  const auto S = saddle_points(V, r);
  check_composition(n, S.xi.size(), N);
  check_composition(m, S.xi.size(), N);
  return entry(ray_table(V, S, N, tol), S, n, m).ratio;
}

DiscriminatorReport discriminator_report(const Potential& V, int r, int N, double tol) {
  check_sizes(V, N);
  DiscriminatorReport rep;
  rep.r = r;
  rep.N = N;
  rep.tol = tol;
  rep.saddles = saddle_points(V, r);
  rep.classes = compositions(N, static_cast<int>(rep.saddles.xi.size()));
  double best = -1e300;
  for (const auto& n : rep.classes) {
    rep.log_A.push_back(log_A(rep.saddles, n));
    best = std::max(best, rep.log_A.back().real());
  }
  for (std::size_t i = 0; i < rep.classes.size(); ++i) {
    if (rep.log_A[i].real() >= best - 1.0) rep.J_max.push_back(rep.classes[i]);
  }
  const auto T = ray_table(V, rep.saddles, N, tol);
  for (const auto& n : rep.classes) {
    for (const auto& m : rep.classes) rep.entries.push_back(entry(T, rep.saddles, n, m));
  }
  return rep;
}

std::map<Composition, cplx> injectivity_witness(const DiscriminatorReport& rep, const std::map<Composition, cplx>& c) {
  double best = -1e300;
  std::map<Composition, double> logs;
  for (std::size_t i = 0; i < rep.classes.size(); ++i) {
    auto it = c.find(rep.classes[i]);
    if (it == c.end() || it->second == 0.0) continue;
    logs[rep.classes[i]] = rep.log_A[i].real();
    best = std::max(best, rep.log_A[i].real());
  }
  if (logs.empty()) throw std::invalid_argument("injectivity_witness: the combination is zero");
  std::map<Composition, cplx> out;
  for (const auto& [m, la] : logs) {
    if (la < best - 1.0) continue;
    // E_Gamma(p_{r,m}) Q'^m / A(m) = sum_n c_n ratio(n, m)
    cplx v = 0.0;
    for (const auto& [n, cn] : c) v += cn * rep.at(n, m).ratio;
    out[m] = v;
  }
  return out;
}

}  // namespace loopeq
