#include "loopeq/quad.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>

#include <Eigen/Dense>

#include "loopeq/kernels.hpp"

namespace loopeq {

namespace {

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1].
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kLogTail = -41.5;  // log(1e-18)

// Receives quadrature nodes with their complex weights (already including dx/ds).
class Sink {
 public:
  explicit Sink(int m) : m_(m) {}
  virtual ~Sink() = default;
  int size() const { return m_; }
  // 15 Kronrod nodes; wg is zero off the Gauss nodes.
  virtual void gk(const cplx* x, const cplx* wk, const cplx* wg, cplx* K, cplx* G, double* A) = 0;
  virtual void sum(const cplx* x, const cplx* w, int n, cplx* out, double* A) = 0;

 private:
  int m_;
};

class MomentSink : public Sink {
 public:
  MomentSink(const Potential& V, int K) : Sink(K + 1), V_(V), K_(K) {}

  void gk(const cplx* x, const cplx* wk, const cplx* wg, cplx* K, cplx* G, double* A) override {
    double zr[15], zi[15], wr[15], wi[15], gzr[7], gzi[7], gwr[7], gwi[7];
    int ng = 0;
    for (int i = 0; i < 15; ++i) {
      const cplx e = V_.exp_neg_V(x[i]);
      const cplx w = wk[i] * e;
      zr[i] = x[i].real();
      zi[i] = x[i].imag();
      wr[i] = w.real();
      wi[i] = w.imag();
      if (wg[i] != 0.0) {
        const cplx g = wg[i] * e;
        gzr[ng] = zr[i];
        gzi[ng] = zi[i];
        gwr[ng] = g.real();
        gwi[ng] = g.imag();
        ++ng;
      }
    }
    run(zr, zi, wr, wi, 15, K, A);
    std::vector<double> dummy(static_cast<std::size_t>(size()), 0.0);
    run(gzr, gzi, gwr, gwi, ng, G, dummy.data());
  }

  void sum(const cplx* x, const cplx* w, int n, cplx* out, double* A) override {
    std::vector<double> zr(static_cast<std::size_t>(n)), zi(zr), wr(zr), wi(zr);
    for (int i = 0; i < n; ++i) {
      const cplx ww = w[i] * V_.exp_neg_V(x[i]);
      zr[static_cast<std::size_t>(i)] = x[i].real();
      zi[static_cast<std::size_t>(i)] = x[i].imag();
      wr[static_cast<std::size_t>(i)] = ww.real();
      wi[static_cast<std::size_t>(i)] = ww.imag();
    }
    run(zr.data(), zi.data(), wr.data(), wi.data(), n, out, A);
  }

 private:
  void run(const double* zr, const double* zi, const double* wr, const double* wi, int n, cplx* out, double* A) {
    const std::size_t m = static_cast<std::size_t>(size());
    re_.assign(m, 0.0);
    im_.assign(m, 0.0);
    kernels::power_moments()(zr, zi, wr, wi, static_cast<std::size_t>(n), K_, re_.data(), im_.data(), A);
    for (std::size_t k = 0; k < m; ++k) out[k] += cplx(re_[k], im_[k]);
  }

  const Potential& V_;
  int K_;
  std::vector<double> re_, im_;
};

class PointSink : public Sink {
 public:
  PointSink(int m, const PointIntegrand& f) : Sink(m), f_(f), buf_(static_cast<std::size_t>(m)) {}

  void gk(const cplx* x, const cplx* wk, const cplx* wg, cplx* K, cplx* G, double* A) override {
    for (int i = 0; i < 15; ++i) {
      f_(x[i], buf_.data());
      for (int m = 0; m < size(); ++m) {
        const cplx v = buf_[static_cast<std::size_t>(m)];
        K[m] += wk[i] * v;
        G[m] += wg[i] * v;
        A[m] += std::abs(wk[i]) * std::abs(v);
      }
    }
  }

  void sum(const cplx* x, const cplx* w, int n, cplx* out, double* A) override {
    for (int i = 0; i < n; ++i) {
      f_(x[i], buf_.data());
      for (int m = 0; m < size(); ++m) {
        out[m] += w[i] * buf_[static_cast<std::size_t>(m)];
        A[m] += std::abs(w[i]) * std::abs(buf_[static_cast<std::size_t>(m)]);
      }
    }
  }

 private:
  const PointIntegrand& f_;
  std::vector<cplx> buf_;
};

// Point and derivative of a segment at parameter s.
struct Param {
  const Segment& seg;
  cplx at(double s) const {
    switch (seg.kind) {
      case Segment::Kind::ray: return seg.origin + std::polar(s, seg.angle);
      case Segment::Kind::line: return seg.a + s * (seg.b - seg.a);
      case Segment::Kind::arc: return seg.center + std::polar(seg.radius, s);
    }
    return {};
  }
  cplx deriv(double s) const {
    switch (seg.kind) {
      case Segment::Kind::ray: return static_cast<double>(seg.orientation) * std::polar(1.0, seg.angle);
      case Segment::Kind::line: return seg.b - seg.a;
      case Segment::Kind::arc: return cplx(0.0, 1.0) * std::polar(seg.radius, s);
    }
    return {};
  }
};

struct Panel {
  double lo, hi;
  std::vector<cplx> K, G;
  std::vector<double> A;
};

void eval_panel(const Param& p, Sink& sink, Panel& panel) {
  const double c = 0.5 * (panel.lo + panel.hi);
  const double hl = 0.5 * (panel.hi - panel.lo);
  cplx x[15], wk[15], wg[15];
  for (int i = 0; i < 7; ++i) {
    for (int sgn : {-1, 1}) {
      const int idx = sgn < 0 ? i : 14 - i;
      const double s = c + sgn * hl * kXgk[i];
      x[idx] = p.at(s);
      const cplx j = hl * p.deriv(s);
      wk[idx] = kWgk[i] * j;
      wg[idx] = (i % 2 == 1) ? kWg[i / 2] * j : 0.0;
    }
  }
  x[7] = p.at(c);
  wk[7] = kWgk[7] * hl * p.deriv(c);
  wg[7] = kWg[3] * hl * p.deriv(c);
  const std::size_t m = static_cast<std::size_t>(sink.size());
  panel.K.assign(m, 0.0);
  panel.G.assign(m, 0.0);
  panel.A.assign(m, 0.0);
  sink.gk(x, wk, wg, panel.K.data(), panel.G.data(), panel.A.data());
}

void accumulate_adaptive(const Param& p, double lo, double hi, Sink& sink, const QuadOptions& opt,
                         ContourIntegral& out) {
  const std::size_t m = static_cast<std::size_t>(sink.size());
  std::vector<Panel> panels;
  const int n0 = 16;
  for (int i = 0; i < n0; ++i) {
    Panel pn{lo + (hi - lo) * i / n0, lo + (hi - lo) * (i + 1) / n0, {}, {}, {}};
    eval_panel(p, sink, pn);
    panels.push_back(std::move(pn));
  }
  // Running totals plus a max-heap of panels keyed by their relative error at
  // insertion time; the totals alone decide convergence.
  std::vector<double> err(m, 0.0), abs(m, 0.0);
  auto add = [&](const Panel& pn, double sign) {
    for (std::size_t k = 0; k < m; ++k) {
      err[k] += sign * std::abs(pn.K[k] - pn.G[k]);
      abs[k] += sign * pn.A[k];
    }
  };
  auto score = [&](const Panel& pn) {
    double r = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      if (abs[k] > 0) r = std::max(r, std::abs(pn.K[k] - pn.G[k]) / abs[k]);
    }
    return r;
  };
  for (const auto& pn : panels) add(pn, 1.0);
  std::vector<std::pair<double, std::size_t>> heap;
  for (std::size_t i = 0; i < panels.size(); ++i) heap.emplace_back(score(panels[i]), i);
  std::make_heap(heap.begin(), heap.end());
  for (;;) {
    bool ok = true;
    for (std::size_t k = 0; k < m; ++k) ok = ok && std::max(err[k], 0.0) <= opt.tol * abs[k];
    if (ok) break;
    if (static_cast<int>(panels.size()) >= opt.max_panels) {
      double worst = 0.0;
      for (std::size_t k = 0; k < m; ++k) worst = std::max(worst, abs[k] > 0 ? err[k] / abs[k] : 0.0);
      throw QuadratureError("quadrature tolerance unreachable at max subdivision; achieved relative error " +
                                std::to_string(worst),
                            worst);
    }
    std::pop_heap(heap.begin(), heap.end());
    const std::size_t worst_panel = heap.back().second;
    heap.pop_back();
    Panel left{panels[worst_panel].lo, 0.5 * (panels[worst_panel].lo + panels[worst_panel].hi), {}, {}, {}};
    Panel right{left.hi, panels[worst_panel].hi, {}, {}, {}};
    eval_panel(p, sink, left);
    eval_panel(p, sink, right);
    add(panels[worst_panel], -1.0);
    add(left, 1.0);
    add(right, 1.0);
    panels[worst_panel] = std::move(left);
    panels.push_back(std::move(right));
    heap.emplace_back(score(panels[worst_panel]), worst_panel);
    std::push_heap(heap.begin(), heap.end());
    heap.emplace_back(score(panels.back()), panels.size() - 1);
    std::push_heap(heap.begin(), heap.end());
  }
  // Fixed summation order (by parameter) for reproducibility.
  std::sort(panels.begin(), panels.end(), [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
  for (const auto& pn : panels) {
    for (std::size_t k = 0; k < m; ++k) {
      out.value[k] += pn.K[k];
      out.err[k] += std::abs(pn.K[k] - pn.G[k]);
      out.scale[k] += pn.A[k];
    }
  }
}

void accumulate_trapezoid(const Segment& seg, Sink& sink, const QuadOptions& opt, ContourIntegral& out) {
  const std::size_t m = static_cast<std::size_t>(sink.size());
  const Param p{seg};
  auto rule = [&](int n, std::vector<cplx>& val, std::vector<double>& abs) {
    std::vector<cplx> x(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
    const double h = (seg.phi1 - seg.phi0) / n;
    for (int i = 0; i < n; ++i) {
      const double phi = seg.phi0 + h * i;
      x[static_cast<std::size_t>(i)] = p.at(phi);
      w[static_cast<std::size_t>(i)] = h * p.deriv(phi);
    }
    val.assign(m, 0.0);
    abs.assign(m, 0.0);
    sink.sum(x.data(), w.data(), n, val.data(), abs.data());
  };
  int n = 64;
  std::vector<cplx> coarse, fine;
  std::vector<double> coarse_abs, fine_abs;
  rule(n, coarse, coarse_abs);
  for (;;) {
    n *= 2;
    rule(n, fine, fine_abs);
    bool ok = true;
    double worst = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const double e = std::abs(fine[k] - coarse[k]);
      ok = ok && e <= opt.tol * fine_abs[k];
      if (fine_abs[k] > 0) worst = std::max(worst, e / fine_abs[k]);
    }
    if (ok) break;
    if (n >= (1 << 20)) throw QuadratureError("trapezoid rule did not converge on circle", worst);
    coarse.swap(fine);
    coarse_abs.swap(fine_abs);
  }
  for (std::size_t k = 0; k < m; ++k) {
    out.value[k] += fine[k];
    out.err[k] += std::abs(fine[k] - coarse[k]);
    out.scale[k] += fine_abs[k];
  }
}

// Parameter length after which |x|^growth |e^{-V}| stays below 1e-18 of its peak.
double ray_extent(const Segment& seg, const Potential& V, double growth) {
  const Param p{seg};
  auto g = [&](double s) {
    const cplx x = p.at(s);
    return growth * std::log1p(std::abs(x)) + V.log_abs_weight(x);
  };
  double best = -INFINITY, s = 0.0;
  double below_since = -1.0;
  while (s < 1e6) {
    const double v = g(s);
    if (v > best) {
      best = v;
      below_since = -1.0;
    } else if (v < best + kLogTail) {
      if (below_since < 0) below_since = s;
      // require the decay to persist a little further out
      if (s > 1.25 * below_since + 0.5) return s;
    } else {
      below_since = -1.0;
    }
    s += std::max(0.01, 0.02 * s);
  }
  throw QuadratureError("ray integrand does not decay (direction not admissible?)", INFINITY);
}

void integrate_with(const Contour& c, const Potential& V, Sink& sink, const QuadOptions& opt, ContourIntegral& out) {
  const std::size_t m = static_cast<std::size_t>(sink.size());
  out.value.assign(m, 0.0);
  out.err.assign(m, 0.0);
  out.scale.assign(m, 0.0);
  for (const auto& seg : c.segments) {
    const Param p{seg};
    switch (seg.kind) {
      case Segment::Kind::ray: {
        const double S = ray_extent(seg, V, opt.growth);
        // Split near the origin and outward so the initial panels are not too coarse.
        accumulate_adaptive(p, 0.0, S, sink, opt, out);
        break;
      }
      case Segment::Kind::line: accumulate_adaptive(p, 0.0, 1.0, sink, opt, out); break;
      case Segment::Kind::arc:
        if (seg.closed()) {
          accumulate_trapezoid(seg, sink, opt, out);
        } else {
          accumulate_adaptive(p, seg.phi0, seg.phi1, sink, opt, out);
        }
        break;
    }
  }
}

}  // namespace

ContourIntegral integrate(const Contour& c, const Potential& V, int M, const PointIntegrand& f, const QuadOptions& opt) {
  PointSink sink(M, f);
  ContourIntegral out;
  integrate_with(c, V, sink, opt, out);
  return out;
}

ContourIntegral arc_moments(const Contour& c, const Potential& V, int K, double tol) {
  if (K < 0) throw std::invalid_argument("arc_moments: K must be >= 0");
  MomentSink sink(V, K);
  QuadOptions opt;
  opt.tol = tol;
  opt.growth = K;
  ContourIntegral out;
  integrate_with(c, V, sink, opt, out);
  return out;
}

std::pair<cplx, double> arc_moment(const Contour& c, const Potential& V, int k, double tol) {
  const auto m = arc_moments(c, V, k, tol);
  return {m.value.back(), m.err.back()};
}

MomentTable moment_table(const std::vector<Contour>& arcs, const Potential& V, int K, double tol) {
  MomentTable t;
  t.K = K;
  for (const auto& c : arcs) t.arcs.push_back(arc_moments(c, V, K, tol));
  return t;
}

int required_moment(const PowerSumPoly& p, int N) { return p.max_weight() + 2 * (N - 1); }

namespace {

double permanent(const Eigen::MatrixXd& a) {
  // Ryser's formula.
  const int n = static_cast<int>(a.rows());
  if (n == 0) return 1.0;
  double total = 0.0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    double prod = 1.0;
    for (int i = 0; i < n; ++i) {
      double row = 0.0;
      for (int j = 0; j < n; ++j) {
        if (mask & (1u << j)) row += a(i, j);
      }
      prod *= row;
    }
    total += ((n - __builtin_popcount(mask)) % 2 ? -1.0 : 1.0) * prod;
  }
  return total;
}

struct PermutationTable {
  std::vector<std::vector<int>> perms;
  std::vector<int> signs;
};

const PermutationTable& permutations(int n) {
  static std::map<int, PermutationTable> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  PermutationTable t;
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) inversions += p[static_cast<std::size_t>(i)] > p[static_cast<std::size_t>(j)];
    }
    t.perms.push_back(p);
    t.signs.push_back(inversions % 2 ? -1 : 1);
  } while (std::next_permutation(p.begin(), p.end()));
  return cache.emplace(n, std::move(t)).first->second;
}

}  // namespace

Expectation word_integral(const std::vector<int>& word, const Partition& mu, const MomentTable& T) {
  const int N = static_cast<int>(word.size());
  if (N < 1 || N > 5) throw std::invalid_argument("expectation: N must be in 1..5 (complexity cap)");
  if (mu.length() > 6) throw std::invalid_argument("expectation: l(mu) <= 6 (complexity cap)");
  const int need = mu.weight() + 2 * (N - 1);
  if (need > T.K) {
    throw std::invalid_argument("moment table too short: need arc moments up to k=" + std::to_string(need) +
                                ", have k<=" + std::to_string(T.K));
  }
  for (int w : word) {
    if (w < 0 || w >= static_cast<int>(T.arcs.size())) {
      throw std::invalid_argument("moment table has no arc " + std::to_string(w));
    }
  }
  // Exponent shifts e from expanding p_mu = prod_parts sum_i x_i^part.
  std::map<std::vector<int>, double> shifts;
  {
    const auto& parts = mu.parts();
    std::vector<int> choice(parts.size(), 0);
    for (;;) {
      std::vector<int> e(static_cast<std::size_t>(N), 0);
      for (std::size_t p = 0; p < parts.size(); ++p) e[static_cast<std::size_t>(choice[p])] += parts[p];
      shifts[e] += 1.0;
      std::size_t pos = 0;
      while (pos < choice.size() && ++choice[pos] == N) choice[pos++] = 0;
      if (pos == choice.size()) break;
    }
  }
  const auto& perms = permutations(N);
  Expectation out;
  Eigen::MatrixXcd M(N, N);
  Eigen::MatrixXd absM(N, N), errM(N, N), scaleM(N, N);
  for (const auto& [e, count] : shifts) {
    for (std::size_t s = 0; s < perms.perms.size(); ++s) {
      const auto& sigma = perms.perms[s];
      for (int i = 0; i < N; ++i) {
        const auto& m = T.arcs[static_cast<std::size_t>(word[static_cast<std::size_t>(i)])];
        for (int j = 0; j < N; ++j) {
          const std::size_t k = static_cast<std::size_t>(sigma[static_cast<std::size_t>(i)] + j + e[static_cast<std::size_t>(i)]);
          M(i, j) = m.value[k];
          absM(i, j) = std::abs(m.value[k]);
          errM(i, j) = m.err[k];
          scaleM(i, j) = m.scale[k];
        }
      }
      out.value += count * static_cast<double>(perms.signs[s]) * M.determinant();
      out.err += count * std::max(0.0, permanent(absM + errM) - permanent(absM));
      out.scale += count * permanent(scaleM);
    }
  }
  return out;
}

Expectation class_expectation(const Composition& n, const Partition& mu, const MomentTable& T) {
  std::vector<int> word;
  for (std::size_t j = 0; j < n.size(); ++j) word.insert(word.end(), static_cast<std::size_t>(n[j]), static_cast<int>(j));
  Expectation e = word_integral(word, mu, T);
  const double mult = static_cast<double>(multinomial(n));
  e.value *= mult;
  e.err *= mult;
  e.scale *= mult;
  return e;
}

Expectation expectation(const HomologyClass& G, const PowerSumPoly& p, const MomentTable& T) {
  if (p.nvars() != G.N) throw std::invalid_argument("expectation: polynomial nvars differs from class N");
  Expectation out;
  for (const auto& [n, c] : G.terms) {
    if (static_cast<int>(n.size()) != static_cast<int>(T.arcs.size())) {
      throw std::invalid_argument("expectation: composition length differs from arc count");
    }
    for (const auto& [mu, a] : p.terms()) {
      const Expectation e = class_expectation(n, mu, T);
      const cplx coeff = c.to_complex() * a.to_complex();
      out.value += coeff * e.value;
      out.err += std::abs(coeff) * e.err;
      out.scale += std::abs(coeff) * e.scale;
    }
  }
  return out;
}

Expectation expectation(const HomologyClass& G, const PowerSumPoly& p, const Potential& V, double tol) {
  const MomentTable T = moment_table(G.arcs, V, required_moment(p, G.N), tol);
  return expectation(G, p, T);
}

MomentMatrix moment_matrix(const Potential& V, int N, double tol) {
  return moment_matrix(basis_arcs(V), V, N, tol);
}

int moment_matrix_order(int N, int d) { return N * (d - 1) + 2 * (N - 1); }

MomentMatrix moment_matrix(const std::vector<Contour>& arcs, const Potential& V, int N, double tol) {
  return moment_matrix(moment_table(arcs, V, moment_matrix_order(N, static_cast<int>(arcs.size())), tol), N);
}

MomentMatrix moment_matrix(const MomentTable& T, int N) {
  const int d = static_cast<int>(T.arcs.size());
  MomentMatrix mm;
  mm.rows = compositions(N, d);
  mm.cols = partitions_in_box(N, d - 1);
  const auto R = mm.rows.size(), C = mm.cols.size();
  Eigen::MatrixXcd A(static_cast<Eigen::Index>(R), static_cast<Eigen::Index>(C));
  mm.entries.assign(R, std::vector<cplx>(C));
  mm.errors.assign(R, std::vector<double>(C));
  for (std::size_t r = 0; r < R; ++r) {
    for (std::size_t c = 0; c < C; ++c) {
      const Expectation e = class_expectation(mm.rows[r], mm.cols[c], T);
      mm.entries[r][c] = e.value;
      mm.errors[r][c] = e.err;
      A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = e.value;
    }
  }
  for (Eigen::Index c = 0; c < A.cols(); ++c) {
    const double mx = A.col(c).cwiseAbs().maxCoeff();
    if (mx > 0) A.col(c) /= mx;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
  const auto& sv = svd.singularValues();
  mm.singular_values.assign(sv.data(), sv.data() + sv.size());
  return mm;
}

}  // namespace loopeq
