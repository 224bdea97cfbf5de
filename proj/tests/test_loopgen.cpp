#include <random>

#include "doctest.h"
#include "loopeq/laurent.hpp"
#include "loopeq/loopgen.hpp"

using namespace loopeq;

namespace {

CRational rnd(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-7, 7);
  std::uniform_int_distribution<long> den(1, 4);
  return {mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng))};
}

// Oracle straight from the definition of a loop equation: with
// w = Delta^2 prod e^{-V(x_i)},
//   (1/w) sum_i d/dx_i (D(x_i) x_i^{mu1} P w)
//     = sum_i [ d/dx_i(D(x_i) x_i^{mu1} P) + D(x_i) x_i^{mu1} P (sum_{j!=i} 2/(x_i-x_j) - R(x_i)/D(x_i)) ]
// evaluated exactly at distinct rational points. Q_mu must equal minus this.
CRational divergence(const std::vector<int>& mu, const UPoly& R, const UPoly& D, const std::vector<CRational>& x) {
  const int m1 = mu[0];
  const std::vector<int> rest(mu.begin() + 1, mu.end());
  auto psum = [&](int k) {
    CRational s(0);
    for (const auto& xi : x) s += xi.pow(static_cast<unsigned>(k));
    return s;
  };
  CRational P(1);
  for (int k : rest) P *= psum(k);
  const UPoly dD = derivative(D);
  CRational total(0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const CRational& xi = x[i];
    const CRational Di = eval(D, xi);
    const CRational xm = xi.pow(static_cast<unsigned>(m1));
    // d/dx_i (D x^m1) = D' x^m1 + m1 D x^{m1-1}
    CRational d_front = eval(dD, xi) * xm;
    if (m1 > 0) d_front += Di * CRational(m1) * xi.pow(static_cast<unsigned>(m1 - 1));
    // d/dx_i P = sum_k mu_k x_i^{mu_k - 1} prod_{l != k} p_{mu_l}
    CRational dP(0);
    for (std::size_t k = 0; k < rest.size(); ++k) {
      CRational term = CRational(rest[k]) * xi.pow(static_cast<unsigned>(rest[k] - 1));
      for (std::size_t l = 0; l < rest.size(); ++l) {
        if (l != k) term *= psum(rest[l]);
      }
      dP += term;
    }
    CRational vand(0);
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (j != i) vand += CRational(2) / (xi - x[j]);
    }
    total += d_front * P + Di * xm * dP + Di * xm * P * vand - xm * P * eval(R, xi);
  }
  return total;
}

std::vector<CRational> distinct_points(std::mt19937& rng, int n) {
  for (;;) {
    std::vector<CRational> x;
    for (int i = 0; i < n; ++i) x.push_back(rnd(rng));
    bool ok = true;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) ok = ok && !(x[i] == x[j]);
    }
    if (ok) return x;
  }
}

std::vector<int> random_mu(std::mt19937& rng) {
  std::uniform_int_distribution<int> len(0, 3), first(0, 4), part(1, 3);
  std::vector<int> mu{first(rng)};
  for (int i = len(rng); i > 0; --i) mu.push_back(part(rng));
  return mu;
}

}  // namespace

TEST_CASE("q_polynomial examples") {
  const auto gauss = Potential::polynomial({0, 1});
  SUBCASE("mu=(1), Gaussian: p2 - N^2") {
    PowerSumPoly expected(3);
    expected.add_term(Partition{2}, 1);
    expected.add_term(Partition{}, -9);
    CHECK(q_polynomial({1}, gauss, 3) == expected);
  }
  SUBCASE("mu=(0): sum_j t_{j+1} p_j") {
    const auto V = Potential::polynomial({CRational(2), CRational(-1), CRational(3)});
    PowerSumPoly expected(2);
    expected.add_term(Partition{}, CRational(4));  // t_1 p_0 = 2N
    expected.add_term(Partition{1}, -1);
    expected.add_term(Partition{2}, 3);
    CHECK(q_polynomial({0}, V, 2) == expected);
  }
  SUBCASE("mu=(k), Gaussian: p_{k+1} = sum_j p_j p_{k-1-j}") {
    const auto q = q_polynomial_raw({3}, gauss);
    PowerSumPoly expected(2);
    expected.add_term(Partition{4}, 1);
    expected.add_term(Partition{2}, CRational(-4));   // p_0 p_2 + p_2 p_0
    expected.add_term(Partition{1, 1}, -1);
    CHECK(PowerSumPoly::from_raw(2, q) == expected);
  }
  CHECK_THROWS_AS(q_polynomial({1}, Potential::rational({1}, {0, 1}), 2), std::invalid_argument);
  CHECK_THROWS_AS(q_polynomial({1, 0}, gauss, 2), std::invalid_argument);
}

TEST_CASE("q_polynomial highest-weight coefficient is t_{d+1} (raw form)") {
  const auto V = Potential::polynomial({CRational(1), CRational(0), CRational(-2), CRational::parse("3/5", "1")});
  for (int w = 0; w <= 8; ++w) {
    for (const auto& rest : partitions_of(w, 8)) {
      for (int m1 = 0; m1 <= 8 - w; ++m1) {
        std::vector<int> mu{m1};
        mu.insert(mu.end(), rest.parts().begin(), rest.parts().end());
        std::vector<int> top = rest.parts();
        top.push_back(m1 + V.d());
        const Partition target(top);
        CRational found(0);
        for (const auto& term : q_polynomial_raw(mu, V)) {
          bool has_zero = std::find(term.parts.begin(), term.parts.end(), 0) != term.parts.end();
          if (!has_zero && Partition(term.parts) == target) found += term.coeff;
        }
        CHECK(found == V.t().back());
      }
    }
  }
}

TEST_CASE("q_polynomial satisfies the pointwise derivative identity") {
  std::mt19937 rng(11);
  const std::vector<Potential> pots{Potential::polynomial({0, 1}),
                                    Potential::polynomial({CRational(1), CRational(0), CRational(1)}),
                                    Potential::polynomial({CRational::parse("1/2", "-1"), CRational(2), CRational(0), CRational(1)})};
  for (int trial = 0; trial < 120; ++trial) {
    const auto& V = pots[static_cast<std::size_t>(trial) % pots.size()];
    const int n = 1 + trial % 3;
    const auto mu = random_mu(rng);
    const auto x = distinct_points(rng, n);
    const auto q = q_polynomial(mu, V, n);
    CHECK(eval_powersum(q, x) == -divergence(mu, V.R(), V.D(), x));
  }
}

TEST_CASE("q_rational satisfies the pointwise derivative identity") {
  std::mt19937 rng(12);
  const std::vector<Potential> pots{
      Potential::rational({CRational(2)}, {0, 1}),                  // Haar V' = 2/x
      Potential::rational({CRational(1), CRational(0), CRational(1)}, {CRational(-1), CRational(0), CRational(1)}),
      Potential::rational({CRational(1), CRational(3), CRational(0), CRational(1)}, {CRational(2), CRational(1)}),
  };
  for (int trial = 0; trial < 120; ++trial) {
    const auto& V = pots[static_cast<std::size_t>(trial) % pots.size()];
    const int n = 1 + trial % 3;
    const auto mu = random_mu(rng);
    const auto x = distinct_points(rng, n);
    CHECK(eval_powersum(q_rational(mu, V, n), x) == -divergence(mu, V.R(), V.D(), x));
  }
}

TEST_CASE("q_rational with D = 1 coincides with q_polynomial") {
  const std::vector<CRational> t{CRational(1), CRational::parse("-2/3"), CRational(0), CRational(4)};
  const auto Vp = Potential::polynomial(t);
  const auto Vr = Potential::rational(t, {CRational(1)});
  for (const auto& mu : std::vector<std::vector<int>>{{0}, {1}, {3}, {2, 1}, {0, 2, 2}, {4, 1, 3}}) {
    CHECK(PowerSumPoly::from_raw(3, q_rational_raw(mu, Vr)) == PowerSumPoly::from_raw(3, q_polynomial_raw(mu, Vp)));
    const auto a = q_rational_raw(mu, Vr);
    const auto b = q_polynomial_raw(mu, Vp);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].parts == b[i].parts);
      CHECK(a[i].coeff == b[i].coeff);
    }
  }
}

TEST_CASE("rational potential validation") {
  // V' = x^3 / x is not in lowest terms.
  CHECK_THROWS_AS(Potential::rational({0, 0, 0, 1}, {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Potential::rational({1}, {0, 0, 1}), std::invalid_argument);  // double pole
  const auto haar = Potential::rational({CRational(2)}, {CRational(0), CRational(1)});
  CHECK(haar.d() == 1);
  REQUIRE(haar.poles().size() == 1);
  CHECK(haar.poles()[0].integer_residue);
  CHECK(haar.poles()[0].rounded_residue == 2);
  CHECK(std::abs(haar.exp_neg_V({0.0, 2.0}) - std::complex<double>(-0.25, 0)) < 1e-15);
}

TEST_CASE("two-matrix elimination, d = dt = 1") {
  // V = t2 x^2/2, Vt = tt2 y^2/2: Q = (t2 tt2 - 1) p_{k+1} - tt2 sum_j p_j p_{k-1-j}.
  const CRational t2 = CRational::parse("3/2");
  const CRational tt2 = CRational::parse("5", "1");
  const TwoPotential W(Potential::polynomial({0, t2}), Potential::polynomial({0, tt2}));
  for (int k = 0; k <= 4; ++k) {
    std::vector<RawTerm<CRational>> expected{{t2 * tt2 - CRational(1), {k + 1}}};
    for (int j = 0; j < k; ++j) expected.push_back({-tt2, {j, k - 1 - j}});
    CHECK(q_twomatrix({k}, W, 2) == PowerSumPoly::from_raw(2, expected));
  }
}

TEST_CASE("two-matrix leading coefficient is tt_{dt+1} t_{d+1}^dt, symbolically") {
  for (auto [d, dt] : std::vector<std::pair<int, int>>{{1, 2}, {2, 1}, {2, 2}}) {
    // variables: t_1..t_{d+1} -> 0..d, tt_1..tt_{dt+1} -> d+1..d+dt+1, N -> d+dt+2
    std::vector<LaurentPoly> t, tt;
    for (int k = 0; k <= d; ++k) t.push_back(LaurentPoly::variable(k));
    for (int k = 0; k <= dt; ++k) tt.push_back(LaurentPoly::variable(d + 1 + k));
    const LaurentPoly n_sym = LaurentPoly::variable(d + dt + 2);
    LaurentPoly expected = tt.back();
    for (int i = 0; i < dt; ++i) expected *= t.back();
    for (int m1 = 0; m1 <= 2; ++m1) {
      for (int spectator = 1; spectator <= 2; ++spectator) {
        TwoMatrixEliminator<LaurentPoly> elim(t, tt);
        const auto folded = fold_p0(elim.q({m1, spectator}), n_sym);
        const Partition top{m1 + d * dt, spectator};
        REQUIRE(folded.count(top) == 1);
        CHECK(folded.at(top) == expected);
        int max_weight = 0;
        for (const auto& [p, c] : folded) max_weight = std::max(max_weight, p.weight());
        CHECK(max_weight == top.weight());
      }
    }
  }
}

TEST_CASE("two-matrix, d=1, dt=2, mu=(0): highest part is 2") {
  const TwoPotential W(Potential::polynomial({0, 1}), Potential::polynomial({0, 0, 1}));
  const auto q = q_twomatrix({0}, W, 2);
  int highest = 0;
  for (const auto& [p, c] : q.terms()) highest = std::max(highest, p.largest());
  CHECK(highest == 2);
  CHECK(q.coefficient(Partition{2}) == CRational(1));
}
