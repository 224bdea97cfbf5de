#include <cmath>

#include "doctest.h"
#include "loopeq/loopgen.hpp"
#include "loopeq/quad.hpp"
#include "loopeq/wick.hpp"

using namespace loopeq;

namespace {

const LaurentPoly N = LaurentPoly::variable(kVarN);

long double_factorial(int n) { return n <= 1 ? 1 : n * double_factorial(n - 2); }

}  // namespace

TEST_CASE("gaussian_trace_moment examples") {
  CHECK(gaussian_trace_moment({2}) == N * N);
  CHECK(gaussian_trace_moment({4}) == N * N * N * CRational(2) + N);
  CHECK(gaussian_trace_moment({1, 1}) == N);
  CHECK(gaussian_trace_moment({3}).is_zero());
  CHECK(gaussian_trace_moment({1, 2}).is_zero());
  CHECK(gaussian_trace_moment({}) == LaurentPoly(1));
  CHECK_THROWS_AS(gaussian_trace_moment({18}), std::invalid_argument);
}

TEST_CASE("N = 1 reduces to scalar Gaussian moments (2m-1)!!") {
  for (int m = 1; m <= 6; ++m) {
    CHECK(gaussian_trace_moment({2 * m}).evaluate({CRational(1)}) == CRational(double_factorial(2 * m - 1)));
  }
  // Product of traces at N = 1 is again a single scalar moment.
  CHECK(gaussian_trace_moment({1, 3, 2}).evaluate({CRational(1)}) == CRational(15));
}

TEST_CASE("trace order does not matter") {
  const std::vector<std::vector<int>> orders{{1, 2, 3}, {3, 1, 2}, {2, 3, 1}, {3, 2, 1}};
  const auto ref = detail::wick_enumerate(orders[0]);
  CHECK_FALSE(ref.is_zero());
  for (const auto& o : orders) CHECK(detail::wick_enumerate(o) == ref);
  CHECK(detail::wick_enumerate({4, 2}) == detail::wick_enumerate({2, 4}));
  CHECK(detail::wick_enumerate({1, 1, 2, 2}) == detail::wick_enumerate({2, 1, 2, 1}));
}

TEST_CASE("Wick polynomials agree with quadrature on R^N") {
  const auto V = Potential::polynomial({0, 1});
  const auto arcs = basis_arcs(V);
  for (int n = 1; n <= 3; ++n) {
    const auto G = power_class(arcs, {CRational(1)}, n);
    const auto T = moment_table(arcs, V, 4 + 2 * (n - 1));
    const auto Z = expectation(G, PowerSumPoly::constant(n, 1), T);
    for (int k : {2, 4}) {
      const auto e = expectation(G, PowerSumPoly::power_sum(n, Partition{k}), T);
      const double exact = gaussian_trace_moment({k}).evaluate({CRational(n)}).to_complex().real();
      CHECK(std::abs(e.value / Z.value - exact) < 1e-8);
    }
  }
}

TEST_CASE("map_series examples") {
  const auto cubic = MapModel::symbolic({3});
  const auto empty = map_series(cubic, {}, 0);
  CHECK(empty.coeffs.at(0) == LaurentPoly(1));

  const auto gauss = MapModel::numeric({});
  const auto two = map_series(gauss, {2}, 1);
  CHECK(two.coeffs.at(1) == N);  // one edge closing a face of size 2
  CHECK(map_series(gauss, {1}, 3).is_zero());

  // Marked (2) with one quartic vertex: three edges, weight (N t4 / 4) (t/N)^3 W(2,4).
  const auto quartic = MapModel::symbolic({4});
  const auto q = map_series(quartic, {2}, 3);
  const LaurentPoly t4 = LaurentPoly::variable(4);
  const LaurentPoly expected = t4 * gaussian_trace_moment({2, 4}) * LaurentPoly::variable(kVarN, -2) * (CRational(1) / CRational(4));
  LaurentPoly linear;
  for (const auto& [exps, c] : q.coeffs.at(3).terms()) {
    if (LaurentPoly::exponent(exps, 4) == 1) linear += LaurentPoly::monomial(c, exps);
  }
  CHECK(linear == expected);
  CHECK_THROWS_AS(map_series(cubic, {1}, 7), std::invalid_argument);
}

TEST_CASE("tutte_residual examples") {
  CHECK(tutte_residual(MapModel::symbolic({3}), {1}, 3).is_zero());
  CHECK(tutte_residual(MapModel::symbolic({4}), {2}, 4).is_zero());
  CHECK(tutte_residual(MapModel::numeric({}), {0}, 2).is_zero());
  CHECK(tutte_residual(MapModel::numeric({{3, CRational(1)}}), {1, 1}, 4).is_zero());
  CHECK_THROWS_AS(tutte_residual(MapModel::symbolic({3}), {1}, 7), std::invalid_argument);
  CHECK_THROWS_WITH_AS(tutte_residual(MapModel::symbolic({3}), {4, 4}, 2), doctest::Contains("order shortfall"),
                       std::invalid_argument);
}

TEST_CASE("the map functional fails a wrong loop equation") {
  // Dropping the cubic term from V' breaks the identity at the first order where a vertex can appear.
  const auto cubic = MapModel::symbolic({3});
  auto coeffs = cubic.dV_coefficients();
  coeffs[2] = LaurentPoly();
  const auto raw = loop_terms_polynomial(std::vector<int>{1}, coeffs);
  CHECK_FALSE(evaluate_on_maps(raw, cubic, 3).is_zero());
}

TEST_CASE("Tutte equations: cubic and quartic models, |mu| <= 4, e_max = 4") {
  int checked = 0;
  for (int degree : {3, 4}) {
    const auto model = MapModel::symbolic({degree});
    for (int m1 = 0; m1 <= 4; ++m1) {
      for (const auto& rest : partitions_up_to(4 - m1, 4)) {
        std::vector<int> mu{m1};
        mu.insert(mu.end(), rest.parts().begin(), rest.parts().end());
        const auto r = tutte_residual(model, mu, 4);
        INFO("degree " << degree << " mu_1 " << m1 << " rest " << rest.to_string());
        CHECK(r.is_zero());
        ++checked;
      }
    }
  }
  CHECK(checked == 2 * (12 + 7 + 4 + 2 + 1));  // partitions of weight <= 4, 3, 2, 1, 0
}
