#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "doctest.h"
#include "loopeq/contours.hpp"
#include "loopeq/quad.hpp"

using namespace loopeq;

namespace {

constexpr double kPi = std::numbers::pi;

Potential poly(std::vector<CRational> t) { return Potential::polynomial(std::move(t)); }

double wrap(double a) {
  a = std::fmod(a, 2 * kPi);
  return a < 0 ? a + 2 * kPi : a;
}

bool same_moments(const ContourIntegral& a, const ContourIntegral& b) {
  for (std::size_t k = 0; k < a.value.size(); ++k) {
    if (std::abs(a.value[k] - b.value[k]) > a.err[k] + b.err[k] + 1e-12 * (a.scale[k] + b.scale[k])) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("sector examples") {
  const auto q = sectors(poly({0, 0, 0, 1}));  // x^4/4
  REQUIRE(q.size() == 4);
  for (int j = 0; j < 4; ++j) {
    CHECK(std::abs(wrap(q[static_cast<std::size_t>(j)].center_angle) - j * kPi / 2) < 1e-12);
    CHECK(std::abs(q[static_cast<std::size_t>(j)].half_width - kPi / 8) < 1e-12);
  }
  const auto g = sectors(poly({0, 1}));
  REQUIRE(g.size() == 2);
  CHECK(std::abs(wrap(g[0].center_angle)) < 1e-12);
  CHECK(std::abs(wrap(g[1].center_angle) - kPi) < 1e-12);
  CHECK(std::abs(g[0].half_width - kPi / 4) < 1e-12);
}

TEST_CASE("admissible and forbidden sectors alternate (random potentials)") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> num(-4, 4);
  std::uniform_int_distribution<int> degree(2, 6);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = degree(rng);
    std::vector<CRational> t(static_cast<std::size_t>(n));
    for (auto& c : t) c = CRational(num(rng), num(rng));
    if (t.back().is_zero()) t.back() = CRational(1, 1);
    const auto V = poly(t);
    const auto secs = sectors(V);
    REQUIRE(secs.size() == static_cast<std::size_t>(n));
    const auto lead = t.back().to_complex();
    for (std::size_t j = 0; j < secs.size(); ++j) {
      const auto& s = secs[j];
      // Re(lead x^n) > 0 inside, zero on the edge, negative halfway to the next sector.
      CHECK(std::cos(n * s.center_angle + std::arg(lead)) == doctest::Approx(1.0));
      CHECK(std::abs(std::cos(n * (s.center_angle + s.half_width) + std::arg(lead))) < 1e-12);
      const double next = secs[(j + 1) % secs.size()].center_angle + (j + 1 == secs.size() ? 2 * kPi : 0.0);
      CHECK(std::abs(next - s.center_angle - 2 * kPi / n) < 1e-12);
      CHECK(std::cos(n * 0.5 * (s.center_angle + next) + std::arg(lead)) < -0.999);
    }
    const auto arcs = basis_arcs(V);
    CHECK(arcs.size() == static_cast<std::size_t>(V.d()));
    for (const auto& c : arcs) CHECK(admissibility_check(c, V, 6).pass);
  }
  const auto haar = Potential::rational({CRational(2)}, {CRational(0), CRational(1)});
  const auto h = basis_arcs(haar);
  REQUIRE(h.size() == 1);
  REQUIRE(h[0].segments.size() == 1);
  CHECK(h[0].segments[0].kind == Segment::Kind::arc);
  CHECK(h[0].segments[0].radius == doctest::Approx(1.0));
}

TEST_CASE("real and imaginary axes in the arc basis") {
  const auto g = poly({0, 1});
  const Contour R = Contour::ray_pair(0.0, kPi, 0.0, "R");
  CHECK(same_moments(arc_moments(R, g, 6), arc_moments(basis_arcs(g)[0], g, 6)));

  const auto V = poly({0, 0, 0, 1});  // x^4/4
  const auto arcs = basis_arcs(V);
  REQUIRE(arcs.size() == 3);
  const int K = 8;
  Eigen::MatrixXcd M(K + 1, 3);
  for (int j = 0; j < 3; ++j) {
    const auto m = arc_moments(arcs[static_cast<std::size_t>(j)], V, K);
    for (int k = 0; k <= K; ++k) M(k, j) = m.value[static_cast<std::size_t>(k)];
  }
  auto coefficients = [&](const Contour& c) {
    const auto m = arc_moments(c, V, K);
    Eigen::VectorXcd b(K + 1);
    for (int k = 0; k <= K; ++k) b(k) = m.value[static_cast<std::size_t>(k)];
    const Eigen::VectorXcd x = M.colPivHouseholderQr().solve(b);
    CHECK((M * x - b).norm() < 1e-10 * b.norm());
    return x;
  };
  const auto r = coefficients(R);
  CHECK(std::abs(r(0) - 1.0) < 1e-10);
  CHECK(std::abs(r(1) - 1.0) < 1e-10);
  CHECK(std::abs(r(2)) < 1e-10);
  const auto im = coefficients(Contour::ray_pair(0.0, 3 * kPi / 2, kPi / 2, "iR"));
  CHECK(std::abs(im(0)) < 1e-10);
  CHECK(std::abs(im(1) - 1.0) < 1e-10);
  CHECK(std::abs(im(2) - 1.0) < 1e-10);
}

TEST_CASE("admissibility examples") {
  const Contour R = Contour::ray_pair(0.0, kPi, 0.0, "R");
  CHECK(admissibility_check(R, poly({0, 1}), 4).pass);
  const auto cubic = admissibility_check(R, poly({0, 0, 1}), 4);  // x^3/3 grows along the negative axis
  CHECK_FALSE(cubic.pass);
  CHECK(cubic.location.real() < -1.0);
  CHECK(admissibility_check(Contour::ray_pair(0.0, 3 * kPi / 2, kPi / 2), poly({0, 0, 0, 1}), 4).pass);
}

TEST_CASE("deformations preserve the class or are rejected") {
  const auto g = poly({0, 1});
  const Contour R = Contour::ray_pair(0.0, kPi, 0.0, "R");
  const Contour shifted = deform(R, Bump{cplx(0.0, 0.3), 1.0, 0.0}, g);
  CHECK(admissibility_check(shifted, g, 4).pass);
  CHECK(same_moments(arc_moments(R, g, 5), arc_moments(shifted, g, 5)));
  CHECK_THROWS_AS(deform(R, Bump{0.0, 1.0, 1.0}, g), std::invalid_argument);

  const auto haar = Potential::rational({CRational(2)}, {CRational(0), CRational(1)});
  const Contour unit = basis_arcs(haar)[0];
  const Contour wide = deform(unit, Bump{0.0, 1.5, 0.0}, haar);
  CHECK(same_moments(arc_moments(unit, haar, 4), arc_moments(wide, haar, 4)));
  CHECK_THROWS_AS(deform(unit, Bump{cplx(2.0, 0.0), 1.0, 0.0}, haar), std::invalid_argument);
}

TEST_CASE("moments are invariant under random admissible deformations") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::vector<Potential> Vs{poly({1, 0, 1}), poly({0, 1, 0, 1}), poly({CRational(0, 1), 0, 0, 0, 1})};  // last: V = ix + x^5/5
  int checked = 0;
  for (const auto& V : Vs) {
    const auto arcs = basis_arcs(V);
    const double hw = sectors(V)[0].half_width;
    for (const auto& arc : arcs) {
      const auto base = arc_moments(arc, V, 4);
      for (int i = 0; i < 10; ++i) {
        const Bump b{cplx(0.5 * u(rng), 0.5 * u(rng)), 1.0, 0.6 * hw * u(rng)};
        const auto moved = arc_moments(deform(arc, b, V), V, 4);
        CHECK(same_moments(base, moved));
        ++checked;
      }
    }
  }
  CHECK(checked == 10 * (2 + 3 + 4));
}

TEST_CASE("rational potentials: branch cuts are not supported") {
  const auto half = Potential::rational({CRational(1) / CRational(2)}, {CRational(0), CRational(1)});
  CHECK_THROWS_WITH_AS(basis_arcs(half), doctest::Contains("cut placement unsupported"), std::invalid_argument);
}
