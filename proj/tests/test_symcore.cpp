#include <random>

#include "doctest.h"
#include "loopeq/laurent.hpp"
#include "loopeq/partition.hpp"
#include "loopeq/powersum.hpp"

using namespace loopeq;

namespace {

CRational random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 5);
  return {mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng))};
}

Partition random_partition(std::mt19937& rng, int max_len, int max_weight) {
  std::uniform_int_distribution<int> len_dist(0, max_len);
  const int len = len_dist(rng);
  std::vector<int> parts;
  int budget = max_weight;
  for (int i = 0; i < len && budget > 0; ++i) {
    std::uniform_int_distribution<int> part(1, std::min(budget, 4));
    parts.push_back(part(rng));
    budget -= parts.back();
  }
  return Partition(parts);
}

}  // namespace

TEST_CASE("CRational field arithmetic and parsing") {
  const CRational a = CRational::parse("3/4", "-1/2");
  const CRational b = CRational::parse("2", "5");
  CHECK((a * b) / b == a);
  CHECK((a + b) - b == a);
  CHECK(CRational::i() * CRational::i() == CRational(-1));
  CHECK(CRational::parse("6/4").re_string() == "3/2");
  CHECK_THROWS_AS(CRational::parse("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(CRational(1) / CRational(0), std::domain_error);
  CHECK(CRational(mpq_class(5), mpq_class(0)).is_integer());
}

TEST_CASE("LaurentPoly arithmetic with negative powers") {
  const LaurentPoly n = LaurentPoly::variable(0);
  const LaurentPoly inv = LaurentPoly::variable(0, -1);
  CHECK(n * inv == LaurentPoly(1));
  const LaurentPoly p = n * n * CRational(2) + LaurentPoly(1);
  CHECK(p.to_string({"N"}) == "2*N^2 + 1");
  CHECK(p.evaluate({CRational(3)}) == CRational(19));
  CHECK((p - p).is_zero());
  CHECK(p.substituted(0, CRational(2)) == LaurentPoly(9));
}

TEST_CASE("partitions_in_box examples") {
  const auto a = partitions_in_box(2, 1);
  REQUIRE(a.size() == 3);
  CHECK(a[0] == Partition{});
  CHECK(a[1] == Partition{1});
  CHECK(a[2] == Partition{1, 1});

  const auto b = partitions_in_box(3, 0);
  REQUIRE(b.size() == 1);
  CHECK(b[0].empty());

  const auto c = partitions_in_box(2, 2);
  const std::vector<Partition> expected{{}, {1}, {2}, {1, 1}, {2, 1}, {2, 2}};
  CHECK(c == expected);
}

TEST_CASE("partitions_in_box cardinality is binom(N+d-1, N)") {
  for (int n = 1; n <= 6; ++n) {
    for (int d = 1; d <= 5; ++d) {
      CHECK(partitions_in_box(n, d - 1).size() == binomial(n + d - 1, n));
    }
  }
}

TEST_CASE("graded reverse-lex order and compositions") {
  GradedRevLex less;
  CHECK(less(Partition{2}, Partition{1, 1}));
  CHECK(less(Partition{1, 1}, Partition{3}));
  CHECK_FALSE(less(Partition{1, 1}, Partition{2}));
  const auto comps = compositions(2, 2);
  REQUIRE(comps.size() == 3);
  CHECK(comps[0] == Composition{2, 0});
  CHECK(comps[1] == Composition{1, 1});
  CHECK(comps[2] == Composition{0, 2});
  CHECK(compositions(3, 3).size() == binomial(5, 3));
  CHECK(multinomial(std::vector<int>{2, 1, 1}) == 12);
  CHECK_THROWS_AS(Partition({2, 0}), std::invalid_argument);
}

TEST_CASE("eval_powersum examples") {
  const std::vector<CRational> pts{1, 2};
  CHECK(eval_powersum(PowerSumPoly::power_sum(2, Partition{2}), pts) == CRational(5));
  CHECK(eval_powersum(PowerSumPoly::power_sum(2, Partition{1, 1}), pts) == CRational(9));
  const std::vector<CRational> pts2{CRational::i(), 1};
  CHECK(eval_powersum(PowerSumPoly::power_sum(2, Partition{2, 1}), pts2).is_zero());
  const std::vector<CRational> wrong{1};
  CHECK_THROWS_AS(eval_powersum(PowerSumPoly::power_sum(2, Partition{2}), wrong),
                  std::invalid_argument);
}

TEST_CASE("reduce_length examples") {
  SUBCASE("one variable") {
    const auto r = reduce_length(PowerSumPoly::power_sum(1, Partition{1, 1}), 1);
    CHECK(r == PowerSumPoly::power_sum(1, Partition{2}));
  }
  SUBCASE("two variables, p_111") {
    // Oracle: exact evaluation at random rational points in two variables.
    const auto p = PowerSumPoly::power_sum(2, Partition{1, 1, 1});
    const auto r = reduce_length(p, 2);
    PowerSumPoly expected(2);
    expected.add_term(Partition{2, 1}, 3);
    expected.add_term(Partition{3}, -2);
    CHECK(r == expected);
    std::mt19937 rng(7);
    for (int i = 0; i < 20; ++i) {
      const std::vector<CRational> pts{random_rational(rng), random_rational(rng)};
      CHECK(eval_powersum(r, pts) == eval_powersum(p, pts));
    }
  }
  SUBCASE("already short") {
    const auto p = PowerSumPoly::power_sum(3, Partition{1, 1});
    CHECK(reduce_length(p, 3) == p);
  }
}

TEST_CASE("reduce_length is exact, idempotent and weight preserving (500 random cases)") {
  std::mt19937 rng(20261018);
  std::uniform_int_distribution<int> nvars(1, 4);
  int checked = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = nvars(rng);
    const Partition mu = random_partition(rng, 6, 10);
    const CRational c = random_rational(rng);
    const auto p = PowerSumPoly::power_sum(n, mu, c.is_zero() ? CRational(1) : c);
    const auto r = reduce_length(p, n);
    CHECK(r.max_length() <= n);
    CHECK(r.is_homogeneous());
    if (!r.is_zero()) CHECK(r.max_weight() == mu.weight());
    CHECK(reduce_length(r, n) == r);
    std::vector<CRational> pts;
    for (int i = 0; i < n; ++i) pts.push_back(random_rational(rng));
    CHECK(eval_powersum(r, pts) == eval_powersum(p, pts));
    ++checked;
  }
  CHECK(checked == 500);
}
