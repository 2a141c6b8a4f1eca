#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "m2q/certify.hpp"
#include "m2q/oracle.hpp"
#include "suite.hpp"

using namespace m2q;
using doctest::Approx;

TEST_CASE("ascend examples") {
  const auto i2 = DataMatrix::identity(2);
  const auto a = ascend(i2, 4, UnitVector::normalized(Vector{{0.8, 0.6}}));
  CHECK(a.value == Approx(std::pow(2.0, -0.25)).epsilon(1e-9));
  CHECK(std::abs(a.vector[0]) == Approx(1.0).epsilon(1e-6));

  const Vector u = random_unit_vector(4, 2).coords();
  RowMatrix r(6, 4);
  for (Index i = 0; i < 6; ++i) r.row(i) = 2.5 * u.transpose();
  const auto b = ascend(DataMatrix(r), 6, random_unit_vector(4, 5));
  CHECK(b.value == Approx(2.5).epsilon(1e-12));

  const auto x = testing::make_kind(GeneratorKind::gaussian, 80, 5, 1);
  const auto c = ascend(x, 2, random_unit_vector(5, 3), {5000, 1e-15});
  CHECK(testing::rel_diff(c.value, testing::two_norm_ref(x)) <= 1e-6);
}

TEST_CASE("ascent never loses ground") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto x = testing::make_kind(GeneratorKind::planted_spike, 64, 6, s);
    const auto start = random_unit_vector(6, s);
    const auto a = ascend(x, 4, start);
    CHECK(a.value >= expectation_norm_of_image(x, start.coords(), 4) * (1 - 1e-12));
    CHECK(testing::rel_diff(a.value, expectation_norm_of_image(x, a.vector.coords(), 4)) <= 1e-12);
  }
}

TEST_CASE("zero-gradient start is perturbed") {
  // Start orthogonal to every row: the update maps to zero.
  const auto x = DataMatrix::from_rows({{1.0, 0.0}, {2.0, 0.0}});
  const auto a = ascend(x, 4, UnitVector::basis(2, 1));
  CHECK(a.value > 0.5);
}

TEST_CASE("oracle_lower_bound") {
  const auto i2 = DataMatrix::identity(2);
  const auto warm = proxy_certificate(i2, 4).list.directions();
  const auto o = oracle_lower_bound(i2, 4, {}, warm);
  CHECK(o.value >= std::pow(2.0, -0.25) - 1e-12);
  CHECK(o.restarts_used == 64 + static_cast<int>(warm.size()));
  CHECK(o.converged_fraction >= 0.0);
  CHECK(o.converged_fraction <= 1.0);

  const auto z = oracle_lower_bound(DataMatrix(RowMatrix::Zero(3, 3)), 4);
  CHECK(z.value == 0.0);
  OracleOptions bad;
  bad.restarts = -1;
  CHECK_THROWS_AS(oracle_lower_bound(i2, 4, bad), std::invalid_argument);
  CHECK_THROWS_AS(oracle_lower_bound(i2, 3), std::invalid_argument);
}

TEST_CASE("oracle is deterministic and thread independent") {
  const auto x = testing::make_kind(GeneratorKind::gaussian, 100, 6, 8);
  OracleOptions a;
  a.threads = 1;
  a.seed = 4;
  OracleOptions b = a;
  b.threads = 5;
  const auto ra = oracle_lower_bound(x, 4, a);
  const auto rb = oracle_lower_bound(x, 4, b);
  CHECK(ra.value == rb.value);
  CHECK(ra.vector.coords() == rb.vector.coords());
}

TEST_CASE("grid oracle") {
  const auto i2 = DataMatrix::identity(2);
  const auto g = grid_oracle_2d(i2, 4, 10000);
  CHECK(std::abs(g.value - std::pow(2.0, -0.25)) <= 1e-6);
  REQUIRE(g.grid_error_bound);
  CHECK(*g.grid_error_bound > 0.0);
  CHECK(grid_oracle_2d(DataMatrix::from_rows({{1, 0}, {1, 0}}), 4, 1000).value ==
        Approx(1.0).epsilon(1e-12));
  const double h = 1.0 / std::sqrt(2.0);
  const auto diag = grid_oracle_2d(DataMatrix::from_rows({{h, h}, {h, h}}), 6, 1000);
  CHECK(diag.value == Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(grid_oracle_2d(DataMatrix::identity(3), 4), std::invalid_argument);
  CHECK_THROWS_AS(grid_oracle_2d(i2, 4, 999), std::invalid_argument);
}

TEST_CASE("multi-start oracle matches the grid at d = 2") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto x = testing::make_kind(GeneratorKind::gaussian, 40, 2, s);
    const auto o = oracle_lower_bound(x, 4);
    const auto g = grid_oracle_2d(x, 4);
    CHECK(testing::rel_diff(o.value, g.value) <= 1e-4);
  }
}

TEST_CASE("p->q oracle") {
  const auto i2 = DataMatrix::identity(2);
  CHECK(pq_oracle(i2, 1.0, 4).value == Approx(1.0).epsilon(1e-12));
  CHECK(pq_oracle(i2, 4.0, 4).value == Approx(1.0).epsilon(1e-12));
  // p = 1 in d > 2 is the largest column q-norm.
  const auto x = testing::make_kind(GeneratorKind::gaussian, 20, 5, 3);
  double best = 0.0;
  for (Index c = 0; c < 5; ++c) best = std::max(best, lp_norm(x.entries().col(c), 4.0));
  CHECK(pq_oracle(x, 1.0, 4).value == Approx(best).epsilon(1e-12));
  // p = 2 reduces to the 2->q norm in standard units.
  const auto o = oracle_lower_bound(x, 4);
  CHECK(testing::rel_diff(pq_oracle(x, 2.0, 4, 64).value, std::pow(20.0, 0.25) * o.value) <= 1e-6);
}
