#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "m2q/generators.hpp"
#include "m2q/oracle.hpp"
#include "m2q/spectral.hpp"
#include "suite.hpp"

using namespace m2q;
using doctest::Approx;

TEST_CASE("generators are deterministic") {
  for (auto kind : {GeneratorKind::gaussian, GeneratorKind::rank_one, GeneratorKind::planted_spike,
                    GeneratorKind::identity}) {
    CHECK(testing::make_kind(kind, 30, 4, 5) == testing::make_kind(kind, 30, 4, 5));
  }
  CHECK_FALSE(gen_gaussian(10, 3, 1) == gen_gaussian(10, 3, 2));
  CHECK(gen_appendix_a_spike(4, 2.0, 9) == gen_appendix_a_spike(4, 2.0, 9));
}

TEST_CASE("kind names round trip") {
  for (auto name : {"gaussian", "appendixA_spike", "rank_one", "identity", "planted_spike"}) {
    CHECK(to_string(generator_kind_from_string(name)) == name);
  }
  CHECK_THROWS_AS(generator_kind_from_string("nope"), std::invalid_argument);
}

TEST_CASE("gaussian rows") {
  const auto x = gen_gaussian(4096, 16, 3);
  const double mean_sq = x.entries().rowwise().squaredNorm().mean();
  CHECK(mean_sq >= 0.9 * 16);
  CHECK(mean_sq <= 1.1 * 16);
  for (Index d : {4, 16, 32}) {
    const Index n = 4 * d * d;
    const auto g = gen_gaussian(n, d, 11);
    const Matrix cov = g.entries().transpose() * g.entries() / static_cast<double>(n);
    Eigen::SelfAdjointEigenSolver<Matrix> es(cov - Matrix::Identity(d, d));
    CHECK(es.eigenvalues().cwiseAbs().maxCoeff() <= 5.0 * std::sqrt(double(d) / double(n)));
  }
}

TEST_CASE("gaussian fourth moment at d = 16") {
  for (std::uint64_t s = 0; s < 3; ++s) {
    const auto x = gen_gaussian(4096, 16, s);
    OracleOptions oo;
    oo.restarts = 16;
    const double v4 = std::pow(oracle_lower_bound(x, 4, oo).value, 4);
    CHECK(v4 >= 2.0);
    CHECK(v4 <= 6.0);
  }
}

TEST_CASE("appendixA_spike layout") {
  const Index d = 6;
  const double c = 3.0;
  const auto x = gen_appendix_a_spike(d, c, 4);
  const Index n = x.rows();
  CHECK(n % d == 0);
  CHECK(n == d * static_cast<Index>(std::llround(c * d * d)));
  const Index r = n / d;
  Index spiked = 0;
  double norm_sum = 0.0;
  for (Index i = 0; i < n; ++i) {
    const double first = x.entries()(i, 0);
    if (first != 0.0) {
      CHECK(i < r);
      CHECK(std::abs(first) == std::sqrt(double(d)));
      ++spiked;
      norm_sum += x.row(i).norm();
    }
  }
  CHECK(spiked == r);
  const double mean_norm = norm_sum / double(r);
  CHECK(mean_norm >= 0.5 * std::pow(double(d), 0.75));
  CHECK(mean_norm <= 2.0 * std::pow(double(d), 0.75));
  double e1 = 0.0;
  for (Index i = 0; i < n; ++i) e1 += std::pow(x.entries()(i, 0), 4);
  CHECK(e1 / double(n) >= double(d) * (1 - 1e-12));
  CHECK_THROWS_AS(gen_appendix_a_spike(2, 50.0, 1), std::invalid_argument);
}

TEST_CASE("rank_one") {
  const auto x = gen_rank_one(10, 4, 2.0, 7);
  const Vector u = rank_one_direction(4, 7);
  CHECK(u.norm() == Approx(1.0));
  for (Index i = 0; i < 10; ++i) CHECK((x.row(i).transpose() - 2.0 * u).norm() == 0.0);
  CHECK(gen_rank_one(5, 3, 0.0, 1).is_zero());
  CHECK(oracle_lower_bound(gen_rank_one(10, 4, 2.0, 7), 6).value == Approx(2.0).epsilon(1e-12));
}

TEST_CASE("planted_spike") {
  const auto all = gen_planted_spike(20, 3, 1.0, 2.0, 5);
  for (Index i = 0; i < 20; ++i) CHECK(all.row(i).transpose() == 2.0 * Vector::Unit(3, 0));
  const Index d = 8;
  const auto x = gen_planted_spike(800, d, 1.0 / d, std::sqrt(double(d)), 3);
  const double e1 = testing::moment_ref(x, Vector::Unit(d, 0), 4);
  CHECK(e1 >= double(d) * (1 - 1e-12));
  const Vector e = Vector::Unit(d, 0);
  const auto o = oracle_lower_bound(x, 4, {}, std::span<const Vector>(&e, 1));
  CHECK(std::pow(o.value, 4) >= (1.0 / d) * std::pow(double(d), 2) - 1e-9);
  CHECK_THROWS_AS(gen_planted_spike(10, 3, 0.0, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_planted_spike(10, 3, 0.5, -1.0, 1), std::invalid_argument);
}

TEST_CASE("identity") {
  CHECK(gen_identity(3, 3) == DataMatrix::identity(3));
  const auto x = gen_identity(5, 2);
  CHECK(x.row(4).transpose() == Vector::Unit(2, 0));
}

TEST_CASE("generate validates specs") {
  GeneratorSpec s;
  s.kind = GeneratorKind::gaussian;
  s.n = 0;
  s.d = 3;
  CHECK_THROWS_AS(generate(s), std::invalid_argument);
  s.kind = GeneratorKind::appendix_a_spike;
  s.d = 4;
  s.params.c_multiplier = 2.0;
  CHECK(resolved_rows(s) == 4 * 32);
  CHECK(generate(s).rows() == 4 * 32);
  s.params.c_multiplier = 0.5;
  CHECK_THROWS_AS(generate(s), std::invalid_argument);
}
