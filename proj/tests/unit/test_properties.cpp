#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "m2q/certify.hpp"
#include "m2q/oracle.hpp"
#include "properties.hpp"
#include "suite.hpp"

using namespace m2q;

TEST_CASE("inequality chain on a randomized sample") {
  for (const auto& inst : testing::randomized_suite(48, 11)) {
    CAPTURE(inst.label);
    const auto cert = proxy_certificate(inst.x, inst.q);
    const auto s = testing::inequality_chain(inst.x, inst.q, cert, 16);
    CHECK(s.holder <= 1e-8);
    CHECK(s.mtilde <= 1e-8);
    CHECK(s.amgm <= 1e-8);
    CHECK(s.image_vs_frob <= 1e-8);
    CHECK(s.frob_vs_quad <= 1e-8);
    CHECK(s.quad_vs_top <= 1e-8);
  }
}

TEST_CASE("sandwich with a warm-started oracle") {
  for (const auto& inst : testing::randomized_suite(24, 12)) {
    CAPTURE(inst.label);
    const auto cert = proxy_certificate(inst.x, inst.q);
    const auto warm = cert.list.directions();
    OracleOptions oo;
    oo.restarts = 8;
    const auto o = oracle_lower_bound(inst.x, inst.q, oo, warm);
    CHECK(*cert.report.list_max <= cert.report.certified_upper);
    CHECK(o.value >= *cert.report.list_max - 1e-6);
    CHECK(o.value <= cert.report.certified_upper * (1 + 1e-6));
  }
}

TEST_CASE("q = 2 certificate is the scaled top singular value") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto x = testing::make_kind(GeneratorKind::gaussian, 64, 2 + static_cast<Index>(s % 6), s);
    const auto r = proxy_certificate(x, 2).report;
    CHECK(r.factor == 1.0);
    CHECK(testing::rel_diff(r.certified_upper, testing::two_norm_ref(x)) <= 1e-6);
  }
}

TEST_CASE("homogeneity and permutation invariance") {
  const auto x = testing::make_kind(GeneratorKind::planted_spike, 64, 6, 4);
  const auto base = proxy_certificate(x, 4).report;
  for (double c : {1e-3, 0.37, 2.0, 1e4}) {
    const DataMatrix cx(RowMatrix(c * x.entries()));
    const auto r = proxy_certificate(cx, 4).report;
    CHECK(testing::rel_diff(*r.list_max, c * *base.list_max) <= 1e-9);
    CHECK(testing::rel_diff(r.certified_upper, c * base.certified_upper) <= 1e-9);
    CHECK(testing::rel_diff(baseline_certificate(cx, 4).certified_upper,
                            c * baseline_certificate(x, 4).certified_upper) <= 1e-9);
  }
  std::vector<Index> perm(64);
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 g(3);
  std::shuffle(perm.begin(), perm.end(), g);
  RowMatrix shuffled(64, 6);
  for (Index i = 0; i < 64; ++i) shuffled.row(i) = x.entries().row(perm[static_cast<std::size_t>(i)]);
  const auto r = proxy_certificate(DataMatrix(shuffled), 4).report;
  CHECK(*r.list_max == *base.list_max);
  CHECK(r.certified_upper == base.certified_upper);
  CHECK(baseline_certificate(DataMatrix(shuffled), 4).certified_upper ==
        baseline_certificate(x, 4).certified_upper);
}

TEST_CASE("results do not depend on the worker count") {
  const auto x = testing::make_kind(GeneratorKind::gaussian, 300, 7, 9);
  CertifyConfig one;
  one.threads = 1;
  const auto ref = proxy_certificate(x, 4, one);
  for (std::size_t t : {2u, 3u, 8u}) {
    CertifyConfig cfg;
    cfg.threads = t;
    const auto c = proxy_certificate(x, 4, cfg);
    CHECK(*c.report.list_max == *ref.report.list_max);
    CHECK(c.report.certified_upper == ref.report.certified_upper);
    CHECK(c.mi_norms == ref.mi_norms);
    CHECK(c.mtilde == ref.mtilde);
    CHECK(c.report.best_direction->coords() == ref.report.best_direction->coords());
  }
}

TEST_CASE("the sup of ||M_v|| versus ||X||^4 at d = 2 (logged, not asserted)") {
  // With q = 4, M_v = E_i <x_i,v>^2 x_i x_i^T and sup_v ||M_v|| >= ||X||^4.
  const auto x = testing::make_kind(GeneratorKind::gaussian, 50, 2, 6);
  double sup_m = 0.0, sup_x = 0.0;
  for (int k = 0; k < 20000; ++k) {
    const double t = M_PI * k / 20000.0;
    const Vector v{{std::cos(t), std::sin(t)}};
    Matrix mv = Matrix::Zero(2, 2);
    for (Index i = 0; i < 50; ++i) {
      const Vector xi = x.row(i).transpose();
      mv += std::pow(xi.dot(v), 2) * xi * xi.transpose() / 50.0;
    }
    sup_m = std::max(sup_m, testing::top_eigenvalue_dense(mv));
    sup_x = std::max(sup_x, testing::moment_ref(x, v, 4));
  }
  MESSAGE("sup ||M_v|| = " << sup_m << ", ||X||^4 = " << sup_x
                           << ", gap = " << (sup_m - sup_x) / sup_x);
  CHECK(sup_m >= sup_x * (1 - 1e-9));
}
