#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <set>
#include <stdexcept>
#include <vector>

#include "m2q/parallel.hpp"
#include "m2q/random.hpp"

using namespace m2q;
using doctest::Approx;

TEST_CASE("splitmix64 reference values") {
  // First outputs of the reference SplitMix64 generator seeded with 0.
  CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
  CHECK(splitmix64(0x9e3779b97f4a7c15ULL) == 0x6e789e6aa1b965f4ULL);
}

TEST_CASE("derive_seed separates streams") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 4; ++s) {
    for (std::uint64_t k = 0; k < 256; ++k) seen.insert(derive_seed(s, k));
  }
  CHECK(seen.size() == 4 * 256);
}

TEST_CASE("Rng is reproducible and roughly standard normal") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.normal() == b.normal());
  Rng r(7);
  const int n = 200000;
  double sum = 0.0, sq = 0.0, u = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = r.normal();
    sum += z;
    sq += z * z;
  }
  for (int i = 0; i < n; ++i) u += r.uniform();
  CHECK(sum / n == Approx(0.0).epsilon(0.01).scale(1.0));
  CHECK(sq / n == Approx(1.0).epsilon(0.02));
  CHECK(u / n == Approx(0.5).epsilon(0.01));
}

TEST_CASE("random_unit_vector") {
  const auto v = random_unit_vector(9, 3);
  CHECK(v.coords().norm() == Approx(1.0).epsilon(1e-14));
  CHECK(random_unit_vector(9, 3).coords() == v.coords());
  CHECK(random_unit_vector(9, 4).coords() != v.coords());
}

TEST_CASE("parallel_for covers every index once for any worker count") {
  for (std::size_t threads : {1u, 2u, 3u, 8u, 64u}) {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; }, threads);
    for (int h : hits) CHECK(h == 1);
  }
  std::atomic<int> calls{0};
  parallel_for(0, [&](std::size_t) { ++calls; }, 4);
  CHECK(calls == 0);
}

TEST_CASE("parallel_for rethrows worker exceptions") {
  CHECK_THROWS_AS(parallel_for(
                      100,
                      [](std::size_t i) {
                        if (i == 57) throw std::runtime_error("boom");
                      },
                      4),
                  std::runtime_error);
}

TEST_CASE("thread_count honours M2Q_THREADS") {
  ::setenv("M2Q_THREADS", "3", 1);
  CHECK(thread_count() == 3);
  ::setenv("M2Q_THREADS", "junk", 1);
  CHECK(thread_count() >= 1);
  ::unsetenv("M2Q_THREADS");
  CHECK(thread_count() >= 1);
}
