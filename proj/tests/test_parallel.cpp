#include <cstdint>
#include <vector>

#include "doctest.h"
#include "sllg/parallel.hpp"
#include "sllg/rng.hpp"

using namespace sllg;

TEST_CASE("parallel_for covers every index exactly once") {
  const std::ptrdiff_t n = 10000;
  std::vector<int> hits(static_cast<std::size_t>(n), 0);
  parallel_for(n, [&](std::ptrdiff_t i) { hits[static_cast<std::size_t>(i)] += 1; });
  for (int h : hits) CHECK(h == 1);
}

TEST_CASE("parallel_sum is bitwise equal to serial_sum") {
  RngStream rng(31, 0);
  // sizes straddling the reduction chunk boundary
  for (std::ptrdiff_t n : {1L, 7L, 4095L, 4096L, 4097L, 100000L}) {
    auto f = [&](std::ptrdiff_t i) { return rng.normal(static_cast<std::uint64_t>(i)) * 1e-3; };
    double a = parallel_sum(n, f);
    double b = serial_sum(n, f);
    CHECK(a == b);
  }
  CHECK(parallel_sum(0, [](std::ptrdiff_t) { return 1.0; }) == 0.0);
}

TEST_CASE("bitwise reduction is independent of the worker count") {
  RngStream rng(32, 0);
  auto f = [&](std::ptrdiff_t i) { return rng.normal(static_cast<std::uint64_t>(i)); };
  int before = max_workers();
  set_workers(1);
  double one = parallel_sum(50000, f);
  set_workers(4);
  double four = parallel_sum(50000, f);
  set_workers(before);
  CHECK(one == four);
}

TEST_CASE("parallel_max finds the maximum") {
  const std::ptrdiff_t n = 30000;
  auto f = [](std::ptrdiff_t i) { return i == 17777 ? 5.0 : 1.0 / (1.0 + static_cast<double>(i)); };
  CHECK(parallel_max(n, f) == 5.0);
}
