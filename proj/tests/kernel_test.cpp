#include <doctest.h>

#include <cmath>
#include <random>

#include "fraccouple/errors.hpp"
#include "fraccouple/kernel.hpp"
#include "mp_oracle.hpp"

using fraccouple::build_kernel;
using fraccouple::FracKernel;

TEST_CASE("first weights match the Gamma-function definition") {
  const FracKernel k = build_kernel(0.4, 3);
  // a_2 = d(1-d)/2, a_3 = d(1-d)(2-d)/6
  CHECK(k.weights()[0] == 0.4);
  CHECK(k.weights()[1] == doctest::Approx(0.12).epsilon(1e-15));
  CHECK(k.weights()[2] == doctest::Approx(0.064).epsilon(1e-15));
  for (std::size_t n = 1; n <= 3; ++n) {
    CHECK(k.weight_at(n) == doctest::Approx(oracle::weight(0.4, n)).epsilon(1e-14));
  }
}

TEST_CASE("d = 0 gives an all-zero kernel") {
  const FracKernel k = build_kernel(0.0, 50);
  for (double w : k.weights()) CHECK(w == 0.0);
  CHECK(k.tail_mass() == 1.0);
}

TEST_CASE("weight_at is 1-based and range checked") {
  CHECK(build_kernel(0.3, 100).weight_at(1) == 0.3);
  CHECK(build_kernel(0.4, 100).weight_at(2) == doctest::Approx(0.12).epsilon(1e-15));
  CHECK_THROWS_AS(build_kernel(0.4, 100).weight_at(101), fraccouple::IndexError);
  CHECK_THROWS_AS(build_kernel(0.4, 100).weight_at(0), fraccouple::IndexError);
}

TEST_CASE("parameter errors") {
  CHECK_THROWS_AS(build_kernel(0.5, 10), fraccouple::ParameterError);
  CHECK_THROWS_AS(build_kernel(-0.5, 10), fraccouple::ParameterError);
  CHECK_THROWS_AS(build_kernel(std::nan(""), 10), fraccouple::ParameterError);
  CHECK_THROWS_AS(build_kernel(0.2, 0), fraccouple::ParameterError);
  CHECK_NOTHROW(build_kernel(-0.49, 10));
}

TEST_CASE("recurrence holds to rounding for random d") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(0.0, 0.5);
  for (int trial = 0; trial < 50; ++trial) {
    const double d = dist(rng);
    const FracKernel k = build_kernel(d, 2000);
    const auto a = k.weights();
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
      const double n = static_cast<double>(i + 1);
      REQUIRE(std::abs(a[i + 1] - a[i] * (n - d) / (n + 1.0)) <= 1e-15 * std::abs(a[i]));
    }
  }
}

TEST_CASE("positive d: weights positive, decreasing, partial sums below one") {
  for (double d : {0.05, 0.2, 0.35, 0.49}) {
    const FracKernel k = build_kernel(d, 5000);
    const auto a = k.weights();
    double partial = 0.0;
    double prev_partial = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      REQUIRE(a[i] > 0.0);
      if (i > 0) REQUIRE(a[i] < a[i - 1]);
      partial += a[i];
      REQUIRE(partial > prev_partial);
      REQUIRE(partial < 1.0);
      prev_partial = partial;
    }
    CHECK(k.tail_mass() > 0.0);
  }
}

TEST_CASE("tail mass agrees with the exact partial-sum identity") {
  for (double d : {0.1, 0.25, 0.4}) {
    for (std::size_t L : {1u, 10u, 1000u, 100000u}) {
      CHECK(build_kernel(d, L).tail_mass() == doctest::Approx(oracle::tail_mass(d, L)).epsilon(1e-9));
    }
  }
}

TEST_CASE("L = 1e6 at d = 0.4 recovers nearly all weight mass") {
  const FracKernel k = build_kernel(0.4, 1000000);
  const double exact = oracle::tail_mass(0.4, 1000000);
  CHECK(std::abs(k.tail_mass()) < 1e-2);
  CHECK(k.tail_mass() == doctest::Approx(exact).epsilon(1e-8));
}

TEST_CASE("weights decay as d / Γ(1-d) n^-(1+d)") {
  for (double d : {0.1, 0.3, 0.45}) {
    const FracKernel k = build_kernel(d, 100000);
    const double limit = d / std::tgamma(1.0 - d);
    for (std::size_t n : {10000u, 50000u, 100000u}) {
      const double ratio = k.weight_at(n) / std::pow(static_cast<double>(n), -(1.0 + d));
      CHECK(ratio == doctest::Approx(limit).epsilon(0.01));
    }
  }
}

TEST_CASE("kernels for d < d' start ordered and cross at most once") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(0.0, 0.5);
  for (int trial = 0; trial < 30; ++trial) {
    double d = dist(rng);
    double e = dist(rng);
    if (d > e) std::swap(d, e);
    if (e - d < 1e-6) continue;
    const FracKernel ka(d, 3000), kb(e, 3000);
    const auto a = ka.weights();
    const auto b = kb.weights();
    CHECK(a[0] < b[0]);
    int crossings = 0;
    for (std::size_t i = 1; i < a.size(); ++i) {
      if ((a[i] > b[i]) != (a[i - 1] > b[i - 1])) ++crossings;
    }
    CHECK(crossings <= 1);
  }
}

TEST_CASE("negative d follows the same recurrence") {
  const FracKernel k = build_kernel(-0.3, 60);
  for (std::size_t n : {1u, 2u, 5u, 10u, 50u}) {
    CHECK(k.weight_at(n) == doctest::Approx(oracle::weight(-0.3, n)).epsilon(1e-13));
  }
}

TEST_CASE("renormalized kernel has unit mass") {
  const FracKernel k = build_kernel(0.3, 1000).renormalized();
  CHECK(std::abs(k.tail_mass()) < 1e-14);
  CHECK(k.reversed().front() == k.weights().back());
}
