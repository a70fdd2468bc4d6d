// Copyright 2026 The gapkac Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gapkac/additive.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "oracles.hpp"

namespace gapkac {
namespace {

TEST(Omega, Examples) {
  EXPECT_EQ(omega(std::uint64_t{1}), 0u);
  EXPECT_EQ(omega(std::uint64_t{12}), 2u);
  EXPECT_EQ(omega(std::uint64_t{30030}), 6u);
  EXPECT_EQ(omega(Natural("340282366920938463463374607431768211455")), 9u);  // 2^128 - 1
  EXPECT_THROW(omega(std::uint64_t{0}), DomainError);
}

TEST(Omega, TableMatchesOracle) {
  const auto t = omega_table(20000);
  for (std::uint32_t m = 1; m <= 20000; ++m) {
    ASSERT_EQ(t[m], oracle::omega(m)) << m;
    ASSERT_EQ(omega(std::uint64_t{m}), oracle::omega(m)) << m;
  }
}

TEST(Omega, AdditiveOverCoprimePairs) {
  std::mt19937_64 gen(3);
  int checked = 0;
  while (checked < 2000) {
    const std::uint64_t a = 1 + gen() % 1'000'000, b = 1 + gen() % 1'000'000;
    if (std::gcd(a, b) != 1) continue;
    ASSERT_EQ(omega(a * b), omega(a) + omega(b)) << a << " " << b;
    ++checked;
  }
}

TEST(OmegaStar, Examples) {
  const auto a = omega_star(std::uint64_t{20});
  EXPECT_NEAR(a.threshold, 2.4884, 5e-4);
  EXPECT_EQ(a.omega, 2u);
  EXPECT_EQ(a.omega_star, 1u);
  const auto b = omega_star(std::uint64_t{100});
  EXPECT_NEAR(b.threshold, 1.9745, 5e-4);
  EXPECT_EQ(b.omega_star, 2u);
  const auto c = omega_star(std::uint64_t{1024});
  EXPECT_NEAR(c.threshold, 1.8490, 5e-4);
  EXPECT_EQ(c.omega_star, 1u);
  EXPECT_THROW(omega_star(std::uint64_t{19}), DomainError);
}

TEST(OmegaStar, BoundedByOmegaWithEqualityAboveThreshold) {
  for (std::uint64_t m = 20; m <= 30000; ++m) {
    const auto p = omega_star(m);
    ASSERT_LE(p.omega_star, p.omega);
    const auto least = oracle::factor(m)[0].first;
    if (static_cast<double>(least) >= p.threshold) ASSERT_EQ(p.omega_star, p.omega) << m;
  }
}

TEST(OmegaStar, BigArgument) {
  // threshold for m ~ 2^200 is about 138.6/(4.93)^2 ~ 5.7: the factor 2 and 3 drop out.
  const Natural m = (Natural(1) << 190) * 3 * 7 * 1000003;
  const auto p = omega_star(m);
  EXPECT_EQ(p.omega, 4u);
  EXPECT_EQ(p.omega_star, 2u);
}

TEST(EkNormalization, Examples) {
  const auto one = ek_normalization(StronglyAdditive::omega_function(), 10);
  const double A = 0.5 + 1.0 / 3 + 0.2 + 1.0 / 7;
  EXPECT_NEAR(one.A, A, 1e-15);
  EXPECT_NEAR(one.B, std::sqrt(A), 1e-15);
  StronglyAdditive zero("zero", [](std::uint64_t) { return 0.0; });
  EXPECT_THROW(ek_normalization(zero, 10), DomainError);
  StronglyAdditive two("two", [](std::uint64_t p) { return p == 2 ? 1.0 : 0.0; });
  const auto t = ek_normalization(two, 10);
  EXPECT_NEAR(t.A, 0.5, 1e-15);
  EXPECT_NEAR(t.B, std::sqrt(0.5), 1e-15);
  EXPECT_THROW(ek_normalization(two, 1.5), DomainError);
}

TEST(EkNormalization, MertensSumByDirectEnumeration) {
  for (double x : {2.0, 100.0, 12345.0}) {
    double want = 0.0;
    for (auto p : oracle::primes_upto(static_cast<std::uint64_t>(x))) want += 1.0 / double(p);
    EXPECT_NEAR(ek_normalization(StronglyAdditive::omega_function(), x).A, want, 1e-12);
  }
}

TEST(StronglyAdditive, RejectsLargeValues) {
  StronglyAdditive big("big", [](std::uint64_t) { return 1.5; });
  EXPECT_THROW(big.at_prime(3), DomainError);
  StronglyAdditive half("half", [](std::uint64_t p) { return p == 3 ? 0.5 : 0.0; });
  EXPECT_DOUBLE_EQ(half(std::uint64_t{81}), 0.5);
  EXPECT_DOUBLE_EQ(half(std::uint64_t{7}), 0.0);
}

TEST(NormalCdf, QuadratureOracle) {
  for (double z = -8.0; z <= 8.0; z += 0.125) {
    ASSERT_NEAR(normal_cdf(z), oracle::normal_cdf(z), 1e-12) << z;
  }
  EXPECT_DOUBLE_EQ(normal_cdf(0.0), 0.5);
  EXPECT_EQ(normal_cdf(std::numeric_limits<double>::infinity()), 1.0);
  EXPECT_EQ(normal_cdf(-std::numeric_limits<double>::infinity()), 0.0);
  EXPECT_NEAR(normal_cdf(1.96), 0.9750021048517795, 1e-12);
}

TEST(NormalCdf, Symmetry) {
  for (double z = 0.0; z <= 10.0; z += 0.01) {
    ASSERT_NEAR(normal_cdf(z) + normal_cdf(-z), 1.0, 1e-12) << z;
  }
}

TEST(GaussianMass, Examples) {
  EXPECT_EQ(gaussian_mass(0.0, std::numeric_limits<double>::infinity()), 1.0);
  EXPECT_NEAR(gaussian_mass(0.0, 1.0), oracle::normal_cdf(1.0) - oracle::normal_cdf(-1.0), 1e-12);
  const double phi3 = std::exp(-4.5) / std::sqrt(2 * M_PI);
  EXPECT_NEAR(gaussian_mass(3.0, 0.001), 2 * 0.001 * phi3, 1e-9);
  EXPECT_THROW(gaussian_mass(0.0, 0.0), DomainError);
  EXPECT_THROW(gaussian_mass(0.0, -1.0), DomainError);
}

TEST(EmpiricalClt, ConstantStatistic) {
  EXPECT_EQ(empirical_clt([](std::uint64_t) { return 0.0; }, 100, 1.0), 1.0);
  EXPECT_EQ(empirical_clt([](std::uint64_t) { return 0.0; }, 100, -1.0), 0.0);
  EXPECT_THROW(empirical_clt([](std::uint64_t) { return 0.0; }, 99, 0.0), DomainError);
}

TEST(EmpiricalClt, StepFunctionProperties) {
  const auto d = erdos_kac_sample(5000);
  double prev = 0.0;
  for (double z = -6.0; z <= 6.0; z += 0.05) {
    const double c = d.cdf(z);
    ASSERT_GE(c, prev);
    ASSERT_GE(c, 0.0);
    ASSERT_LE(c, 1.0);
    prev = c;
  }
  EXPECT_EQ(d.cdf(-100.0), 0.0);
  EXPECT_EQ(d.cdf(100.0), 1.0);
}

TEST(ErdosKac, PinnedAt1e4) {
  const auto d = erdos_kac_sample(10000);
  EXPECT_EQ(d.size(), 9998u);
  EXPECT_NEAR(d.cdf(0.0), 4583.0 / 9998.0, 1e-15);
}

TEST(EmpiricalDistribution, KsExactDominatesGrid) {
  const auto d = erdos_kac_sample(20000);
  std::vector<double> grid;
  for (double z = -4.0; z <= 4.0; z += 0.001) grid.push_back(z);
  EXPECT_GE(d.ks_distance() + 1e-15, d.ks_distance(grid));
  // Brute force over sample points and their left limits.
  double brute = 0.0;
  const auto& v = d.values();
  const double n = double(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double F = oracle::normal_cdf(v[i]);
    brute = std::max(brute, std::abs(double(i + 1) / n - F));
    brute = std::max(brute, std::abs(F - double(i) / n));
  }
  EXPECT_NEAR(d.ks_distance(), brute, 1e-12);
}

TEST(EmpiricalDistribution, OpenInterval) {
  EmpiricalDistribution d({-1.0, 0.0, 1.0, 2.0});
  EXPECT_DOUBLE_EQ(d.fraction_in(-1.0, 1.0), 0.25);
  EXPECT_DOUBLE_EQ(d.fraction_in(-1.5, 1.5), 0.75);
  EXPECT_DOUBLE_EQ(d.cdf(1.0), 0.75);
}

}  // namespace
}  // namespace gapkac
