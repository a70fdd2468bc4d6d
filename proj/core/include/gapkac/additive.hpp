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

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "gapkac/numeric.hpp"

namespace gapkac {

unsigned omega(std::uint64_t m);
unsigned omega(const Natural& m);

// omega for every 0 <= m <= n, by an additive sieve. Entry 0 and 1 are 0.
std::vector<std::uint8_t> omega_table(std::uint32_t n);

struct AdditiveProfile {
  Natural m;
  unsigned omega = 0;
  unsigned omega_star = 0;
  double threshold = 0.0;  // ln m / (ln ln m)^2
};

double omega_star_threshold(const Natural& m);

// Counts prime divisors p >= ln m / (ln ln m)^2. Defined for m >= 20.
AdditiveProfile omega_star(const Natural& m);
AdditiveProfile omega_star(std::uint64_t m);

// A strongly additive function f(m) = sum over p | m of f(p), |f(p)| <= 1.
class StronglyAdditive {
 public:
  StronglyAdditive(std::string name, std::function<double(std::uint64_t)> at_prime)
      : name_(std::move(name)), at_prime_(std::move(at_prime)) {}

  static StronglyAdditive omega_function();

  const std::string& name() const { return name_; }
  // f(p); throws DomainError if |f(p)| > 1.
  double at_prime(std::uint64_t p) const;
  double operator()(std::uint64_t m) const;

 private:
  std::string name_;
  std::function<double(std::uint64_t)> at_prime_;
};

struct EkNormalization {
  double x = 0.0;
  double A = 0.0;  // sum_{p <= x} f(p)/p
  double B = 0.0;  // sqrt(sum_{p <= x} f(p)^2/p)

  double normalize(double value) const { return (value - A) / B; }
};

// Throws DomainError when x < 2 or B = 0.
EkNormalization ek_normalization(const StronglyAdditive& f, double x);

double normal_cdf(double z);

// Phi(alpha + eps) - Phi(alpha - eps); eps must be positive (may be inf).
double gaussian_mass(double alpha, double eps);

// Empirical distribution of a finite sample, kept sorted.
class EmpiricalDistribution {
 public:
  explicit EmpiricalDistribution(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }

  // Fraction of samples <= z.
  double cdf(double z) const;
  // Fraction of samples in the open interval (lo, hi).
  double fraction_in(double lo, double hi) const;
  // Exact sup_z |F_n(z) - Phi(z)|, checking both sides of every jump.
  double ks_distance() const;
  // max over the grid of |F_n(z) - Phi(z)|.
  double ks_distance(std::span<const double> grid) const;

 private:
  std::vector<double> values_;
};

// Evaluates statistic(m) for first <= m <= last.
EmpiricalDistribution sample_statistic(const std::function<double(std::uint64_t)>& statistic,
                                       std::uint64_t first, std::uint64_t last);

// Empirical CDF at z of statistic(m) over 1 <= m <= n (n >= 100).
double empirical_clt(const std::function<double(std::uint64_t)>& statistic,
                     std::uint64_t n, double z);

// (omega(m) - ln ln m) / sqrt(ln ln m) for 3 <= m <= n; m = 1, 2 are
// excluded because ln ln m <= 0 there.
EmpiricalDistribution erdos_kac_sample(std::uint32_t n);

}  // namespace gapkac
