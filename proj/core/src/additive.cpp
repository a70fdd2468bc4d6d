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

#include <algorithm>
#include <cmath>
#include <limits>

#include "gapkac/primes.hpp"

namespace gapkac {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

}  // namespace

unsigned omega(std::uint64_t m) {
  if (m == 0) throw DomainError("omega(0) is undefined");
  return static_cast<unsigned>(factorize(m).size());
}

unsigned omega(const Natural& m) {
  if (sgn(m) <= 0) throw DomainError("omega requires m >= 1");
  return static_cast<unsigned>(factorize(m).size());
}

std::vector<std::uint8_t> omega_table(std::uint32_t n) {
  std::vector<std::uint8_t> t(static_cast<std::size_t>(n) + 1, 0);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (t[i] != 0) continue;  // has a smaller prime factor
    for (std::uint64_t j = i; j <= n; j += i) ++t[j];
  }
  return t;
}

double omega_star_threshold(const Natural& m) {
  const double lm = log_natural(m);
  const double llm = std::log(lm);
  return lm / (llm * llm);
}

AdditiveProfile omega_star(const Natural& m) {
  if (m < 20) throw DomainError("omega* is defined for m >= 20");
  AdditiveProfile out;
  out.m = m;
  out.threshold = omega_star_threshold(m);
  for (const auto& [p, e] : factorize(m)) {
    ++out.omega;
    // Primes too large for a double are far above any threshold.
    if (!fits_u64(p) || static_cast<double>(to_u64(p)) >= out.threshold) {
      ++out.omega_star;
    }
  }
  return out;
}

AdditiveProfile omega_star(std::uint64_t m) { return omega_star(natural(m)); }

StronglyAdditive StronglyAdditive::omega_function() {
  return StronglyAdditive("omega", [](std::uint64_t) { return 1.0; });
}

double StronglyAdditive::at_prime(std::uint64_t p) const {
  const double v = at_prime_(p);
  if (!(std::fabs(v) <= 1.0)) {
    throw DomainError(name_ + ": |f(p)| > 1 at p = " + std::to_string(p));
  }
  return v;
}

double StronglyAdditive::operator()(std::uint64_t m) const {
  double acc = 0.0;
  for (const auto& [p, e] : factorize(m)) acc += at_prime(p);
  return acc;
}

EkNormalization ek_normalization(const StronglyAdditive& f, double x) {
  if (!(x >= 2.0)) throw DomainError("Erdos-Kac normalization needs x >= 2");
  EkNormalization out;
  out.x = x;
  double second = 0.0;
  for_each_prime(2, static_cast<std::uint64_t>(std::floor(x)), [&](std::uint64_t p) {
    const double v = f.at_prime(p);
    const double pd = static_cast<double>(p);
    out.A += v / pd;
    second += v * v / pd;
  });
  out.B = std::sqrt(second);
  if (out.B == 0.0) throw DomainError("B(x) = 0: normalization undefined");
  return out;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z * kInvSqrt2); }

double gaussian_mass(double alpha, double eps) {
  if (!(eps > 0.0)) throw DomainError("gaussian_mass needs eps > 0");
  const double lo = alpha - eps;
  const double hi = alpha + eps;
  // Work in whichever tail keeps the subtraction well conditioned.
  if (lo >= 0.0) return 0.5 * (std::erfc(lo * kInvSqrt2) - std::erfc(hi * kInvSqrt2));
  if (hi <= 0.0) return 0.5 * (std::erfc(-hi * kInvSqrt2) - std::erfc(-lo * kInvSqrt2));
  return 1.0 - 0.5 * std::erfc(hi * kInvSqrt2) - 0.5 * std::erfc(-lo * kInvSqrt2);
}

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> values)
    : values_(std::move(values)) {
  std::sort(values_.begin(), values_.end());
}

double EmpiricalDistribution::cdf(double z) const {
  if (values_.empty()) return 0.0;
  const auto below = std::upper_bound(values_.begin(), values_.end(), z) - values_.begin();
  return static_cast<double>(below) / static_cast<double>(values_.size());
}

double EmpiricalDistribution::fraction_in(double lo, double hi) const {
  if (values_.empty() || !(lo < hi)) return 0.0;
  const auto b = std::upper_bound(values_.begin(), values_.end(), lo);
  const auto e = std::lower_bound(b, values_.end(), hi);
  return static_cast<double>(e - b) / static_cast<double>(values_.size());
}

double EmpiricalDistribution::ks_distance() const {
  const double n = static_cast<double>(values_.size());
  double best = 0.0;
  std::size_t i = 0;
  while (i < values_.size()) {
    std::size_t j = i;
    while (j < values_.size() && values_[j] == values_[i]) ++j;
    const double phi = normal_cdf(values_[i]);
    best = std::max(best, std::fabs(static_cast<double>(i) / n - phi));
    best = std::max(best, std::fabs(static_cast<double>(j) / n - phi));
    i = j;
  }
  return best;
}

double EmpiricalDistribution::ks_distance(std::span<const double> grid) const {
  double best = 0.0;
  for (double z : grid) best = std::max(best, std::fabs(cdf(z) - normal_cdf(z)));
  return best;
}

EmpiricalDistribution sample_statistic(const std::function<double(std::uint64_t)>& statistic,
                                       std::uint64_t first, std::uint64_t last) {
  std::vector<double> values;
  if (last >= first) values.reserve(last - first + 1);
  for (std::uint64_t m = first; m <= last && m >= first; ++m) {
    values.push_back(statistic(m));
    if (m == std::numeric_limits<std::uint64_t>::max()) break;
  }
  return EmpiricalDistribution(std::move(values));
}

double empirical_clt(const std::function<double(std::uint64_t)>& statistic,
                     std::uint64_t n, double z) {
  if (n < 100) throw DomainError("empirical_clt needs N >= 100");
  return sample_statistic(statistic, 1, n).cdf(z);
}

EmpiricalDistribution erdos_kac_sample(std::uint32_t n) {
  const auto w = omega_table(n);
  std::vector<double> values;
  for (std::uint64_t m = 3; m <= n; ++m) {
    const double ll = std::log(std::log(static_cast<double>(m)));
    values.push_back((w[m] - ll) / std::sqrt(ll));
  }
  return EmpiricalDistribution(std::move(values));
}

}  // namespace gapkac
