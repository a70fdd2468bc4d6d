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

// Slow, obviously-correct reference implementations used as test oracles.
// None of these share code with the library.

#include <cmath>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace oracle {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// Distinct prime factors with exponents, by trial division.
inline std::vector<std::pair<std::uint64_t, unsigned>> factor(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

// Plain Eratosthenes over a byte array.
inline std::vector<std::uint64_t> primes_upto(std::uint64_t n) {
  std::vector<char> composite(n + 1, 0);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = 1;
  }
  return out;
}

inline double von_mangoldt(std::uint64_t n) {
  if (n < 2) return 0.0;
  const auto f = factor(n);
  return f.size() == 1 ? std::log(static_cast<double>(f[0].first)) : 0.0;
}

inline double psi(std::uint64_t x, std::uint64_t q, std::uint64_t a) {
  double acc = 0.0;
  for (std::uint64_t n = 1; n <= x; ++n) {
    if (n % q == a) acc += von_mangoldt(n);
  }
  return acc;
}

inline double simpson_step(const std::function<double(double)>& f, double a, double b,
                           double fa, double fm, double fb, double whole, double eps,
                           int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * eps) {
    return left + right + (left + right - whole) / 15.0;
  }
  return simpson_step(f, a, m, fa, flm, fm, left, eps / 2, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, eps / 2, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double eps = 1e-15) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, eps, 60);
}

// Phi(z) by quadrature of the density from 0.
inline double normal_cdf(double z) {
  const double kInvSqrt2Pi = 0.39894228040143267794;
  auto density = [&](double w) { return kInvSqrt2Pi * std::exp(-0.5 * w * w); };
  if (z >= 0) return 0.5 + integrate(density, 0.0, z);
  return 0.5 - integrate(density, z, 0.0);
}

inline unsigned omega(std::uint64_t m) { return static_cast<unsigned>(factor(m).size()); }

}  // namespace oracle
