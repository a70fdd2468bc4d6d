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

/**
 * Finite Kubilius models.
 *
 * Both models partition a finite sample space into cells E_k, one per
 * squarefree divisor k of D: the elements divisible by exactly the primes
 * of k among the primes of D. Each cell carries the frequency measure nu
 * and an independent product measure (mu, or mu* for the shifted model).
 *
 * Cells are indexed by a bitmask over the model's primes (bit i set when
 * primes[i] divides k), so cell i of a model with n primes has k equal to
 * the product of the primes selected by i.
 */

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "gapkac/numeric.hpp"

namespace gapkac {

inline constexpr unsigned kDefaultMaxCellPrimes = 20;

struct KubiliusCell {
  Natural k;
  std::uint32_t mask = 0;
  std::uint64_t count = 0;  // |E_k|
  Ratio nu;
  Ratio mu;
};

struct KubiliusModel {
  std::uint64_t x = 0;  // sample space 1..x
  std::uint64_t r = 0;  // D = product of primes <= r
  std::vector<std::uint64_t> primes;
  Natural D;
  std::vector<KubiliusCell> cells;  // indexed by mask

  const KubiliusCell& cell(const Natural& k) const;
  // mu of the event "every prime in `required` divides m".
  Ratio mu_of(std::uint32_t required) const;
  Ratio nu_of(std::uint32_t required) const;
};

KubiliusModel build_classic(std::uint64_t x, std::uint64_t r,
                            unsigned max_primes = kDefaultMaxCellPrimes);

struct ClassicComparison {
  Ratio total_variation;  // (1/2) sum |nu - mu|
  // max over k <= sqrt(x) of | |E_k| k / (x prod(1 - 1/p)) - 1 |
  double max_relative_error = 0.0;
  Natural argmax_k;
  std::uint64_t cells_compared = 0;
  double L = 0.0;
  bool vacuous = false;  // L >= 1 makes the 1 + O(L) estimate empty
};

// exp(-(1/8) u log u) + x^(-1/10) with u = log x / log r.
double kubilius_L(double x, double r);

ClassicComparison compare_classic(const KubiliusModel& model);

struct ShiftedCell {
  Natural k;
  std::uint32_t mask = 0;
  std::uint64_t count = 0;  // |E*_k|
  Ratio nu;
  // (1/k) prod_{p | D/k} (1 - 1/(p - 1)), exactly as written; does not
  // sum to 1 in general.
  Ratio mu_literal;
  // prod_{p | k} 1/(p - 1) prod_{p | D/k} (1 - 1/(p - 1)).
  Ratio mu_normalized;
};

struct ShiftedModel {
  Natural M;
  Natural m0;
  std::uint64_t u = 0;
  std::uint64_t r_lo = 0;  // r in (r_lo, r_hi]
  std::uint64_t r_hi = 0;
  std::uint64_t window_lo = 0;  // window primes in (window_lo, window_hi]
  std::uint64_t window_hi = 0;
  std::vector<std::uint64_t> window_primes;
  Natural D;
  std::vector<std::uint64_t> roster_r;   // r with m0 + rM prime
  std::vector<Natural> roster;           // m0 + rM + u
  std::vector<std::uint32_t> roster_mask;
  std::vector<ShiftedCell> cells;  // indexed by mask

  Ratio literal_total() const;
  Ratio normalized_of(std::uint32_t required) const;
  Ratio nu_of(std::uint32_t required) const;
};

// Builds the roster S* = {m0 + rM + u : r in (r_lo, r_hi], m0 + rM prime}
// and the exact measure tables. Requires gcd(m0, M) = 1 and window primes
// coprime to M. Throws DomainError on an empty roster.
ShiftedModel build_shifted(const Natural& M, const Natural& m0, std::uint64_t u,
                           std::uint64_t r_lo, std::uint64_t r_hi,
                           std::uint64_t window_lo, std::uint64_t window_hi,
                           unsigned max_primes = kDefaultMaxCellPrimes);

// Number of window primes dividing m.
unsigned eta_star(const ShiftedModel& model, const Natural& m);

// Distinct prime factors of m in (lo, hi].
unsigned window_defect(const Natural& m, std::uint64_t lo, std::uint64_t hi);

struct SimulationConfig {
  double centering = 0.0;
  double scale = 1.0;
  double alpha = 0.0;
  double eps = 1.0;
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

struct SimulationReport {
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  std::uint64_t in_count = 0;
  double fraction = 0.0;
  double gaussian_mass = 0.0;
  double standard_error = 0.0;  // sqrt(g(1 - g)/n) at the Gaussian mass g
  double z_score = 0.0;         // (fraction - g) / standard_error
  double mean_eta = 0.0;
};

// Mean and standard deviation of eta* under independent Bernoulli(1/(p-1))
// marginals, the natural centering and scale for simulate_clt.
std::pair<double, double> eta_moments(std::span<const std::uint64_t> window_primes);

// Draws eta* = sum of independent Bernoulli(1/(p - 1)) over the window
// primes and reports how often (eta* - centering)/scale lands in
// (alpha - eps, alpha + eps). Samples are split into fixed blocks, each with
// its own stream derived from the seed, so the result does not depend on
// the thread count.
SimulationReport simulate_clt(std::span<const std::uint64_t> window_primes,
                              const SimulationConfig& config);
SimulationReport simulate_clt(const ShiftedModel& model, const SimulationConfig& config);

}  // namespace gapkac
