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
 * Exact evaluation of the sieve quantities.
 *
 * A SieveProblem is a finite multiset Q, a set of primes P, a sifting limit z
 * and a density zeta on P. Everything here is computed by enumeration, so it
 * is only meant for desk-sized instances.
 */

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "gapkac/kubilius.hpp"
#include "gapkac/numeric.hpp"

namespace gapkac {

inline constexpr std::uint64_t kMaxLegendreDivisors = 1ULL << 20;
inline constexpr std::uint64_t kMaxRemainderDivisors = 1ULL << 20;
inline constexpr std::uint64_t kBvCeiling = 10'000'000;

struct SieveProblem {
  std::vector<Natural> Q;
  std::vector<std::uint64_t> P;  // primes; only those below z sift
  std::uint64_t z = 2;
  // zeta(p) for p in P. Unset means zeta = 1.
  std::function<Ratio(std::uint64_t)> zeta;
  Ratio X = 1;
  double xi = 2.0;
  double kappa = 1.0;
  double A1 = 2.0;
  double A2 = 1.0;

  // Sorted primes of P below z.
  std::vector<std::uint64_t> sifting_primes() const;
  Ratio zeta_at(std::uint64_t p) const;
};

// Q = {lo..hi}, P = all primes below z, zeta = 1, X = hi - lo + 1.
SieveProblem interval_problem(std::uint64_t lo, std::uint64_t hi, std::uint64_t z);

// |{a in Q : no sifting prime divides a}| by direct divisibility.
std::uint64_t sieve_count(const SieveProblem& problem);

// Sum over d | prod(sifting primes) of mu(d) |Q_d|. ResourceError above
// kMaxLegendreDivisors divisors.
std::int64_t legendre_count(const SieveProblem& problem);

struct MainTerm {
  Ratio W;  // prod over sifting primes of (1 - zeta(p)/p)
  double W_real = 0.0;
  double XW = 0.0;
  double tau = 0.0;  // log xi / log z
};

// Checks 0 <= zeta(p)/p <= 1 - 1/A1 for every sifting prime; a violation
// (including zeta(p) = p) is a DomainError.
MainTerm main_term(const SieveProblem& problem);

struct DimensionCheck {
  // max over w of sum_{w <= p < z} zeta(p) log p / p - kappa log(z / w)
  double worst_excess = 0.0;
  std::uint64_t worst_w = 0;
  bool holds = true;  // worst_excess <= A2
};

DimensionCheck dimension_check(const SieveProblem& problem);

struct Remainder {
  Natural d;
  unsigned omega = 0;
  std::uint64_t count = 0;  // |Q_d|
  Ratio zeta_d;
  Ratio R;  // |Q_d| - zeta(d) X / d
};

struct RemainderTable {
  double xi = 0.0;
  std::vector<Remainder> entries;  // ascending d
  Ratio weighted_sum;              // sum 3^omega(d) |R_d|
};

// Squarefree products d of sifting primes with d < xi^2 and zeta(d) != 0.
RemainderTable remainders(const SieveProblem& problem, double xi);

struct SieveReport {
  std::uint64_t exact_count = 0;
  std::optional<std::int64_t> legendre;  // when feasible
  MainTerm main;
  DimensionCheck dimension;
  RemainderTable remainders;
  double error_bound = 0.0;  // the remainder part with theta = 1
};

SieveReport analyze(const SieveProblem& problem);

struct ShiftedRemainder {
  Natural k;
  Natural d;
  std::uint64_t count = 0;  // |Q_d^(k)|
  Ratio main;               // |S*| / (phi(k) phi(d))
  Ratio R;
};

struct ShiftedRemainderSum {
  double xi = 0.0;
  std::vector<ShiftedRemainder> terms;
  Ratio total;           // sum over k, d of |R_d^(k)|
  Ratio weighted_total;  // sum over k, d of 3^omega(d) |R_d^(k)|
  // (sum_d 3^omega(d) |S*| / d)^(1/2) (total)^(1/2)
  double cauchy_schwarz = 0.0;
  std::uint64_t roster_size = 0;
  // (li(m0 + r_hi M) - li(m0 + r_lo M)) / phi(M), the prime-count prediction
  // for |S*|, reported next to the actual roster size.
  double li_prediction = 0.0;
};

// k runs over the squarefree divisors of D*, d over squarefree products of
// window primes with d <= xi^2.
ShiftedRemainderSum shifted_remainder_sum(const ShiftedModel& model, double xi);

struct BvTerm {
  std::uint64_t q = 0;
  double max_error = 0.0;
  std::uint64_t a = 0;  // class attaining the max
  double X = 0.0;       // abscissa attaining the max (left limits included)
};

struct BvReport {
  std::uint64_t Y = 0;
  std::uint64_t Q = 0;
  std::uint64_t R = 0;
  std::vector<BvTerm> terms;
  double total = 0.0;
  double first_term[3] = {0.0, 0.0, 0.0};  // (Y/phi(R)) (log Y)^-B, B = 1, 2, 3
  double second_term = 0.0;                // Y^(1/2) R^2/phi(R) Q log(YQ)^5
};

// Sum over q <= Q coprime to R of max_{X < Y} max_{(a, qR) = 1}
// |psi(X; qR, a) - X/phi(qR)|, evaluated at every jump of psi and its left
// limit. ResourceError when Y exceeds `ceiling`.
BvReport bv_error_sum(std::uint64_t Y, std::uint64_t Q, std::uint64_t R,
                      unsigned threads = 1, std::uint64_t ceiling = kBvCeiling);

}  // namespace gapkac
