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
 * Erdos-Rankin construction of long composite runs.
 *
 * A covering assigns one residue class h_p mod p to primes p < x so that
 * every v in 1..y lies in some class. Solving m = -h_p (mod p) by CRT then
 * makes every m + v divisible by a small prime. The k-th power variant
 * replaces the classes by 1 - (c + 1)^k and shifts rows of a matrix of
 * translates instead.
 */

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gapkac/numeric.hpp"

namespace gapkac {

struct ResidueClass {
  std::uint64_t p = 0;  // prime modulus
  std::uint64_t h = 0;  // 0 <= h < p
  friend bool operator==(const ResidueClass&, const ResidueClass&) = default;
};

// Validates primality of p and h < p.
ResidueClass residue_class(std::uint64_t p, std::uint64_t h);

struct CoveringAssignment {
  std::uint64_t x = 0;  // usable moduli are the primes p < x
  std::uint64_t y = 0;  // target interval (0, y]
  std::vector<ResidueClass> classes;  // ascending modulus, at most one each
  std::vector<bool> covered;          // covered[v - 1] for 1 <= v <= y

  bool complete() const;
  std::vector<std::uint64_t> uncovered() const;
  // Number of targets 1..y inside each class, aligned with `classes`.
  std::vector<std::uint64_t> hitting_numbers() const;

  // Builds and validates an assignment from explicit classes.
  static CoveringAssignment from_classes(std::uint64_t x, std::uint64_t y,
                                         std::vector<ResidueClass> classes);
};

struct CoverOptions {
  // Residue 0 forces p | m0, which breaks gcd(m0, P(x)) = 1; off by default.
  bool allow_zero_residue = false;
  // Exhaustive search refuses P(x) above this.
  std::uint64_t search_ceiling = 1'000'000'000'000ULL;
  unsigned threads = 1;
};

// Repeatedly takes the (prime, residue) pair that hits the most uncovered
// targets; ties go to the smaller prime, then the smaller residue. Stops
// when 1..y is covered or no remaining prime hits anything new.
CoveringAssignment greedy_cover(std::uint64_t x, std::uint64_t y,
                                const CoverOptions& opts = {});

// Necessary condition: sum over p < x of ceil(y / p) >= y.
bool passes_counting_bound(std::uint64_t x, std::uint64_t y);

// Full search over one class per prime p < x. Among all covers, returns the
// one whose CRT residues g_p = -h_p (mod p) are lexicographically least in
// ascending prime order, so the first candidate tried is m0 = 1.
std::optional<CoveringAssignment> exhaustive_cover(std::uint64_t x, std::uint64_t y,
                                                   const CoverOptions& opts = {});

struct CrtSolution {
  Natural modulus;  // P(x)
  Natural m0;       // 1 <= m0 < modulus
};

// Solves m0 = -h_p (mod p) for assigned primes and m0 = 1 (mod p) for the
// unassigned primes p < x. With require_coprime, a class h_p = 0 is a
// DomainError.
CrtSolution crt_solve(const CoveringAssignment& assignment, bool require_coprime = true);

// CRT for pairwise coprime moduli; returns the residue in [0, prod).
Natural crt_combine(std::span<const std::uint64_t> moduli,
                    std::span<const std::uint64_t> residues);

struct RunVerdict {
  Natural representative;  // least m = m0 (mod M) above max(y, P+(M))
  bool passed = false;
  std::optional<std::uint64_t> first_failing_v;
  // Same check applied to m0 itself, which can be too small for the
  // covering argument to imply compositeness.
  std::optional<std::uint64_t> canonical_first_failing_v;
};

// Checks that m + v is composite for 1 <= v <= y. The representative is
// taken above the largest prime factor of M so that divisibility by a
// covering prime implies compositeness.
RunVerdict verify_composite_run(const Natural& m0, const Natural& modulus, std::uint64_t y);

struct SievedWindow {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::vector<ResidueClass> removed;
  std::vector<std::uint64_t> survivors;
};

// Elements of [lo, hi] outside every class.
SievedWindow sifted_set(std::uint64_t lo, std::uint64_t hi,
                        std::vector<ResidueClass> classes);

struct SurvivorCount {
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  std::uint64_t count = 0;
  double x_over_log_x = 0.0;
  std::vector<std::uint64_t> survivors;
};

// Primes q in (x, y] outside every class of a and of b.
SurvivorCount survivor_count(std::uint64_t x, std::uint64_t y,
                             std::span<const ResidueClass> a,
                             std::span<const ResidueClass> b);

struct Window {
  double lo = 0.0;  // exclusive
  double hi = 0.0;  // inclusive
};

struct ModelParams {
  double x = 0.0;
  double C0 = 1.0;
  double log1 = 0.0, log2 = 0.0, log3 = 0.0;
  double y = 0.0;
  double z = 0.0;
  Window S;  // (log^20 x, z]
  Window P;  // (x/2, x]
  Window Q;  // (x, y]
  double G0 = 0.0;
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  // H = P(x)^sigma1 and xi^2 = P(x)^sigma2 are astronomically large; only
  // their logarithms are carried.
  double log_primorial = 0.0;
  bool log_primorial_exact = false;
  double log_H = 0.0;
  double log_xi = 0.0;
  double tau = 0.0;  // log xi / log H
};

// Derived parameters for a given x. Throws DomainError when log3 x <= 0
// unless toy_override is set (which still needs x > e).
ModelParams params(double x, double C0, bool toy_override = false);

// a_s = 1 - (c + 1)^k (mod s); rejects c = -1 (mod s).
std::uint64_t kth_power_class(std::uint64_t s, std::uint64_t c, std::uint64_t k);

// Least c with c != -1 (mod s) and a = 1 - (c + 1)^k (mod s), if any.
std::optional<std::uint64_t> power_class_witness(std::uint64_t s, std::uint64_t a,
                                                 std::uint64_t k);

// True when every class is of the form 1 - (c + 1)^k with c != -1.
bool in_power_class_family(std::span<const ResidueClass> classes, std::uint64_t k);

// a_{r,v} = (m0 + 1 + r Px)^k + v - 1.
Natural matrix_entry(const Natural& m0, const Natural& px, std::uint64_t r,
                     std::uint64_t v, std::uint64_t k);

// Columns 2 <= v <= y of row r whose entry is not composite.
std::vector<std::uint64_t> matrix_row_noncomposites(const Natural& m0, const Natural& px,
                                                    std::uint64_t r, std::uint64_t y,
                                                    std::uint64_t k);

enum class CongruenceRole { sieve_s, sieve_p, zero, row, free };

struct PowerCongruence {
  std::uint64_t p = 0;
  std::uint64_t residue = 0;
  CongruenceRole role = CongruenceRole::free;
};

// Solves the mixed system for m0 over the product of the listed primes.
// Each prime may appear in exactly one category; a repeat is a DomainError.
CrtSolution solve_power_system(std::span<const PowerCongruence> system);

struct RowTarget {
  std::uint64_t v = 0;
  std::uint64_t p = 0;
  std::optional<std::uint64_t> e;  // least e with v = 1 - (e + 1)^k (mod p)
};

std::vector<RowTarget> row_targets(std::span<const std::pair<std::uint64_t, std::uint64_t>> v_to_p,
                                   std::uint64_t k);

// The v for which no admissible e_v exists.
std::vector<std::uint64_t> exceptional_set(std::span<const RowTarget> targets);

}  // namespace gapkac
