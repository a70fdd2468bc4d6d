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
 * Prime generation, primality, factorization and the Chebyshev-style
 * building blocks shared by every other module.
 *
 * Sieving is segmented over odd residues; output never depends on the
 * segment size or on the number of worker threads.
 */

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "gapkac/numeric.hpp"

namespace gapkac {

inline constexpr std::uint64_t kDefaultSieveCeiling = 10'000'000'000ULL;
inline constexpr std::uint64_t kDefaultSegmentSize = 1ULL << 20;

struct SieveOptions {
  // Odd residues per segment.
  std::uint64_t segment_size = kDefaultSegmentSize;
  unsigned threads = 1;
  std::uint64_t ceiling = kDefaultSieveCeiling;
};

class PrimeTable {
 public:
  PrimeTable() = default;
  PrimeTable(std::uint64_t limit, std::vector<std::uint64_t> primes)
      : limit_(limit), primes_(std::move(primes)) {}

  std::uint64_t limit() const { return limit_; }
  const std::vector<std::uint64_t>& primes() const { return primes_; }
  std::size_t size() const { return primes_.size(); }
  bool empty() const { return primes_.empty(); }
  std::uint64_t operator[](std::size_t i) const { return primes_[i]; }
  auto begin() const { return primes_.begin(); }
  auto end() const { return primes_.end(); }

  // Membership for n <= limit(); throws DomainError above the limit.
  bool contains(std::uint64_t n) const;
  // pi(n) for n <= limit().
  std::size_t count_upto(std::uint64_t n) const;
  // Primes in [lo, hi] (clamped to the table).
  std::span<const std::uint64_t> range(std::uint64_t lo, std::uint64_t hi) const;

 private:
  std::uint64_t limit_ = 0;
  std::vector<std::uint64_t> primes_;
};

PrimeTable sieve_primes(std::uint64_t limit, const SieveOptions& opts = {});

// Primes in [lo, hi], ascending.
std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi,
                                           const SieveOptions& opts = {});

// Streams the primes in [lo, hi] in ascending order one segment at a time,
// so memory stays O(segment) regardless of hi.
void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::uint64_t)>& visit,
                    const SieveOptions& opts = {});

// Deterministic Miller-Rabin with the first twelve primes as bases
// (valid far beyond 2^64).
bool is_prime(std::uint64_t n);
// 64-bit inputs use the test above; larger inputs use Baillie-PSW.
bool is_prime(const Natural& n);

// Product of the primes strictly below x; 1 when x <= 2.
Natural primorial(std::uint64_t x);
// ln of primorial(x), i.e. sum of ln p over p < x.
double log_primorial(std::uint64_t x);

template <typename Int>
struct PrimePower {
  Int prime;
  unsigned exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Ascending prime factorization; {} for n <= 1.
std::vector<PrimePower<std::uint64_t>> factorize(std::uint64_t n);
std::vector<PrimePower<Natural>> factorize(const Natural& n);

// Smallest-prime-factor table for 0..limit, used for bulk factorization of
// small integers.
class FactorTable {
 public:
  explicit FactorTable(std::uint32_t limit);
  std::uint32_t limit() const { return limit_; }
  // Smallest prime factor of 2 <= n <= limit.
  std::uint32_t smallest(std::uint32_t n) const { return spf_[n]; }
  std::vector<PrimePower<std::uint64_t>> factorize(std::uint32_t n) const;

 private:
  std::uint32_t limit_;
  std::vector<std::uint32_t> spf_;
};

// Lambda(n) = ln p when n = p^k, 0 otherwise.
double von_mangoldt(std::uint64_t n);
double von_mangoldt(std::uint64_t n, const FactorTable& table);

// psi(x; q, a) = sum of Lambda(n) over n <= x with n = a (mod q).
// Requires q >= 1 and a < q.
double chebyshev_psi(std::uint64_t x, std::uint64_t q, std::uint64_t a,
                     const SieveOptions& opts = {});

std::uint64_t euler_phi(std::uint64_t n);
std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);

}  // namespace gapkac
