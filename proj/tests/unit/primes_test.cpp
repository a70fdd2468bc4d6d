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

#include "gapkac/primes.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"

namespace gapkac {
namespace {

TEST(SievePrimes, SmallTables) {
  EXPECT_EQ(sieve_primes(10).primes(), (std::vector<std::uint64_t>{2, 3, 5, 7}));
  EXPECT_TRUE(sieve_primes(1).empty());
  EXPECT_TRUE(sieve_primes(0).empty());
  EXPECT_EQ(sieve_primes(2).primes(), (std::vector<std::uint64_t>{2}));
  EXPECT_EQ(sieve_primes(100000).size(), 9592u);
}

TEST(SievePrimes, MatchesOracleAcrossSegmentsAndThreads) {
  const auto expected = oracle::primes_upto(300000);
  for (std::uint64_t seg : std::initializer_list<std::uint64_t>{64, 1000, 1 << 16, kDefaultSegmentSize}) {
    for (unsigned threads : {1u, 3u}) {
      SieveOptions o;
      o.segment_size = seg;
      o.threads = threads;
      EXPECT_EQ(sieve_primes(300000, o).primes(), expected) << seg << " " << threads;
    }
  }
}

TEST(SievePrimes, RangesMatchOracle) {
  const auto all = oracle::primes_upto(20000);
  for (auto [lo, hi] : {std::pair<std::uint64_t, std::uint64_t>{0, 1}, {2, 2}, {3, 3},
                        {4, 4}, {10, 30}, {9973, 10007}, {1, 20000}, {19990, 20000}}) {
    std::vector<std::uint64_t> want;
    for (auto p : all) {
      if (p >= lo && p <= hi) want.push_back(p);
    }
    EXPECT_EQ(primes_in_range(lo, hi), want) << lo << ".." << hi;
  }
}

TEST(SievePrimes, CeilingIsAResourceError) {
  SieveOptions o;
  o.ceiling = 1000;
  EXPECT_THROW(sieve_primes(1001, o), ResourceError);
  EXPECT_NO_THROW(sieve_primes(1000, o));
}

TEST(PrimeTable, Queries) {
  const auto t = sieve_primes(100);
  EXPECT_TRUE(t.contains(97));
  EXPECT_FALSE(t.contains(91));
  EXPECT_EQ(t.count_upto(100), 25u);
  EXPECT_EQ(t.count_upto(1), 0u);
  EXPECT_THROW(t.contains(101), DomainError);
  const auto r = t.range(10, 30);
  EXPECT_EQ(std::vector<std::uint64_t>(r.begin(), r.end()),
            (std::vector<std::uint64_t>{11, 13, 17, 19, 23, 29}));
}

TEST(IsPrime, AgreesWithTrialDivisionBelow1e5) {
  for (std::uint64_t n = 0; n <= 100000; ++n) {
    ASSERT_EQ(is_prime(n), oracle::is_prime(n)) << n;
  }
}

TEST(IsPrime, KnownValues) {
  EXPECT_TRUE(is_prime(2));
  EXPECT_FALSE(is_prime(1));
  EXPECT_TRUE(is_prime(1000000007));
  EXPECT_TRUE(is_prime((1ULL << 61) - 1));
  EXPECT_FALSE(is_prime(3215031751ULL));        // strong pseudoprime to 2, 3, 5, 7
  EXPECT_FALSE(is_prime(3825123056546413051ULL));  // strong pseudoprime to bases <= 23
  EXPECT_TRUE(is_prime(18446744073709551557ULL));  // largest 64-bit prime
  EXPECT_FALSE(is_prime(18446744073709551615ULL));
}

TEST(IsPrime, BigIntegers) {
  Natural m89 = (Natural(1) << 89) - 1;
  EXPECT_TRUE(is_prime(m89));
  Natural m67 = (Natural(1) << 67) - 1;  // 193707721 * 761838257287
  EXPECT_FALSE(is_prime(m67));
  EXPECT_TRUE(is_prime(natural(1000000007)));
  EXPECT_FALSE(is_prime(Natural(0)));
  EXPECT_FALSE(is_prime(Natural(1)));
}

TEST(IsPrime, RandomOddAgreesWithTrialDivision) {
  std::mt19937_64 gen(42);
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t n = (gen() % 1'000'000'000'000ULL) | 1;
    ASSERT_EQ(is_prime(n), oracle::is_prime(n)) << n;
  }
}

TEST(Primorial, StrictProduct) {
  EXPECT_EQ(primorial(0), 1);
  EXPECT_EQ(primorial(2), 1);
  EXPECT_EQ(primorial(3), 2);
  EXPECT_EQ(primorial(10), 210);
  EXPECT_EQ(primorial(11), 210);
  EXPECT_EQ(primorial(12), 2310);
  EXPECT_NEAR(log_primorial(12), std::log(2310.0), 1e-12);
}

TEST(Primorial, StepRule) {
  for (std::uint64_t x = 1; x < 300; ++x) {
    if (oracle::is_prime(x)) {
      EXPECT_EQ(primorial(x + 1), primorial(x) * x) << x;
    } else {
      EXPECT_EQ(primorial(x + 1), primorial(x)) << x;
    }
  }
}

TEST(Factorize, MatchesTrialDivision) {
  std::mt19937_64 gen(7);
  for (int i = 0; i < 3000; ++i) {
    const std::uint64_t n = 2 + gen() % 10'000'000'000ULL;
    const auto got = factorize(n);
    const auto want = oracle::factor(n);
    ASSERT_EQ(got.size(), want.size()) << n;
    for (std::size_t j = 0; j < got.size(); ++j) {
      EXPECT_EQ(got[j].prime, want[j].first) << n;
      EXPECT_EQ(got[j].exponent, want[j].second) << n;
    }
  }
  EXPECT_TRUE(factorize(std::uint64_t{1}).empty());
}

TEST(Factorize, SemiprimeAbove64Bits) {
  const Natural a("193707721"), b("761838257287"), c("18446744073709551557");
  const auto f = factorize(Natural(a * b * c * c));
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[0].prime, a);
  EXPECT_EQ(f[1].prime, b);
  EXPECT_EQ(f[2].prime, c);
  EXPECT_EQ(f[2].exponent, 2u);
}

TEST(FactorTable, SmallestPrimeFactor) {
  FactorTable t(10000);
  for (std::uint32_t n = 2; n <= 10000; ++n) {
    ASSERT_EQ(t.smallest(n), oracle::factor(n)[0].first) << n;
  }
}

TEST(VonMangoldt, MatchesOracle) {
  FactorTable t(5000);
  for (std::uint64_t n = 1; n <= 5000; ++n) {
    ASSERT_DOUBLE_EQ(von_mangoldt(n), oracle::von_mangoldt(n)) << n;
    ASSERT_DOUBLE_EQ(von_mangoldt(n, t), oracle::von_mangoldt(n)) << n;
  }
}

TEST(ChebyshevPsi, Examples) {
  const double l2 = std::log(2.0), l3 = std::log(3.0), l5 = std::log(5.0), l7 = std::log(7.0);
  EXPECT_NEAR(chebyshev_psi(10, 1, 0), 3 * l2 + 2 * l3 + l5 + l7, 1e-12);
  EXPECT_NEAR(chebyshev_psi(10, 3, 1), l2 + l7, 1e-12);
  EXPECT_EQ(chebyshev_psi(1, 5, 2), 0.0);
  EXPECT_THROW(chebyshev_psi(10, 0, 0), DomainError);
  EXPECT_THROW(chebyshev_psi(10, 3, 3), DomainError);
}

TEST(ChebyshevPsi, BruteForceGrid) {
  for (std::uint64_t x : {0ULL, 1ULL, 2ULL, 17ULL, 100ULL, 1000ULL, 2048ULL}) {
    for (std::uint64_t q = 1; q <= 12; ++q) {
      for (std::uint64_t a = 0; a < q; ++a) {
        ASSERT_NEAR(chebyshev_psi(x, q, a), oracle::psi(x, q, a), 1e-9)
            << x << " " << q << " " << a;
      }
    }
  }
}

TEST(EulerPhi, SmallValues) {
  EXPECT_EQ(euler_phi(1), 1u);
  EXPECT_EQ(euler_phi(30), 8u);
  EXPECT_EQ(euler_phi(97), 96u);
  EXPECT_EQ(euler_phi(1024), 512u);
  EXPECT_EQ(mod_pow(3, 200, 1000000007), 136318165u);
}

}  // namespace
}  // namespace gapkac
