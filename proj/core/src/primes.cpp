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

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <map>
#include <numeric>
#include <string>

namespace gapkac {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<unsigned __int128>(r) * r > n) --r;
  while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Plain Eratosthenes, used for the base primes of the segmented sieve.
std::vector<std::uint32_t> simple_sieve(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  if (n < 2) return out;
  std::vector<bool> composite(n + 1, false);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

const std::vector<std::uint32_t>& trial_primes() {
  static const std::vector<std::uint32_t> primes = simple_sieve(1 << 16);
  return primes;
}

// Odd numbers first, first + 2, ..., first + 2(count - 1); emits the primes
// among them that lie in [lo, hi].
std::vector<std::uint64_t> sieve_odd_segment(
    std::uint64_t first, std::uint64_t count,
    const std::vector<std::uint32_t>& base, std::uint64_t lo,
    std::uint64_t hi) {
  std::vector<std::uint8_t> composite(count, 0);
  const std::uint64_t last = first + 2 * (count - 1);
  if (first == 1) composite[0] = 1;
  for (std::uint32_t p : base) {
    if (p == 2) continue;
    const std::uint64_t pp = static_cast<std::uint64_t>(p) * p;
    if (pp > last) break;
    std::uint64_t m = std::max(pp, (first + p - 1) / p * p);
    if ((m & 1) == 0) m += p;
    for (std::uint64_t i = (m - first) / 2; i < count; i += p) composite[i] = 1;
  }
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t v = first + 2 * i;
    if (!composite[i] && v >= lo && v <= hi) out.push_back(v);
  }
  return out;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

bool miller_rabin_round(std::uint64_t n, std::uint64_t a, std::uint64_t d,
                        unsigned s) {
  std::uint64_t x = mod_pow(a % n, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

std::uint64_t pollard_brent(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t v) { return (mul_mod(v, v, n) + c) % n; };
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    std::uint64_t r = 1;
    constexpr std::uint64_t batch = 128;
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(batch, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += batch;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_u64(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const std::uint64_t d = pollard_brent(n);
  split_u64(d, out);
  split_u64(n / d, out);
}

Natural pollard_brent(const Natural& n) {
  for (unsigned long c = 1;; ++c) {
    auto f = [&](const Natural& v) -> Natural {
      Natural t = v * v + c;
      mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
      return t;
    };
    Natural y = 2, x = 2, g = 1, q = 1, ys = 2, diff;
    std::uint64_t r = 1;
    constexpr std::uint64_t batch = 64;
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(batch, r - k); ++i) {
          y = f(y);
          diff = abs(x - y);
          q = q * diff % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += batch;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_natural(const Natural& n, std::vector<Natural>& out) {
  if (n == 1) return;
  if (fits_u64(n)) {
    std::vector<std::uint64_t> parts;
    split_u64(to_u64(n), parts);
    for (auto p : parts) out.push_back(natural(p));
    return;
  }
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  // Rho needs about sqrt(p) steps to split p^k, so take exact roots first.
  if (mpz_perfect_power_p(n.get_mpz_t())) {
    const auto bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    for (unsigned long k = bits; k >= 2; --k) {
      Natural root;
      if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) {
        std::vector<Natural> parts;
        split_natural(root, parts);
        for (unsigned long i = 0; i < k; ++i) out.insert(out.end(), parts.begin(), parts.end());
        return;
      }
    }
  }
  const Natural d = pollard_brent(n);
  split_natural(d, out);
  split_natural(n / d, out);
}

template <typename Int>
std::vector<PrimePower<Int>> collect(std::vector<Int> parts) {
  std::sort(parts.begin(), parts.end());
  std::vector<PrimePower<Int>> out;
  for (const auto& p : parts) {
    if (!out.empty() && out.back().prime == p) {
      ++out.back().exponent;
    } else {
      out.push_back({p, 1});
    }
  }
  return out;
}

Natural product_tree(std::span<const std::uint64_t> v) {
  if (v.empty()) return 1;
  if (v.size() <= 8) {
    Natural acc = 1;
    for (auto p : v) acc *= natural(p);
    return acc;
  }
  const auto mid = v.size() / 2;
  return product_tree(v.first(mid)) * product_tree(v.subspan(mid));
}

}  // namespace

double log_natural(const Natural& n) {
  if (sgn(n) <= 0) throw DomainError("log of a non-positive integer");
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, n.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

bool PrimeTable::contains(std::uint64_t n) const {
  if (n > limit_) throw DomainError("query above prime table limit");
  return std::binary_search(primes_.begin(), primes_.end(), n);
}

std::size_t PrimeTable::count_upto(std::uint64_t n) const {
  if (n > limit_) throw DomainError("query above prime table limit");
  return static_cast<std::size_t>(
      std::upper_bound(primes_.begin(), primes_.end(), n) - primes_.begin());
}

std::span<const std::uint64_t> PrimeTable::range(std::uint64_t lo,
                                                 std::uint64_t hi) const {
  if (lo > hi) return {};
  auto b = std::lower_bound(primes_.begin(), primes_.end(), lo);
  auto e = std::upper_bound(b, primes_.end(), hi);
  return {primes_.data() + (b - primes_.begin()),
          static_cast<std::size_t>(e - b)};
}

void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::uint64_t)>& visit,
                    const SieveOptions& opts) {
  if (hi > opts.ceiling) {
    throw ResourceError("sieve limit " + std::to_string(hi) +
                        " exceeds ceiling " + std::to_string(opts.ceiling));
  }
  if (lo > hi || hi < 2) return;
  if (lo <= 2) visit(2);
  if (hi < 3) return;

  const std::uint64_t seg = std::max<std::uint64_t>(opts.segment_size, 64);
  const auto base = simple_sieve(static_cast<std::uint32_t>(isqrt(hi)));
  std::uint64_t first = std::max<std::uint64_t>(lo, 3) | 1;
  const std::uint64_t last_odd = (hi & 1) ? hi : hi - 1;
  const unsigned workers = std::max(1u, opts.threads);

  while (first <= last_odd) {
    // Fan out up to `workers` consecutive segments, then emit in order.
    std::vector<std::future<std::vector<std::uint64_t>>> batch;
    for (unsigned w = 0; w < workers && first <= last_odd; ++w) {
      const std::uint64_t count = std::min(seg, (last_odd - first) / 2 + 1);
      if (workers == 1) {
        std::promise<std::vector<std::uint64_t>> done;
        done.set_value(sieve_odd_segment(first, count, base, lo, hi));
        batch.push_back(done.get_future());
      } else {
        batch.push_back(std::async(std::launch::async, sieve_odd_segment,
                                   first, count, std::cref(base), lo, hi));
      }
      first += 2 * count;
    }
    for (auto& f : batch) {
      for (auto p : f.get()) visit(p);
    }
  }
}

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi,
                                           const SieveOptions& opts) {
  std::vector<std::uint64_t> out;
  for_each_prime(lo, hi, [&](std::uint64_t p) { out.push_back(p); }, opts);
  return out;
}

PrimeTable sieve_primes(std::uint64_t limit, const SieveOptions& opts) {
  return PrimeTable(limit, primes_in_range(0, limit, opts));
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  if (mod == 1) return 0;
  std::uint64_t result = 1;
  base %= mod;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, mod);
    base = mul_mod(base, base, mod);
    exp >>= 1;
  }
  return result;
}

bool is_prime(std::uint64_t n) {
  static constexpr std::array<std::uint64_t, 12> bases = {
      2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (n < 2) return false;
  for (auto p : bases) {
    if (n % p == 0) return n == p;
  }
  if (n < 41 * 41) return true;
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (auto a : bases) {
    if (!miller_rabin_round(n, a, d, s)) return false;
  }
  return true;
}

bool is_prime(const Natural& n) {
  if (sgn(n) <= 0) return false;
  if (fits_u64(n)) return is_prime(to_u64(n));
  // GMP >= 6.2 runs Baillie-PSW for reps <= 24.
  return mpz_probab_prime_p(n.get_mpz_t(), 24) > 0;
}

Natural primorial(std::uint64_t x) {
  if (x <= 2) return 1;
  const auto primes = primes_in_range(2, x - 1);
  return product_tree(primes);
}

double log_primorial(std::uint64_t x) {
  double acc = 0.0;
  if (x <= 2) return acc;
  for_each_prime(2, x - 1, [&](std::uint64_t p) {
    acc += std::log(static_cast<double>(p));
  });
  return acc;
}

std::vector<PrimePower<std::uint64_t>> factorize(std::uint64_t n) {
  std::vector<std::uint64_t> parts;
  if (n <= 1) return {};
  for (std::uint32_t p : trial_primes()) {
    if (static_cast<std::uint64_t>(p) * p > n) break;
    if (p > 1000) break;
    while (n % p == 0) {
      parts.push_back(p);
      n /= p;
    }
  }
  split_u64(n, parts);
  return collect(std::move(parts));
}

std::vector<PrimePower<Natural>> factorize(const Natural& n) {
  if (n <= 1) return {};
  if (fits_u64(n)) {
    std::vector<PrimePower<Natural>> out;
    for (const auto& [p, e] : factorize(to_u64(n))) out.push_back({natural(p), e});
    return out;
  }
  Natural rest = n;
  std::vector<Natural> parts;
  for (std::uint32_t p : trial_primes()) {
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      parts.push_back(p);
      rest /= p;
    }
  }
  split_natural(rest, parts);
  return collect(std::move(parts));
}

FactorTable::FactorTable(std::uint32_t limit) : limit_(limit), spf_(limit + 1, 0) {
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      primes.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t p : primes) {
      const std::uint64_t m = i * p;
      if (p > spf_[i] || m > limit) break;
      spf_[m] = p;
    }
  }
}

std::vector<PrimePower<std::uint64_t>> FactorTable::factorize(std::uint32_t n) const {
  if (n > limit_) throw DomainError("factor table query above limit");
  std::vector<PrimePower<std::uint64_t>> out;
  while (n > 1) {
    const std::uint32_t p = spf_[n];
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  return out;
}

double von_mangoldt(std::uint64_t n) {
  const auto f = factorize(n);
  return f.size() == 1 ? std::log(static_cast<double>(f[0].prime)) : 0.0;
}

double von_mangoldt(std::uint64_t n, const FactorTable& table) {
  if (n > table.limit()) return von_mangoldt(n);
  const auto f = table.factorize(static_cast<std::uint32_t>(n));
  return f.size() == 1 ? std::log(static_cast<double>(f[0].prime)) : 0.0;
}

double chebyshev_psi(std::uint64_t x, std::uint64_t q, std::uint64_t a,
                     const SieveOptions& opts) {
  if (q == 0) throw DomainError("modulus q must be >= 1");
  if (a >= q) throw DomainError("residue a must satisfy 0 <= a < q");
  double acc = 0.0;
  for_each_prime(2, x, [&](std::uint64_t p) {
    unsigned hits = 0;
    for (std::uint64_t pk = p;; pk *= p) {
      if (pk % q == a) ++hits;
      if (pk > x / p) break;
    }
    if (hits) acc += hits * std::log(static_cast<double>(p));
  }, opts);
  return acc;
}

std::uint64_t euler_phi(std::uint64_t n) {
  if (n == 0) return 0;
  std::uint64_t phi = n;
  for (const auto& [p, e] : factorize(n)) phi = phi / p * (p - 1);
  return phi;
}

}  // namespace gapkac
