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

#include "gapkac/rankin.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>
#include <set>
#include <string>

#include "gapkac/primes.hpp"

namespace gapkac {

namespace {

constexpr std::uint64_t kMaxWindow = 1'000'000'000ULL;

std::vector<std::uint64_t> primes_below(std::uint64_t x) {
  if (x <= 2) return {};
  return primes_in_range(2, x - 1);
}

// Depth-first search state for exhaustive_cover. Primes ascending; at each
// depth g = 1, 2, ..., p - 1 is tried in order, giving h = p - g.
class CoverSearch {
 public:
  CoverSearch(std::vector<std::uint64_t> primes, std::uint64_t y, bool allow_zero)
      : primes_(std::move(primes)), y_(y), allow_zero_(allow_zero), hits_(y, 0) {
    reach_.assign(primes_.size() + 1, 0);
    for (std::size_t i = primes_.size(); i-- > 0;) {
      reach_[i] = reach_[i + 1] + (y_ + primes_[i] - 1) / primes_[i];
    }
    chosen_.assign(primes_.size(), 0);
  }

  // Runs the search, optionally pinning the g of the last prime.
  std::optional<std::vector<std::uint64_t>> run(std::optional<std::uint64_t> last_g) {
    pinned_last_ = last_g;
    uncovered_ = y_;
    std::fill(hits_.begin(), hits_.end(), 0);
    if (descend(0)) return chosen_;
    return std::nullopt;
  }

 private:
  void apply(std::uint64_t p, std::uint64_t h, int delta) {
    std::uint64_t v = h == 0 ? p : h;
    for (; v <= y_; v += p) {
      auto& c = hits_[v - 1];
      if (delta > 0 && c++ == 0) --uncovered_;
      if (delta < 0 && --c == 0) ++uncovered_;
    }
  }

  bool descend(std::size_t depth) {
    if (uncovered_ == 0) {
      // Remaining primes take the first admissible choice.
      for (std::size_t i = depth; i < primes_.size(); ++i) {
        chosen_[i] = (i + 1 == primes_.size() && pinned_last_) ? *pinned_last_ : first_g();
      }
      return true;
    }
    if (depth == primes_.size() || uncovered_ > reach_[depth]) return false;
    const std::uint64_t p = primes_[depth];
    std::uint64_t g_lo = first_g();
    std::uint64_t g_hi = allow_zero_ ? p : p - 1;  // g = p means h = 0
    if (depth + 1 == primes_.size() && pinned_last_) g_lo = g_hi = *pinned_last_;
    for (std::uint64_t g = g_lo; g <= g_hi; ++g) {
      const std::uint64_t h = (p - g % p) % p;
      apply(p, h, +1);
      chosen_[depth] = g;
      const bool found = descend(depth + 1);
      apply(p, h, -1);
      if (found) return true;
    }
    return false;
  }

  std::uint64_t first_g() const { return 1; }

  std::vector<std::uint64_t> primes_;
  std::uint64_t y_;
  bool allow_zero_;
  std::vector<std::uint32_t> hits_;
  std::vector<std::uint64_t> reach_;
  std::vector<std::uint64_t> chosen_;
  std::uint64_t uncovered_ = 0;
  std::optional<std::uint64_t> pinned_last_;
};

Natural inverse_mod(const Natural& a, const Natural& m) {
  Natural inv;
  if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw DomainError("moduli are not coprime");
  }
  return inv;
}

}  // namespace

ResidueClass residue_class(std::uint64_t p, std::uint64_t h) {
  if (!is_prime(p)) throw DomainError("class modulus " + std::to_string(p) + " is not prime");
  if (h >= p) throw DomainError("class residue must be reduced");
  return {p, h};
}

bool CoveringAssignment::complete() const {
  return std::all_of(covered.begin(), covered.end(), [](bool b) { return b; });
}

std::vector<std::uint64_t> CoveringAssignment::uncovered() const {
  std::vector<std::uint64_t> out;
  for (std::uint64_t v = 1; v <= covered.size(); ++v) {
    if (!covered[v - 1]) out.push_back(v);
  }
  return out;
}

std::vector<std::uint64_t> CoveringAssignment::hitting_numbers() const {
  std::vector<std::uint64_t> out;
  for (const auto& c : classes) {
    const std::uint64_t first = c.h == 0 ? c.p : c.h;
    out.push_back(first > y ? 0 : (y - first) / c.p + 1);
  }
  return out;
}

CoveringAssignment CoveringAssignment::from_classes(std::uint64_t x, std::uint64_t y,
                                                    std::vector<ResidueClass> classes) {
  if (y > kMaxWindow) throw ResourceError("cover target y exceeds window ceiling");
  std::sort(classes.begin(), classes.end(),
            [](const ResidueClass& a, const ResidueClass& b) { return a.p < b.p; });
  CoveringAssignment out;
  out.x = x;
  out.y = y;
  out.covered.assign(y, false);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto c = residue_class(classes[i].p, classes[i].h);
    if (c.p >= x) throw DomainError("class modulus must be below x");
    if (i > 0 && classes[i - 1].p == c.p) throw DomainError("two classes for one prime");
    for (std::uint64_t v = c.h == 0 ? c.p : c.h; v <= y; v += c.p) out.covered[v - 1] = true;
  }
  out.classes = std::move(classes);
  return out;
}

CoveringAssignment greedy_cover(std::uint64_t x, std::uint64_t y, const CoverOptions& opts) {
  if (x < 3 || y < 1) throw DomainError("greedy_cover needs x >= 3 and y >= 1");
  if (y > kMaxWindow) throw ResourceError("cover target y exceeds window ceiling");
  const auto primes = primes_below(x);
  std::vector<bool> covered(y, false);
  std::vector<bool> used(primes.size(), false);
  std::uint64_t remaining = y;
  std::vector<ResidueClass> classes;
  std::vector<std::uint64_t> counts;

  while (remaining > 0) {
    std::uint64_t best_hits = 0;
    std::size_t best_i = primes.size();
    std::uint64_t best_h = 0;
    for (std::size_t i = 0; i < primes.size(); ++i) {
      if (used[i]) continue;
      const std::uint64_t p = primes[i];
      // Residue classes of p only matter within 1..min(y, p) offsets.
      counts.assign(p, 0);
      for (std::uint64_t v = 1; v <= y; ++v) {
        if (!covered[v - 1]) ++counts[v % p];
      }
      for (std::uint64_t h = opts.allow_zero_residue ? 0 : 1; h < p; ++h) {
        if (counts[h] > best_hits) {
          best_hits = counts[h];
          best_i = i;
          best_h = h;
        }
      }
    }
    if (best_hits == 0) break;
    const std::uint64_t p = primes[best_i];
    used[best_i] = true;
    classes.push_back({p, best_h});
    for (std::uint64_t v = best_h == 0 ? p : best_h; v <= y; v += p) {
      if (!covered[v - 1]) {
        covered[v - 1] = true;
        --remaining;
      }
    }
  }
  return CoveringAssignment::from_classes(x, y, std::move(classes));
}

bool passes_counting_bound(std::uint64_t x, std::uint64_t y) {
  std::uint64_t reach = 0;
  for (auto p : primes_below(x)) {
    reach += (y + p - 1) / p;
    if (reach >= y) return true;
  }
  return reach >= y;
}

std::optional<CoveringAssignment> exhaustive_cover(std::uint64_t x, std::uint64_t y,
                                                   const CoverOptions& opts) {
  if (x < 3 || y < 1) throw DomainError("exhaustive_cover needs x >= 3 and y >= 1");
  if (y > kMaxWindow) throw ResourceError("cover target y exceeds window ceiling");
  const auto primes = primes_below(x);
  Natural modulus = 1;
  for (auto p : primes) modulus *= natural(p);
  if (modulus > natural(opts.search_ceiling)) {
    throw ResourceError("P(x) = " + to_string(modulus) + " exceeds search ceiling " +
                        std::to_string(opts.search_ceiling));
  }
  if (!passes_counting_bound(x, y)) return std::nullopt;

  std::optional<std::vector<std::uint64_t>> best;
  if (opts.threads <= 1 || primes.size() < 2) {
    best = CoverSearch(primes, y, opts.allow_zero_residue).run(std::nullopt);
  } else {
    // One task per residue of the largest prime; the lexicographically
    // least tuple is chosen after all tasks join.
    const std::uint64_t p_last = primes.back();
    const std::uint64_t g_hi = opts.allow_zero_residue ? p_last : p_last - 1;
    std::vector<std::future<std::optional<std::vector<std::uint64_t>>>> tasks;
    std::vector<std::optional<std::vector<std::uint64_t>>> results;
    for (std::uint64_t g = 1; g <= g_hi; ++g) {
      tasks.push_back(std::async(std::launch::async, [&, g] {
        return CoverSearch(primes, y, opts.allow_zero_residue).run(g);
      }));
      if (tasks.size() == opts.threads || g == g_hi) {
        for (auto& t : tasks) results.push_back(t.get());
        tasks.clear();
      }
    }
    for (auto& r : results) {
      if (r && (!best || *r < *best)) best = std::move(r);
    }
  }
  if (!best) return std::nullopt;

  std::vector<ResidueClass> classes;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const std::uint64_t p = primes[i];
    classes.push_back({p, (p - (*best)[i] % p) % p});
  }
  return CoveringAssignment::from_classes(x, y, std::move(classes));
}

Natural crt_combine(std::span<const std::uint64_t> moduli,
                    std::span<const std::uint64_t> residues) {
  if (moduli.size() != residues.size()) throw DomainError("CRT size mismatch");
  Natural m = 0;
  Natural mod = 1;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    const Natural p = natural(moduli[i]);
    const Natural r = natural(residues[i] % moduli[i]);
    // m + mod * t = r (mod p)
    Natural t = (r - m % p) * inverse_mod(mod % p, p);
    mpz_mod(t.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t());
    m += mod * t;
    mod *= p;
  }
  return m;
}

CrtSolution crt_solve(const CoveringAssignment& assignment, bool require_coprime) {
  const auto primes = primes_below(assignment.x);
  std::vector<std::uint64_t> residues;
  for (auto p : primes) {
    auto it = std::find_if(assignment.classes.begin(), assignment.classes.end(),
                           [p](const ResidueClass& c) { return c.p == p; });
    if (it == assignment.classes.end()) {
      residues.push_back(1);
      continue;
    }
    if (it->h == 0 && require_coprime) {
      throw DomainError("class 0 mod " + std::to_string(p) +
                        " forces p | m0, so gcd(m0, P(x)) = 1 is impossible");
    }
    residues.push_back((p - it->h) % p);
  }
  CrtSolution out;
  out.modulus = 1;
  for (auto p : primes) out.modulus *= natural(p);
  out.m0 = crt_combine(primes, residues);
  // Only reachable without the coprimality requirement.
  if (out.m0 == 0) out.m0 = out.modulus;
  return out;
}

RunVerdict verify_composite_run(const Natural& m0, const Natural& modulus, std::uint64_t y) {
  if (sgn(modulus) <= 0 || sgn(m0) <= 0) throw DomainError("m0 and M must be positive");
  Natural g;
  mpz_gcd(g.get_mpz_t(), m0.get_mpz_t(), modulus.get_mpz_t());
  if (g != 1) throw DomainError("verify_composite_run needs gcd(m0, M) = 1");

  Natural floor_bound = natural(y);
  const auto factors = factorize(modulus);
  if (!factors.empty() && factors.back().prime > floor_bound) floor_bound = factors.back().prime;

  RunVerdict out;
  Natural m = m0 % modulus;
  if (m <= floor_bound) {
    Natural steps = (floor_bound - m) / modulus + 1;
    m += steps * modulus;
  }
  out.representative = m;
  for (std::uint64_t v = 1; v <= y; ++v) {
    if (is_prime(Natural(m + natural(v)))) {
      out.first_failing_v = v;
      break;
    }
  }
  out.passed = !out.first_failing_v.has_value();
  for (std::uint64_t v = 1; v <= y; ++v) {
    if (is_prime(Natural(m0 + natural(v)))) {
      out.canonical_first_failing_v = v;
      break;
    }
  }
  return out;
}

SievedWindow sifted_set(std::uint64_t lo, std::uint64_t hi, std::vector<ResidueClass> classes) {
  if (lo > hi) throw DomainError("sifted_set needs lo <= hi");
  if (hi - lo >= kMaxWindow) throw ResourceError("sieve window exceeds ceiling");
  std::vector<bool> removed(hi - lo + 1, false);
  for (const auto& c : classes) {
    if (c.p == 0 || c.h >= c.p) throw DomainError("malformed residue class");
    // First element of [lo, hi] congruent to h.
    std::uint64_t start = lo + (c.h + c.p - lo % c.p) % c.p;
    for (std::uint64_t m = start; m <= hi && m >= start; m += c.p) {
      removed[m - lo] = true;
      if (hi - m < c.p) break;
    }
  }
  SievedWindow out;
  out.lo = lo;
  out.hi = hi;
  for (std::uint64_t i = 0; i < removed.size(); ++i) {
    if (!removed[i]) out.survivors.push_back(lo + i);
  }
  out.removed = std::move(classes);
  return out;
}

SurvivorCount survivor_count(std::uint64_t x, std::uint64_t y,
                             std::span<const ResidueClass> a,
                             std::span<const ResidueClass> b) {
  SurvivorCount out;
  out.x = x;
  out.y = y;
  out.x_over_log_x = x > 1 ? static_cast<double>(x) / std::log(static_cast<double>(x)) : 0.0;
  if (y <= x) return out;
  auto hit = [](std::span<const ResidueClass> cls, std::uint64_t q) {
    return std::any_of(cls.begin(), cls.end(),
                       [q](const ResidueClass& c) { return q % c.p == c.h; });
  };
  for_each_prime(x + 1, y, [&](std::uint64_t q) {
    if (!hit(a, q) && !hit(b, q)) out.survivors.push_back(q);
  });
  out.count = out.survivors.size();
  return out;
}

ModelParams params(double x, double C0, bool toy_override) {
  ModelParams out;
  out.x = x;
  out.C0 = C0;
  if (!(x > std::exp(1.0))) throw DomainError("params needs x > e");
  out.log1 = std::log(x);
  out.log2 = std::log(out.log1);
  out.log3 = std::log(out.log2);
  // log3 x = 0 exactly at x = e^e; absorb rounding at that boundary.
  if (!toy_override && !(out.log3 > 64 * std::numeric_limits<double>::epsilon())) {
    throw DomainError("log3 x <= 0 (x <= e^e); pass the toy override to evaluate anyway");
  }
  out.y = C0 * x * out.log1 * out.log3 / out.log2;
  out.z = std::exp(out.log1 * out.log3 / (4.0 * out.log2));
  out.S = {std::pow(out.log1, 20.0), out.z};
  out.P = {x / 2.0, x};
  out.Q = {x, out.y};
  out.G0 = out.log1 * out.log1;
  out.sigma1 = out.G0 / std::cbrt(out.log2);
  out.sigma2 = out.G0 / std::pow(out.log2, 1.0 / 6.0);
  if (x <= 1e9) {
    out.log_primorial = log_primorial(static_cast<std::uint64_t>(std::ceil(x)));
    out.log_primorial_exact = true;
  } else {
    out.log_primorial = x;  // ln P(x) = x(1 + o(1))
  }
  out.log_H = out.sigma1 * out.log_primorial;
  out.log_xi = out.sigma2 * out.log_primorial / 2.0;
  out.tau = out.log_H > 0.0 ? out.log_xi / out.log_H : 0.0;
  return out;
}

std::uint64_t kth_power_class(std::uint64_t s, std::uint64_t c, std::uint64_t k) {
  if (!is_prime(s)) throw DomainError("modulus s must be prime");
  if (c % s == s - 1) throw DomainError("c = -1 (mod s) is excluded");
  const std::uint64_t pw = mod_pow((c + 1) % s, k, s);
  return (1 + s - pw) % s;
}

std::optional<std::uint64_t> power_class_witness(std::uint64_t s, std::uint64_t a,
                                                 std::uint64_t k) {
  if (!is_prime(s)) throw DomainError("modulus s must be prime");
  const std::uint64_t target = (1 + s - a % s) % s;  // (c + 1)^k
  if (target == 0) return std::nullopt;
  for (std::uint64_t t = 1; t < s; ++t) {
    if (mod_pow(t, k, s) == target) return t - 1;
  }
  return std::nullopt;
}

bool in_power_class_family(std::span<const ResidueClass> classes, std::uint64_t k) {
  for (const auto& c : classes) {
    if (!is_prime(c.p)) throw DomainError("class modulus must be prime");
    const std::uint64_t target = (1 + c.p - c.h % c.p) % c.p;
    if (target == 0) return false;
    if (c.p == 2) continue;
    // Euler's criterion for k-th power residues.
    const std::uint64_t g = std::gcd(k, c.p - 1);
    if (k != 0 && mod_pow(target, (c.p - 1) / g, c.p) != 1) return false;
    if (k == 0 && target != 1) return false;
  }
  return true;
}

Natural matrix_entry(const Natural& m0, const Natural& px, std::uint64_t r,
                     std::uint64_t v, std::uint64_t k) {
  if (r < 1 || v < 1) throw DomainError("matrix_entry needs r >= 1 and v >= 1");
  Natural base = m0 + 1 + natural(r) * px;
  Natural out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), k);
  return out + natural(v) - 1;
}

std::vector<std::uint64_t> matrix_row_noncomposites(const Natural& m0, const Natural& px,
                                                    std::uint64_t r, std::uint64_t y,
                                                    std::uint64_t k) {
  std::vector<std::uint64_t> out;
  const Natural first = matrix_entry(m0, px, r, 1, k);
  for (std::uint64_t v = 2; v <= y; ++v) {
    const Natural a = first + natural(v - 1);
    if (a < 4 || is_prime(a)) out.push_back(v);
  }
  return out;
}

CrtSolution solve_power_system(std::span<const PowerCongruence> system) {
  std::set<std::uint64_t> seen;
  std::vector<std::uint64_t> moduli, residues;
  for (const auto& c : system) {
    if (!is_prime(c.p)) throw DomainError("congruence modulus must be prime");
    if (!seen.insert(c.p).second) {
      throw DomainError("prime " + std::to_string(c.p) +
                        " is assigned to more than one congruence category");
    }
    moduli.push_back(c.p);
    residues.push_back(c.residue % c.p);
  }
  CrtSolution out;
  out.modulus = 1;
  for (auto p : moduli) out.modulus *= natural(p);
  out.m0 = crt_combine(moduli, residues);
  return out;
}

std::vector<RowTarget> row_targets(std::span<const std::pair<std::uint64_t, std::uint64_t>> v_to_p,
                                   std::uint64_t k) {
  std::vector<RowTarget> out;
  for (const auto& [v, p] : v_to_p) out.push_back({v, p, power_class_witness(p, v % p, k)});
  return out;
}

std::vector<std::uint64_t> exceptional_set(std::span<const RowTarget> targets) {
  std::vector<std::uint64_t> out;
  for (const auto& t : targets) {
    if (!t.e) out.push_back(t.v);
  }
  return out;
}

}  // namespace gapkac
