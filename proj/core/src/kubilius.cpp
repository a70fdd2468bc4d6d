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

#include "gapkac/kubilius.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>
#include <string>

#include "gapkac/additive.hpp"
#include "gapkac/primes.hpp"

namespace gapkac {

namespace {

constexpr std::uint64_t kSimulationBlock = 4096;

std::uint32_t mask_of(const Natural& m, std::span<const std::uint64_t> primes) {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (mpz_divisible_ui_p(m.get_mpz_t(), primes[i])) mask |= 1u << i;
  }
  return mask;
}

Natural product_of(std::uint32_t mask, std::span<const std::uint64_t> primes) {
  Natural k = 1;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (mask & (1u << i)) k *= natural(primes[i]);
  }
  return k;
}

void check_cell_budget(std::size_t n, unsigned max_primes) {
  if (n > max_primes) {
    throw ResourceError("model needs 2^" + std::to_string(n) +
                        " cells; ceiling is 2^" + std::to_string(max_primes));
  }
}

template <typename Cell, typename Field>
Ratio sum_over_supersets(const std::vector<Cell>& cells, std::uint32_t required,
                         Field field) {
  Ratio acc = 0;
  for (const auto& c : cells) {
    if ((c.mask & required) == required) acc += c.*field;
  }
  return acc;
}

// SplitMix64, used to derive one independent stream per sample block.
std::uint64_t splitmix64(std::uint64_t state) {
  std::uint64_t z = state + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

struct BlockResult {
  std::uint64_t inside = 0;
  std::uint64_t eta_total = 0;
};

BlockResult run_block(std::span<const double> marginals, const SimulationConfig& cfg,
                      std::uint64_t block, std::uint64_t count) {
  std::mt19937_64 gen(splitmix64(cfg.seed ^ splitmix64(block)));
  const double lo = cfg.alpha - cfg.eps;
  const double hi = cfg.alpha + cfg.eps;
  BlockResult out;
  for (std::uint64_t i = 0; i < count; ++i) {
    unsigned eta = 0;
    for (double q : marginals) {
      const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
      if (u < q) ++eta;
    }
    out.eta_total += eta;
    const double t = (static_cast<double>(eta) - cfg.centering) / cfg.scale;
    if (t > lo && t < hi) ++out.inside;
  }
  return out;
}

}  // namespace

const KubiliusCell& KubiliusModel::cell(const Natural& k) const {
  for (const auto& c : cells) {
    if (c.k == k) return c;
  }
  throw DomainError("k = " + to_string(k) + " is not a squarefree divisor of D");
}

Ratio KubiliusModel::mu_of(std::uint32_t required) const {
  return sum_over_supersets(cells, required, &KubiliusCell::mu);
}

Ratio KubiliusModel::nu_of(std::uint32_t required) const {
  return sum_over_supersets(cells, required, &KubiliusCell::nu);
}

KubiliusModel build_classic(std::uint64_t x, std::uint64_t r, unsigned max_primes) {
  if (r < 2 || r > x) throw DomainError("build_classic needs 2 <= r <= x");
  KubiliusModel model;
  model.x = x;
  model.r = r;
  model.primes = primes_in_range(2, r);
  const std::size_t n = model.primes.size();
  check_cell_budget(n, max_primes);
  model.D = product_of((1u << n) - 1, model.primes);

  std::vector<std::uint64_t> counts(std::size_t{1} << n, 0);
  for (std::uint64_t m = 1; m <= x; ++m) {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (m % model.primes[i] == 0) mask |= 1u << i;
    }
    ++counts[mask];
  }

  model.cells.resize(counts.size());
  for (std::uint32_t mask = 0; mask < counts.size(); ++mask) {
    auto& c = model.cells[mask];
    c.mask = mask;
    c.k = product_of(mask, model.primes);
    c.count = counts[mask];
    c.nu = ratio(natural(c.count), natural(x));
    Ratio mu(1);
    for (std::size_t i = 0; i < n; ++i) {
      const Natural p = natural(model.primes[i]);
      mu *= (mask & (1u << i)) ? ratio(1, p) : ratio(p - 1, p);
    }
    c.mu = mu;
  }
  return model;
}

double kubilius_L(double x, double r) {
  const double u = std::log(x) / std::log(r);
  return std::exp(-0.125 * u * std::log(u)) + std::pow(x, -0.1);
}

ClassicComparison compare_classic(const KubiliusModel& model) {
  ClassicComparison out;
  Ratio tv = 0;
  for (const auto& c : model.cells) tv += abs(c.nu - c.mu);
  out.total_variation = tv / 2;

  const Natural x = natural(model.x);
  for (const auto& c : model.cells) {
    if (c.k * c.k > x) continue;  // k <= sqrt(x)
    // mu = (1/k) prod(1 - 1/p), so the predicted count is x * mu.
    const Ratio predicted = c.mu * x;
    const Ratio rel = abs(Ratio(natural(c.count)) / predicted - 1);
    const double value = rel.get_d();
    ++out.cells_compared;
    if (value > out.max_relative_error || out.cells_compared == 1) {
      out.max_relative_error = value;
      out.argmax_k = c.k;
    }
  }
  out.L = kubilius_L(static_cast<double>(model.x), static_cast<double>(model.r));
  out.vacuous = out.L >= 1.0;
  return out;
}

Ratio ShiftedModel::literal_total() const {
  Ratio acc = 0;
  for (const auto& c : cells) acc += c.mu_literal;
  return acc;
}

Ratio ShiftedModel::normalized_of(std::uint32_t required) const {
  return sum_over_supersets(cells, required, &ShiftedCell::mu_normalized);
}

Ratio ShiftedModel::nu_of(std::uint32_t required) const {
  return sum_over_supersets(cells, required, &ShiftedCell::nu);
}

ShiftedModel build_shifted(const Natural& M, const Natural& m0, std::uint64_t u,
                           std::uint64_t r_lo, std::uint64_t r_hi,
                           std::uint64_t window_lo, std::uint64_t window_hi,
                           unsigned max_primes) {
  if (sgn(M) <= 0 || sgn(m0) <= 0) throw DomainError("M and m0 must be positive");
  Natural g;
  mpz_gcd(g.get_mpz_t(), m0.get_mpz_t(), M.get_mpz_t());
  if (g != 1) throw DomainError("build_shifted needs gcd(m0, M) = 1");
  if (r_lo >= r_hi) throw DomainError("empty r range");

  ShiftedModel model;
  model.M = M;
  model.m0 = m0;
  model.u = u;
  model.r_lo = r_lo;
  model.r_hi = r_hi;
  model.window_lo = window_lo;
  model.window_hi = window_hi;
  if (window_hi > window_lo) model.window_primes = primes_in_range(window_lo + 1, window_hi);
  const std::size_t n = model.window_primes.size();
  check_cell_budget(n, max_primes);
  for (auto p : model.window_primes) {
    if (mpz_divisible_ui_p(M.get_mpz_t(), p)) {
      throw DomainError("window prime " + std::to_string(p) + " divides M");
    }
  }
  model.D = product_of(n == 0 ? 0 : (1u << n) - 1, model.window_primes);

  for (std::uint64_t r = r_lo + 1; r <= r_hi; ++r) {
    const Natural m1 = m0 + natural(r) * M;
    if (!is_prime(m1)) continue;
    const Natural m2 = m1 + natural(u);
    model.roster_r.push_back(r);
    model.roster.push_back(m2);
    model.roster_mask.push_back(mask_of(m2, model.window_primes));
  }
  if (model.roster.empty()) throw DomainError("empty roster: no m0 + rM is prime");

  std::vector<std::uint64_t> counts(std::size_t{1} << n, 0);
  for (auto mask : model.roster_mask) ++counts[mask];

  const Natural size = natural(model.roster.size());
  model.cells.resize(counts.size());
  for (std::uint32_t mask = 0; mask < counts.size(); ++mask) {
    auto& c = model.cells[mask];
    c.mask = mask;
    c.k = product_of(mask, model.window_primes);
    c.count = counts[mask];
    c.nu = ratio(natural(c.count), size);
    Ratio outside(1);
    Ratio inside(1);
    for (std::size_t i = 0; i < n; ++i) {
      const Natural p = natural(model.window_primes[i]);
      if (mask & (1u << i)) {
        inside *= ratio(1, p - 1);
      } else {
        outside *= ratio(p - 2, p - 1);
      }
    }
    c.mu_literal = outside / Ratio(c.k);
    c.mu_normalized = inside * outside;
  }
  return model;
}

unsigned eta_star(const ShiftedModel& model, const Natural& m) {
  unsigned count = 0;
  for (auto p : model.window_primes) {
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) ++count;
  }
  return count;
}

unsigned window_defect(const Natural& m, std::uint64_t lo, std::uint64_t hi) {
  if (lo >= hi) throw DomainError("window_defect needs lo < hi");
  unsigned count = 0;
  for (const auto& [p, e] : factorize(m)) {
    if (p > natural(lo) && p <= natural(hi)) ++count;
  }
  return count;
}

std::pair<double, double> eta_moments(std::span<const std::uint64_t> window_primes) {
  double mean = 0.0, var = 0.0;
  for (auto p : window_primes) {
    const double q = 1.0 / static_cast<double>(p - 1);
    mean += q;
    var += q * (1.0 - q);
  }
  return {mean, std::sqrt(var)};
}

SimulationReport simulate_clt(std::span<const std::uint64_t> window_primes,
                              const SimulationConfig& cfg) {
  if (!(cfg.scale > 0.0)) throw DomainError("simulate_clt needs scale > 0");
  if (cfg.samples < 1000) throw DomainError("simulate_clt needs at least 1000 samples");
  std::vector<double> marginals;
  for (auto p : window_primes) {
    if (p < 2) throw DomainError("window entries must be primes");
    marginals.push_back(1.0 / static_cast<double>(p - 1));
  }

  const std::uint64_t blocks = (cfg.samples + kSimulationBlock - 1) / kSimulationBlock;
  std::vector<BlockResult> results(blocks);
  auto block_size = [&](std::uint64_t b) {
    return std::min(kSimulationBlock, cfg.samples - b * kSimulationBlock);
  };
  const unsigned workers = std::max(1u, cfg.threads);
  if (workers == 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) {
      results[b] = run_block(marginals, cfg, b, block_size(b));
    }
  } else {
    std::vector<std::future<void>> tasks;
    for (unsigned w = 0; w < workers; ++w) {
      tasks.push_back(std::async(std::launch::async, [&, w] {
        for (std::uint64_t b = w; b < blocks; b += workers) {
          results[b] = run_block(marginals, cfg, b, block_size(b));
        }
      }));
    }
    for (auto& t : tasks) t.get();
  }

  SimulationReport out;
  out.seed = cfg.seed;
  out.samples = cfg.samples;
  std::uint64_t eta_total = 0;
  for (const auto& r : results) {
    out.in_count += r.inside;
    eta_total += r.eta_total;
  }
  const double n = static_cast<double>(cfg.samples);
  out.fraction = static_cast<double>(out.in_count) / n;
  out.mean_eta = static_cast<double>(eta_total) / n;
  out.gaussian_mass = gaussian_mass(cfg.alpha, cfg.eps);
  out.standard_error = std::sqrt(out.gaussian_mass * (1.0 - out.gaussian_mass) / n);
  out.z_score = out.standard_error > 0.0
                    ? (out.fraction - out.gaussian_mass) / out.standard_error
                    : 0.0;
  return out;
}

SimulationReport simulate_clt(const ShiftedModel& model, const SimulationConfig& cfg) {
  return simulate_clt(model.window_primes, cfg);
}

}  // namespace gapkac
