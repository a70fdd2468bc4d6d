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

#include "gapkac/sieveeval.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <future>
#include <numeric>
#include <string>

#include "gapkac/primes.hpp"

namespace gapkac {

namespace {

bool divides(const Natural& d, const Natural& a) {
  return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

Ratio abs_ratio(const Ratio& q) { return sgn(q) < 0 ? Ratio(-q) : q; }

std::uint64_t pow3(unsigned e) {
  std::uint64_t v = 1;
  while (e--) v *= 3;
  return v;
}

// li(e^log_x), taken from x = 2 upward.
double li_of_log(double log_x) { return std::expint(std::max(log_x, std::log(2.0))); }

Natural phi_natural(const Natural& n) {
  Natural phi = n;
  for (const auto& [p, e] : factorize(n)) phi = phi / p * (p - 1);
  return phi;
}

// Prime powers n < Y with log p, ascending in n.
struct Jump {
  std::uint64_t n;
  std::uint64_t p;
  double log_p;
};

std::vector<Jump> prime_power_jumps(std::uint64_t Y) {
  std::vector<Jump> jumps;
  if (Y < 3) return jumps;
  for (auto p : primes_in_range(2, Y - 1)) {
    const double lp = std::log(static_cast<double>(p));
    for (std::uint64_t pk = p;; pk *= p) {
      jumps.push_back({pk, p, lp});
      if (pk > (Y - 1) / p) break;
    }
  }
  std::sort(jumps.begin(), jumps.end(), [](const Jump& a, const Jump& b) { return a.n < b.n; });
  return jumps;
}

BvTerm bv_term(std::uint64_t q, std::uint64_t R, std::uint64_t Y,
               const std::vector<Jump>& jumps) {
  const std::uint64_t m = q * R;
  const double phi = static_cast<double>(euler_phi(m));
  std::vector<double> psi(m, 0.0);
  BvTerm t;
  t.q = q;
  auto consider = [&](double value, std::uint64_t a, double X) {
    if (value > t.max_error) {
      t.max_error = value;
      t.a = a;
      t.X = X;
    }
  };
  for (const auto& j : jumps) {
    if (m % j.p == 0) continue;  // class not coprime to qR
    const std::uint64_t a = j.n % m;
    const double X = static_cast<double>(j.n);
    consider(std::abs(psi[a] - X / phi), a, X);  // left limit
    psi[a] += j.log_p;
    consider(std::abs(psi[a] - X / phi), a, X);
  }
  const double end = static_cast<double>(Y);
  for (std::uint64_t a = 0; a < m; ++a) {
    if (std::gcd(a, m) != 1) continue;
    consider(std::abs(psi[a] - end / phi), a, end);
  }
  return t;
}

}  // namespace

std::vector<std::uint64_t> SieveProblem::sifting_primes() const {
  std::vector<std::uint64_t> out;
  for (auto p : P) {
    if (p < z) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Ratio SieveProblem::zeta_at(std::uint64_t p) const {
  return zeta ? zeta(p) : Ratio(1);
}

SieveProblem interval_problem(std::uint64_t lo, std::uint64_t hi, std::uint64_t z) {
  if (lo > hi) throw DomainError("interval_problem needs lo <= hi");
  SieveProblem problem;
  for (std::uint64_t a = lo; a <= hi; ++a) problem.Q.push_back(natural(a));
  problem.z = z;
  if (z > 2) problem.P = primes_in_range(2, z - 1);
  problem.X = Ratio(natural(hi - lo + 1));
  return problem;
}

std::uint64_t sieve_count(const SieveProblem& problem) {
  const auto primes = problem.sifting_primes();
  std::uint64_t count = 0;
  for (const auto& a : problem.Q) {
    const bool sifted = std::any_of(primes.begin(), primes.end(), [&](std::uint64_t p) {
      return mpz_divisible_ui_p(a.get_mpz_t(), p) != 0;
    });
    if (!sifted) ++count;
  }
  return count;
}

std::int64_t legendre_count(const SieveProblem& problem) {
  const auto primes = problem.sifting_primes();
  const std::size_t n = primes.size();
  if (n > 63 || (std::uint64_t{1} << n) > kMaxLegendreDivisors) {
    throw ResourceError("Legendre sum over 2^" + std::to_string(n) + " divisors exceeds ceiling");
  }
  // at_least[mask] = |Q_d| for d the product of the primes in mask.
  std::vector<std::int64_t> at_least(std::size_t{1} << n, 0);
  for (const auto& a : problem.Q) {
    std::size_t mask = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mpz_divisible_ui_p(a.get_mpz_t(), primes[i])) mask |= std::size_t{1} << i;
    }
    ++at_least[mask];
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t mask = 0; mask < at_least.size(); ++mask) {
      if (!(mask & bit)) at_least[mask] += at_least[mask | bit];
    }
  }
  std::int64_t total = 0;
  for (std::size_t mask = 0; mask < at_least.size(); ++mask) {
    total += (std::popcount(mask) % 2 ? -1 : 1) * at_least[mask];
  }
  return total;
}

MainTerm main_term(const SieveProblem& problem) {
  if (problem.z < 2) throw DomainError("sifting limit z must be >= 2");
  if (!(problem.xi > 0.0)) throw DomainError("xi must be positive");
  const double ceiling = 1.0 - 1.0 / problem.A1;
  MainTerm out;
  out.W = 1;
  for (auto p : problem.sifting_primes()) {
    const Ratio zeta = problem.zeta_at(p);
    if (zeta == Ratio(natural(p))) {
      throw DomainError("zeta(" + std::to_string(p) + ") = p makes W(z) vanish");
    }
    const Ratio density = zeta / Ratio(natural(p));
    if (sgn(density) < 0 || density.get_d() > ceiling) {
      throw DomainError("zeta(" + std::to_string(p) + ")/p = " + to_string(density) +
                        " violates 0 <= zeta(p)/p <= 1 - 1/A1");
    }
    out.W *= 1 - density;
  }
  out.W_real = out.W.get_d();
  out.XW = Ratio(problem.X * out.W).get_d();
  out.tau = std::log(problem.xi) / std::log(static_cast<double>(problem.z));
  return out;
}

DimensionCheck dimension_check(const SieveProblem& problem) {
  const auto primes = problem.sifting_primes();
  const double logz = std::log(static_cast<double>(problem.z));
  DimensionCheck out;
  out.worst_w = problem.z;
  double tail = 0.0;
  for (auto it = primes.rbegin(); it != primes.rend(); ++it) {
    const double p = static_cast<double>(*it);
    tail += problem.zeta_at(*it).get_d() * std::log(p) / p;
    const double excess = tail - problem.kappa * (logz - std::log(p));
    if (excess > out.worst_excess) {
      out.worst_excess = excess;
      out.worst_w = *it;
    }
  }
  out.holds = out.worst_excess <= problem.A2;
  return out;
}

RemainderTable remainders(const SieveProblem& problem, double xi) {
  if (!(xi > 0.0)) throw DomainError("xi must be positive");
  const auto primes = problem.sifting_primes();
  const double bound = xi * xi;
  RemainderTable out;
  out.xi = xi;
  out.weighted_sum = 0;
  if (!(bound > 1.0)) return out;

  struct Frame {
    std::size_t next;
    Natural d;
    unsigned omega;
    Ratio zeta_d;
  };
  std::vector<Frame> stack{{0, Natural(1), 0, Ratio(1)}};
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (out.entries.size() >= kMaxRemainderDivisors) {
      throw ResourceError("more than 2^20 remainder moduli below xi^2");
    }
    Remainder r;
    r.d = f.d;
    r.omega = f.omega;
    r.zeta_d = f.zeta_d;
    r.count = static_cast<std::uint64_t>(std::count_if(
        problem.Q.begin(), problem.Q.end(), [&](const Natural& a) { return divides(f.d, a); }));
    r.R = Ratio(natural(r.count)) - f.zeta_d * problem.X / Ratio(f.d);
    r.R.canonicalize();
    out.weighted_sum += Ratio(natural(pow3(r.omega))) * abs_ratio(r.R);
    out.entries.push_back(std::move(r));
    for (std::size_t i = f.next; i < primes.size(); ++i) {
      const Natural d = f.d * natural(primes[i]);
      if (!(d.get_d() < bound)) break;  // primes ascend, so later ones are larger
      const Ratio zp = problem.zeta_at(primes[i]);
      if (sgn(zp) == 0) continue;
      stack.push_back({i + 1, d, f.omega + 1, f.zeta_d * zp});
    }
  }
  std::sort(out.entries.begin(), out.entries.end(),
            [](const Remainder& a, const Remainder& b) { return a.d < b.d; });
  return out;
}

SieveReport analyze(const SieveProblem& problem) {
  SieveReport out;
  out.exact_count = sieve_count(problem);
  try {
    out.legendre = legendre_count(problem);
  } catch (const ResourceError&) {
    out.legendre.reset();
  }
  out.main = main_term(problem);
  out.dimension = dimension_check(problem);
  out.remainders = remainders(problem, problem.xi);
  out.error_bound = out.remainders.weighted_sum.get_d();
  return out;
}

ShiftedRemainderSum shifted_remainder_sum(const ShiftedModel& model, double xi) {
  if (!(xi > 0.0)) throw DomainError("xi must be positive");
  ShiftedRemainderSum out;
  out.xi = xi;
  out.total = 0;
  out.weighted_total = 0;
  out.roster_size = model.roster.size();
  if (model.roster.empty()) return out;

  const auto& primes = model.window_primes;
  const std::size_t n = primes.size();
  const double bound = xi * xi;
  const Ratio size(natural(out.roster_size));

  // d runs over subsets of the window primes with product <= xi^2.
  std::vector<std::uint32_t> d_masks;
  double cs_sum = 0.0;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    double d = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) d *= static_cast<double>(primes[i]);
    }
    if (d <= bound) {
      d_masks.push_back(mask);
      cs_sum += static_cast<double>(pow3(std::popcount(mask))) / d;
    }
  }

  auto phi_of = [&](std::uint32_t mask) {
    Natural phi = 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) phi *= natural(primes[i] - 1);
    }
    return phi;
  };

  for (const auto& cell : model.cells) {
    for (auto dm : d_masks) {
      ShiftedRemainder t;
      t.k = cell.k;
      t.d = 1;
      for (std::size_t i = 0; i < n; ++i) {
        if (dm & (1u << i)) t.d *= natural(primes[i]);
      }
      const std::uint32_t need = cell.mask | dm;
      t.count = static_cast<std::uint64_t>(std::count_if(
          model.roster_mask.begin(), model.roster_mask.end(),
          [&](std::uint32_t m) { return (m & need) == need; }));
      t.main = size / Ratio(phi_of(cell.mask) * phi_of(dm));
      t.main.canonicalize();
      t.R = Ratio(natural(t.count)) - t.main;
      out.total += abs_ratio(t.R);
      out.weighted_total += Ratio(natural(pow3(std::popcount(dm)))) * abs_ratio(t.R);
      out.terms.push_back(std::move(t));
    }
  }
  out.cauchy_schwarz =
      std::sqrt(cs_sum * static_cast<double>(out.roster_size)) * std::sqrt(out.total.get_d());

  const Natural lo = model.m0 + natural(model.r_lo) * model.M;
  const Natural hi = model.m0 + natural(model.r_hi) * model.M;
  out.li_prediction =
      (li_of_log(log_natural(hi)) - li_of_log(log_natural(lo))) /
      phi_natural(model.M).get_d();
  return out;
}

BvReport bv_error_sum(std::uint64_t Y, std::uint64_t Q, std::uint64_t R, unsigned threads,
                      std::uint64_t ceiling) {
  if (R < 1) throw DomainError("bv_error_sum needs R >= 1");
  if (Y > ceiling) {
    throw ResourceError("Y = " + std::to_string(Y) + " exceeds the ceiling " +
                        std::to_string(ceiling));
  }
  BvReport out;
  out.Y = Y;
  out.Q = Q;
  out.R = R;
  const double phiR = static_cast<double>(euler_phi(R));
  const double logY = std::log(static_cast<double>(std::max<std::uint64_t>(Y, 2)));
  for (int B = 1; B <= 3; ++B) {
    out.first_term[B - 1] = static_cast<double>(Y) / phiR * std::pow(logY, -B);
  }
  if (Q == 0) return out;
  const double L = std::log(static_cast<double>(Y) * static_cast<double>(Q));
  out.second_term = std::sqrt(static_cast<double>(Y)) * static_cast<double>(R) *
                    static_cast<double>(R) / phiR * static_cast<double>(Q) * std::pow(L, 5);

  std::vector<std::uint64_t> qs;
  for (std::uint64_t q = 1; q <= Q; ++q) {
    if (std::gcd(q, R) == 1) qs.push_back(q);
  }
  const auto jumps = prime_power_jumps(Y);
  std::vector<BvTerm> terms(qs.size());
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, qs.size()));
  if (workers == 1) {
    for (std::size_t i = 0; i < qs.size(); ++i) terms[i] = bv_term(qs[i], R, Y, jumps);
  } else {
    std::vector<std::future<void>> tasks;
    for (unsigned w = 0; w < workers; ++w) {
      tasks.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t i = w; i < qs.size(); i += workers) {
          terms[i] = bv_term(qs[i], R, Y, jumps);
        }
      }));
    }
    for (auto& t : tasks) t.get();
  }
  for (const auto& t : terms) out.total += t.max_error;  // ascending q
  out.terms = std::move(terms);
  return out;
}

}  // namespace gapkac
