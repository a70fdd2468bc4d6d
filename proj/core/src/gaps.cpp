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

#include "gapkac/gaps.hpp"

#include <cmath>
#include <string>

#include "gapkac/additive.hpp"

namespace gapkac {

namespace {

// Upper bound for the k-th prime (Rosser: p_k < k(ln k + ln ln k), k >= 6).
std::uint64_t nth_prime_bound(std::uint64_t k) {
  if (k < 6) return 13;
  const double kd = static_cast<double>(k);
  return static_cast<std::uint64_t>(kd * (std::log(kd) + std::log(std::log(kd)))) + 1;
}

double positive_log(double v, const char* what) {
  if (!(v > 0.0)) throw DomainError(std::string(what) + " is not positive");
  return std::log(v);
}

}  // namespace

void scan_gaps(std::uint64_t limit,
               const std::function<void(const GapRecord&)>& visit,
               const SieveOptions& opts) {
  std::uint64_t prev = 0;
  std::uint64_t n = 0;
  for_each_prime(2, limit, [&](std::uint64_t p) {
    if (prev != 0) {
      GapRecord r;
      r.n = ++n;
      r.p = prev;
      r.next = p;
      r.gap = p - prev;
      r.merit = static_cast<double>(r.gap) / std::log(static_cast<double>(prev));
      visit(r);
    }
    prev = p;
  }, opts);
}

std::vector<GapRecord> scan_gaps(std::uint64_t limit, const SieveOptions& opts) {
  std::vector<GapRecord> out;
  scan_gaps(limit, [&](const GapRecord& r) { out.push_back(r); }, opts);
  return out;
}

std::vector<GapRecord> maximal_gaps(std::uint64_t limit, const SieveOptions& opts) {
  std::vector<GapRecord> out;
  scan_gaps(limit, [&](const GapRecord& r) {
    if (out.empty() || r.gap > out.back().gap) out.push_back(r);
  }, opts);
  return out;
}

std::vector<GapStatistic> merit_series(std::uint64_t n_max, std::uint64_t step,
                                       const SieveOptions& opts) {
  if (n_max < 1) throw DomainError("merit statistics need at least one gap");
  if (step == 0) step = n_max;
  std::vector<GapStatistic> out;
  double sum = 0.0;
  GapStatistic cur;
  scan_gaps(nth_prime_bound(n_max + 1), [&](const GapRecord& r) {
    if (r.n > n_max) return;
    sum += r.merit;
    if (r.merit > cur.G) {
      cur.G = r.merit;
      cur.argmax_n = r.n;
    }
    if (r.n % step == 0 || r.n == n_max) {
      cur.count = r.n;
      cur.x = static_cast<double>(r.n);
      cur.A = sum / static_cast<double>(r.n);
      out.push_back(cur);
    }
  }, opts);
  return out;
}

GapStatistic merit_stats(double x, const SieveOptions& opts) {
  if (!(x >= 1.0)) throw DomainError("merit_stats needs x >= 1");
  const auto n_max = static_cast<std::uint64_t>(std::floor(x));
  GapStatistic s = merit_series(n_max, n_max, opts).back();
  s.x = x;
  return s;
}

std::string_view to_string(GrowthVariant v) {
  switch (v) {
    case GrowthVariant::westzynthius: return "westzynthius";
    case GrowthVariant::erdos: return "erdos";
    case GrowthVariant::rankin: return "rankin";
    case GrowthVariant::fgkmt: return "fgkmt";
  }
  return "unknown";
}

std::optional<GrowthVariant> parse_growth_variant(std::string_view name) {
  for (auto v : {GrowthVariant::westzynthius, GrowthVariant::erdos,
                 GrowthVariant::rankin, GrowthVariant::fgkmt}) {
    if (to_string(v) == name) return v;
  }
  return std::nullopt;
}

double iterated_log(double x, int k) {
  if (k < 1) throw DomainError("iterated log order must be >= 1");
  double v = x;
  for (int i = 0; i < k; ++i) v = positive_log(v, "iterated log argument");
  return v;
}

double growth_bound_from_log(double log_x, GrowthVariant v) {
  const double l1 = log_x;
  if (!(l1 > 0.0)) throw DomainError("log x is not positive");
  const double l2 = positive_log(l1, "log x");
  if (!(l2 > 0.0)) throw DomainError("log2 x is not positive");
  const double l3 = positive_log(l2, "log2 x");
  if (!(l3 > 0.0)) throw DomainError("log3 x is not positive");
  switch (v) {
    case GrowthVariant::erdos:
      return l1 * l2 / (l3 * l3);
    case GrowthVariant::westzynthius:
    case GrowthVariant::rankin:
    case GrowthVariant::fgkmt:
      break;
  }
  const double l4 = positive_log(l3, "log3 x");
  if (!(l4 > 0.0)) throw DomainError("log4 x is not positive");
  switch (v) {
    case GrowthVariant::westzynthius: return l1 * l3 / l4;
    case GrowthVariant::rankin: return l1 * l2 * l4 / (l3 * l3);
    case GrowthVariant::fgkmt: return l1 * l2 * l4 / l3;
    case GrowthVariant::erdos: break;
  }
  return l1 * l2 / (l3 * l3);
}

double growth_bound(double x, GrowthVariant v) {
  if (!(x > 0.0)) throw DomainError("growth bound needs x > 0");
  return growth_bound_from_log(std::log(x), v);
}

SurveyResult theorem_survey(std::uint64_t limit, double merit_threshold,
                            std::uint64_t u, double alpha, double eps,
                            const SieveOptions& opts) {
  if (limit < 100) throw DomainError("theorem_survey needs limit >= 100");
  if (u < 1) throw DomainError("theorem_survey needs u >= 1");
  SurveyResult out;
  out.alpha = alpha;
  out.eps = eps;
  out.gaussian_mass = gaussian_mass(alpha, eps);
  std::uint64_t inside = 0;
  scan_gaps(limit, [&](const GapRecord& r) {
    if (!(r.merit >= merit_threshold)) return;
    const double ll = std::log(std::log(static_cast<double>(r.p)));
    if (r.p + u < 20 || !(ll > 0.0)) {
      ++out.skipped;
      return;
    }
    TheoremSample s;
    s.gap = r;
    s.u = u;
    s.omega_star = omega_star(r.p + u).omega_star;
    s.T = (static_cast<double>(s.omega_star) - ll) / std::sqrt(ll);
    if (s.T > alpha - eps && s.T < alpha + eps) ++inside;
    out.samples.push_back(s);
  }, opts);
  if (!out.samples.empty()) {
    out.in_interval_fraction =
        static_cast<double>(inside) / static_cast<double>(out.samples.size());
  }
  return out;
}

}  // namespace gapkac
