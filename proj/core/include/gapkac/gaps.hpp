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

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "gapkac/primes.hpp"

namespace gapkac {

// One gap d_n = p_{n+1} - p_n. Indices are 1-based: the gap 2 -> 3 has n = 1.
struct GapRecord {
  std::uint64_t n = 0;
  std::uint64_t p = 0;
  std::uint64_t next = 0;
  std::uint64_t gap = 0;
  double merit = 0.0;  // gap / ln p
};

// Mean A(x) and maximum G(x) of the merits of the first floor(x) gaps.
struct GapStatistic {
  double x = 0.0;
  std::uint64_t count = 0;
  double A = 0.0;
  double G = 0.0;
  std::uint64_t argmax_n = 0;
};

// Visits every gap whose upper prime is <= limit, in increasing order.
void scan_gaps(std::uint64_t limit,
               const std::function<void(const GapRecord&)>& visit,
               const SieveOptions& opts = {});
std::vector<GapRecord> scan_gaps(std::uint64_t limit, const SieveOptions& opts = {});

// Gaps strictly larger than every earlier gap (the classical maximal gaps).
std::vector<GapRecord> maximal_gaps(std::uint64_t limit, const SieveOptions& opts = {});

// "n <= x" is read as the gap index: the statistic covers gaps 1..floor(x).
GapStatistic merit_stats(double x, const SieveOptions& opts = {});

// A and G sampled after every `step` gaps up to n_max, for merit-vs-x plots.
std::vector<GapStatistic> merit_series(std::uint64_t n_max, std::uint64_t step,
                                       const SieveOptions& opts = {});

enum class GrowthVariant { westzynthius, erdos, rankin, fgkmt };

std::string_view to_string(GrowthVariant v);
std::optional<GrowthVariant> parse_growth_variant(std::string_view name);

// log_k x with log_1 x = ln x. Throws DomainError when an intermediate
// value is not positive.
double iterated_log(double x, int k);

// The historical lower-bound shapes for G(x), without implied constants:
//   westzynthius  log x log3 x / log4 x
//   erdos         log x log2 x / (log3 x)^2
//   rankin        log x log2 x log4 x / (log3 x)^2
//   fgkmt         log x log2 x log4 x / log3 x
// Every iterated log that appears must be positive.
double growth_bound(double x, GrowthVariant v);
// Same, taking ln x directly so that x beyond double range (log4 x > 0
// needs x > e^(e^e)) can be evaluated.
double growth_bound_from_log(double log_x, GrowthVariant v);

struct TheoremSample {
  GapRecord gap;
  std::uint64_t u = 0;
  unsigned omega_star = 0;
  // (omega*(p_n + u) - ln ln p_n) / sqrt(ln ln p_n)
  double T = 0.0;
};

struct SurveyResult {
  std::vector<TheoremSample> samples;
  // Qualifying gaps dropped because p_n + u < 20 (omega* undefined) or
  // ln ln p_n <= 0.
  std::uint64_t skipped = 0;
  double alpha = 0.0;
  double eps = 1.0;
  double in_interval_fraction = 0.0;
  double gaussian_mass = 0.0;
};

// Joins large-merit gaps with the omega* statistic of p_n + u. Actual gaps
// found by scanning stand in for the constructed gaps of the existence
// theorem; this is a desk-scale proxy, not a construction.
SurveyResult theorem_survey(std::uint64_t limit, double merit_threshold,
                            std::uint64_t u, double alpha = 0.0, double eps = 1.0,
                            const SieveOptions& opts = {});

}  // namespace gapkac
