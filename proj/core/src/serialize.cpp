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

#include "gapkac/serialize.hpp"

#include <charconv>
#include <cmath>

namespace gapkac {

namespace {

Json optional_u64(const std::optional<std::uint64_t>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json window_json(const Window& w) {
  return Json{{"lo", json_number(w.lo)}, {"hi", json_number(w.hi)}};
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Json json_number(double v) {
  if (std::isfinite(v)) return Json(v);
  return Json(format_double(v));
}

void to_json(Json& j, const GapRecord& r) {
  j = Json{{"n", r.n}, {"p", r.p}, {"next", r.next}, {"gap", r.gap},
           {"merit", json_number(r.merit)}};
}

void to_json(Json& j, const GapStatistic& s) {
  j = Json{{"x", json_number(s.x)}, {"count", s.count}, {"A", json_number(s.A)},
           {"G", json_number(s.G)}, {"argmax_n", s.argmax_n}};
}

void to_json(Json& j, const TheoremSample& s) {
  j = Json{{"n", s.gap.n}, {"p", s.gap.p}, {"gap", s.gap.gap},
           {"merit", json_number(s.gap.merit)}, {"u", s.u},
           {"omega_star", s.omega_star}, {"T", json_number(s.T)}};
}

void to_json(Json& j, const SurveyResult& s) {
  j = Json{{"alpha", json_number(s.alpha)},
           {"eps", json_number(s.eps)},
           {"count", s.samples.size()},
           {"skipped", s.skipped},
           {"in_interval_fraction", json_number(s.in_interval_fraction)},
           {"gaussian_mass", json_number(s.gaussian_mass)},
           {"samples", s.samples}};
}

void to_json(Json& j, const ResidueClass& c) { j = Json{{"p", c.p}, {"h", c.h}}; }

void to_json(Json& j, const CoveringAssignment& a) {
  j = Json{{"x", a.x}, {"y", a.y}, {"classes", a.classes}, {"uncovered", a.uncovered()}};
}

void to_json(Json& j, const CrtSolution& s) {
  j = Json{{"M", to_string(s.modulus)}, {"m0", to_string(s.m0)}};
}

void to_json(Json& j, const RunVerdict& v) {
  j = Json{{"representative", to_string(v.representative)},
           {"passed", v.passed},
           {"first_failing_v", optional_u64(v.first_failing_v)},
           {"canonical_first_failing_v", optional_u64(v.canonical_first_failing_v)}};
}

void to_json(Json& j, const SurvivorCount& s) {
  j = Json{{"x", s.x}, {"y", s.y}, {"count", s.count},
           {"x_over_log_x", json_number(s.x_over_log_x)}, {"survivors", s.survivors}};
}

void to_json(Json& j, const ModelParams& p) {
  j = Json{{"x", json_number(p.x)},
           {"C0", json_number(p.C0)},
           {"log1", json_number(p.log1)},
           {"log2", json_number(p.log2)},
           {"log3", json_number(p.log3)},
           {"y", json_number(p.y)},
           {"z", json_number(p.z)},
           {"S", window_json(p.S)},
           {"P", window_json(p.P)},
           {"Q", window_json(p.Q)},
           {"G0", json_number(p.G0)},
           {"sigma1", json_number(p.sigma1)},
           {"sigma2", json_number(p.sigma2)},
           {"log_primorial", json_number(p.log_primorial)},
           {"log_primorial_exact", p.log_primorial_exact},
           {"log_H", json_number(p.log_H)},
           {"log_xi", json_number(p.log_xi)},
           {"tau", json_number(p.tau)}};
}

void to_json(Json& j, const AdditiveProfile& p) {
  j = Json{{"m", to_string(p.m)}, {"omega", p.omega}, {"omega_star", p.omega_star},
           {"threshold", json_number(p.threshold)}};
}

void to_json(Json& j, const EkNormalization& n) {
  j = Json{{"x", json_number(n.x)}, {"A", json_number(n.A)}, {"B", json_number(n.B)}};
}

void to_json(Json& j, const KubiliusModel& m) {
  Json cells = Json::object();
  Json counts = Json::object();
  for (const auto& c : m.cells) {
    const auto k = to_string(c.k);
    cells[k] = Json{{"nu", to_string(c.nu)}, {"mu", to_string(c.mu)}};
    counts[k] = c.count;
  }
  j = Json{{"x", m.x}, {"r", m.r}, {"D", to_string(m.D)}, {"primes", m.primes},
           {"cells", std::move(cells)}, {"counts", std::move(counts)}};
}

void to_json(Json& j, const ClassicComparison& c) {
  j = Json{{"total_variation", to_string(c.total_variation)},
           {"total_variation_real", json_number(c.total_variation.get_d())},
           {"max_relative_error", json_number(c.max_relative_error)},
           {"argmax_k", to_string(c.argmax_k)},
           {"cells_compared", c.cells_compared},
           {"L", json_number(c.L)},
           {"vacuous", c.vacuous}};
}

void to_json(Json& j, const ShiftedModel& m) {
  Json cells = Json::object();
  for (const auto& c : m.cells) {
    cells[to_string(c.k)] = Json{{"count", c.count},
                                 {"nu", to_string(c.nu)},
                                 {"mu", to_string(c.mu_normalized)},
                                 {"mu_literal", to_string(c.mu_literal)}};
  }
  Json roster = Json::array();
  for (std::size_t i = 0; i < m.roster.size(); ++i) {
    roster.push_back(Json{{"r", m.roster_r[i]}, {"m", to_string(m.roster[i])}});
  }
  j = Json{{"M", to_string(m.M)},
           {"m0", to_string(m.m0)},
           {"u", m.u},
           {"r_range", Json::array({m.r_lo, m.r_hi})},
           {"window", Json::array({m.window_lo, m.window_hi})},
           {"window_primes", m.window_primes},
           {"D", to_string(m.D)},
           {"roster", std::move(roster)},
           {"literal_total", to_string(m.literal_total())},
           {"cells", std::move(cells)}};
}

void to_json(Json& j, const SimulationReport& r) {
  j = Json{{"seed", r.seed},
           {"samples", r.samples},
           {"in_count", r.in_count},
           {"fraction", json_number(r.fraction)},
           {"gaussian_mass", json_number(r.gaussian_mass)},
           {"standard_error", json_number(r.standard_error)},
           {"z_score", json_number(r.z_score)},
           {"mean_eta", json_number(r.mean_eta)}};
}

void to_json(Json& j, const MainTerm& m) {
  j = Json{{"W", to_string(m.W)}, {"W_real", json_number(m.W_real)},
           {"XW", json_number(m.XW)}, {"tau", json_number(m.tau)}};
}

void to_json(Json& j, const DimensionCheck& d) {
  j = Json{{"worst_excess", json_number(d.worst_excess)}, {"worst_w", d.worst_w},
           {"holds", d.holds}};
}

void to_json(Json& j, const RemainderTable& t) {
  Json entries = Json::array();
  for (const auto& r : t.entries) {
    entries.push_back(Json{{"d", to_string(r.d)},
                           {"omega", r.omega},
                           {"Q_d", r.count},
                           {"zeta_d", to_string(r.zeta_d)},
                           {"R_d", to_string(r.R)}});
  }
  j = Json{{"xi", json_number(t.xi)},
           {"weighted_sum", to_string(t.weighted_sum)},
           {"entries", std::move(entries)}};
}

void to_json(Json& j, const SieveReport& r) {
  j = Json{{"exact_count", r.exact_count},
           {"legendre", r.legendre ? Json(*r.legendre) : Json(nullptr)},
           {"main", r.main},
           {"dimension", r.dimension},
           {"error_bound", json_number(r.error_bound)},
           {"remainders", r.remainders}};
}

void to_json(Json& j, const ShiftedRemainderSum& s) {
  Json terms = Json::array();
  for (const auto& t : s.terms) {
    terms.push_back(Json{{"k", to_string(t.k)},
                         {"d", to_string(t.d)},
                         {"Q_d", t.count},
                         {"main", to_string(t.main)},
                         {"R", to_string(t.R)}});
  }
  j = Json{{"xi", json_number(s.xi)},
           {"roster_size", s.roster_size},
           {"total", to_string(s.total)},
           {"total_real", json_number(s.total.get_d())},
           {"weighted_total", to_string(s.weighted_total)},
           {"cauchy_schwarz", json_number(s.cauchy_schwarz)},
           {"li_prediction", json_number(s.li_prediction)},
           {"terms", std::move(terms)}};
}

void to_json(Json& j, const BvReport& r) {
  Json terms = Json::array();
  for (const auto& t : r.terms) {
    terms.push_back(Json{{"q", t.q}, {"max_error", json_number(t.max_error)},
                         {"a", t.a}, {"X", json_number(t.X)}});
  }
  j = Json{{"Y", r.Y},
           {"Q", r.Q},
           {"R", r.R},
           {"total", json_number(r.total)},
           {"first_term", Json::array({json_number(r.first_term[0]),
                                       json_number(r.first_term[1]),
                                       json_number(r.first_term[2])})},
           {"second_term", json_number(r.second_term)},
           {"terms", std::move(terms)}};
}

std::string CsvWriter::escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    out_ << escape(fields[i]);
  }
  out_ << "\r\n";
}

}  // namespace gapkac
