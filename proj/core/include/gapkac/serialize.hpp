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

// JSON and CSV forms of the result types. Big integers are decimal strings
// and ratios are "a/b" strings, so nothing assumes 64-bit range.

#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gapkac/additive.hpp"
#include "gapkac/gaps.hpp"
#include "gapkac/kubilius.hpp"
#include "gapkac/rankin.hpp"
#include "gapkac/sieveeval.hpp"

namespace gapkac {

using Json = nlohmann::ordered_json;

// Shortest round-trip decimal form; non-finite values become
// "inf", "-inf" or "nan".
std::string format_double(double v);

// Doubles go through format_double so that output is locale independent;
// non-finite values are emitted as strings.
Json json_number(double v);

void to_json(Json& j, const GapRecord& r);
void to_json(Json& j, const GapStatistic& s);
void to_json(Json& j, const TheoremSample& s);
void to_json(Json& j, const SurveyResult& s);

void to_json(Json& j, const ResidueClass& c);
// {x, y, classes: [{p, h}], uncovered}
void to_json(Json& j, const CoveringAssignment& a);
// {M, m0}
void to_json(Json& j, const CrtSolution& s);
void to_json(Json& j, const RunVerdict& v);
void to_json(Json& j, const SurvivorCount& s);
void to_json(Json& j, const ModelParams& p);

void to_json(Json& j, const AdditiveProfile& p);
void to_json(Json& j, const EkNormalization& n);

// Measure tables are {k: {nu, mu}}.
void to_json(Json& j, const KubiliusModel& m);
void to_json(Json& j, const ClassicComparison& c);
void to_json(Json& j, const ShiftedModel& m);
void to_json(Json& j, const SimulationReport& r);

void to_json(Json& j, const MainTerm& m);
void to_json(Json& j, const DimensionCheck& d);
void to_json(Json& j, const RemainderTable& t);
void to_json(Json& j, const SieveReport& r);
void to_json(Json& j, const ShiftedRemainderSum& s);
void to_json(Json& j, const BvReport& r);

// RFC 4180 writer: fields containing a comma, quote, CR or LF are quoted and
// embedded quotes doubled; records end in CRLF.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void row(const std::vector<std::string>& fields);
  void row(std::initializer_list<std::string> fields) { row(std::vector<std::string>(fields)); }

  static std::string escape(const std::string& field);

 private:
  std::ostream& out_;
};

}  // namespace gapkac
