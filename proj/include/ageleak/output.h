// Copyright 2026 the ageleak authors
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

#ifndef AGELEAK_OUTPUT_H_
#define AGELEAK_OUTPUT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ageleak {

inline constexpr std::string_view kToolName = "ageleak";
inline constexpr std::string_view kToolVersion = "0.1.0";

// One machine-readable result row. The column set is fixed; parameters that
// do not apply stay disengaged and serialize as empty fields, never as 0.
struct OutputRecord {
  std::string policy;
  std::optional<double> lambda;
  std::optional<double> alpha;
  std::optional<double> mu;
  std::optional<std::int64_t> tau;
  std::optional<std::int64_t> n;
  std::optional<std::int64_t> slots;  // column "T"
  std::optional<std::uint64_t> seed;
  std::optional<double> leakage_rate_nats;
  std::optional<double> leakage_rate_bits;
  std::optional<double> age_slots;
  std::optional<double> age_stderr;
  std::string source;
  std::string note;

  bool operator==(const OutputRecord&) const = default;
};

// 9 significant digits, shortest form ("%.9g"); round-trips through
// parse_csv_row at that precision.
std::string format_number(double value);

std::string csv_header();
std::string to_csv_row(const OutputRecord& record);

// Inverse of to_csv_row for one data line (no header, no comments). Throws
// kIo on malformed input. Fields must not contain commas; notes are written
// with ';' separators for that reason.
OutputRecord parse_csv_row(std::string_view line);

}  // namespace ageleak

#endif  // AGELEAK_OUTPUT_H_
