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

#include "ageleak/output.h"

#include <cstdio>
#include <cstdlib>
#include <vector>

#include "ageleak/error.h"

namespace ageleak {

namespace {

constexpr int kColumnCount = 14;

std::string format_int(std::int64_t value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%lld",
                static_cast<long long>(value));
  return buffer;
}

std::string format_uint(std::uint64_t value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%llu",
                static_cast<unsigned long long>(value));
  return buffer;
}

template <typename T, typename Format>
void append_field(std::string& row, const std::optional<T>& value,
                  Format format) {
  row += ',';
  if (value.has_value()) {
    row += format(*value);
  }
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

std::optional<double> parse_double(std::string_view field) {
  if (field.empty()) return std::nullopt;
  std::string text(field);
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size()) {
    throw_error(ErrorCode::kIo, "csv", "malformed numeric field: " + text);
  }
  return value;
}

std::optional<std::int64_t> parse_int(std::string_view field) {
  if (field.empty()) return std::nullopt;
  std::string text(field);
  char* end = nullptr;
  const long long value = std::strtoll(text.c_str(), &end, 10);
  if (end != text.c_str() + text.size()) {
    throw_error(ErrorCode::kIo, "csv", "malformed integer field: " + text);
  }
  return static_cast<std::int64_t>(value);
}

std::optional<std::uint64_t> parse_uint(std::string_view field) {
  if (field.empty()) return std::nullopt;
  std::string text(field);
  char* end = nullptr;
  const unsigned long long value = std::strtoull(text.c_str(), &end, 10);
  if (end != text.c_str() + text.size()) {
    throw_error(ErrorCode::kIo, "csv", "malformed integer field: " + text);
  }
  return static_cast<std::uint64_t>(value);
}

}  // namespace

std::string format_number(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.9g", value);
  return buffer;
}

std::string csv_header() {
  return "policy,lambda,alpha,mu,tau,n,T,seed,leakage_rate_nats,"
         "leakage_rate_bits,age_slots,age_stderr,source,note";
}

std::string to_csv_row(const OutputRecord& record) {
  std::string row = record.policy;
  append_field(row, record.lambda, format_number);
  append_field(row, record.alpha, format_number);
  append_field(row, record.mu, format_number);
  append_field(row, record.tau, format_int);
  append_field(row, record.n, format_int);
  append_field(row, record.slots, format_int);
  append_field(row, record.seed, format_uint);
  append_field(row, record.leakage_rate_nats, format_number);
  append_field(row, record.leakage_rate_bits, format_number);
  append_field(row, record.age_slots, format_number);
  append_field(row, record.age_stderr, format_number);
  row += ',' + record.source;
  row += ',' + record.note;
  return row;
}

OutputRecord parse_csv_row(std::string_view line) {
  const std::vector<std::string_view> fields = split_fields(line);
  if (fields.size() != kColumnCount) {
    throw_error(ErrorCode::kIo, "csv",
                "expected " + format_int(kColumnCount) + " fields, got " +
                    format_int(static_cast<std::int64_t>(fields.size())));
  }
  OutputRecord record;
  record.policy = std::string(fields[0]);
  record.lambda = parse_double(fields[1]);
  record.alpha = parse_double(fields[2]);
  record.mu = parse_double(fields[3]);
  record.tau = parse_int(fields[4]);
  record.n = parse_int(fields[5]);
  record.slots = parse_int(fields[6]);
  record.seed = parse_uint(fields[7]);
  record.leakage_rate_nats = parse_double(fields[8]);
  record.leakage_rate_bits = parse_double(fields[9]);
  record.age_slots = parse_double(fields[10]);
  record.age_stderr = parse_double(fields[11]);
  record.source = std::string(fields[12]);
  record.note = std::string(fields[13]);
  return record;
}

}  // namespace ageleak
