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

#include "ageleak/bitseq.h"

#include <numeric>

#include "ageleak/error.h"

namespace ageleak {

BitSeq::BitSeq(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  if (bits_.empty()) {
    throw_error(ErrorCode::kOutOfRange, "bits", "length must be >= 1");
  }
  for (std::uint8_t b : bits_) {
    if (b > 1) {
      throw_error(ErrorCode::kOutOfRange, "bits", "entries must be 0 or 1");
    }
  }
}

BitSeq::BitSeq(std::initializer_list<int> bits) {
  bits_.reserve(bits.size());
  for (int b : bits) {
    if (b != 0 && b != 1) {
      throw_error(ErrorCode::kOutOfRange, "bits", "entries must be 0 or 1");
    }
    bits_.push_back(static_cast<std::uint8_t>(b));
  }
  if (bits_.empty()) {
    throw_error(ErrorCode::kOutOfRange, "bits", "length must be >= 1");
  }
}

BitSeq BitSeq::from_index(int n, std::uint64_t index) {
  if (n < 1 || n > 62) {
    throw_error(ErrorCode::kOutOfRange, "n", "must be in [1, 62]");
  }
  if (index >> n) {
    throw_error(ErrorCode::kOutOfRange, "index", "must be < 2^n");
  }
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    bits[static_cast<std::size_t>(i)] =
        static_cast<std::uint8_t>((index >> (n - 1 - i)) & 1u);
  }
  return BitSeq(std::move(bits));
}

std::uint64_t BitSeq::to_index() const {
  std::uint64_t index = 0;
  for (std::uint8_t b : bits_) {
    index = (index << 1) | b;
  }
  return index;
}

int BitSeq::ones_count() const {
  return std::accumulate(bits_.begin(), bits_.end(), 0);
}

std::string BitSeq::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (i > 0) out += ",";
    out += bits_[i] ? '1' : '0';
  }
  out += ")";
  return out;
}

BitSeq generate_arrivals(int n, double lambda, RngStream& stream) {
  if (n < 1) {
    throw_error(ErrorCode::kOutOfRange, "n", "must be >= 1");
  }
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw_error(ErrorCode::kOutOfRange, "lambda", "must be in (0, 1]");
  }
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(n));
  for (auto& b : bits) {
    b = stream.next_uniform() < lambda ? 1 : 0;
  }
  return BitSeq(std::move(bits));
}

}  // namespace ageleak
