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

#ifndef AGELEAK_BITSEQ_H_
#define AGELEAK_BITSEQ_H_

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "ageleak/rng.h"

namespace ageleak {

// A binary source or channel sequence over slots 1..n, stored 0-based:
// operator[](i) is the bit of slot i+1. Length is at least 1 except for the
// default-constructed placeholder.
class BitSeq {
 public:
  BitSeq() = default;
  explicit BitSeq(std::vector<std::uint8_t> bits);
  BitSeq(std::initializer_list<int> bits);

  // Enumeration bijection used everywhere bit sequences are ranked:
  // ascending index is lexicographic order on the sequence, slot 1 being the
  // most significant position. index must be < 2^n, n in [1, 62].
  static BitSeq from_index(int n, std::uint64_t index);
  std::uint64_t to_index() const;

  int size() const { return static_cast<int>(bits_.size()); }
  std::uint8_t operator[](int i) const { return bits_[i]; }
  int ones_count() const;
  const std::vector<std::uint8_t>& bits() const { return bits_; }
  // "(1,0,1)" form used in diagnostics and CSV notes.
  std::string to_string() const;

  bool operator==(const BitSeq&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

// Bernoulli(lambda) source sequence of length n >= 1 drawn from `stream`,
// one uniform per slot in slot order. lambda in (0,1].
BitSeq generate_arrivals(int n, double lambda, RngStream& stream);

}  // namespace ageleak

#endif  // AGELEAK_BITSEQ_H_
