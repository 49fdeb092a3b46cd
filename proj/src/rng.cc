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

#include "ageleak/rng.h"

namespace ageleak {

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) {
  // 32-bit words because seed_seq consumes 32-bit entropy; splitting both
  // ids keeps distinct (seed, stream) pairs at full distance.
  std::seed_seq seq{
      static_cast<std::uint32_t>(seed & 0xffffffffu),
      static_cast<std::uint32_t>(seed >> 32),
      static_cast<std::uint32_t>(stream & 0xffffffffu),
      static_cast<std::uint32_t>(stream >> 32),
  };
  engine_.seed(seq);
}

std::uint64_t RngStream::next_u64() {
  ++draws_;
  return engine_();
}

double RngStream::next_uniform() {
  // Top 53 bits scaled by 2^-53. std::uniform_real_distribution is not
  // pinned down by the standard; this mapping is, and it is portable.
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

}  // namespace ageleak
