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

#ifndef AGELEAK_RNG_H_
#define AGELEAK_RNG_H_

#include <cstdint>
#include <random>

namespace ageleak {

// Named substreams of one simulation seed. Separate streams keep the three
// coin sources decoupled, so changing a policy parameter never reshuffles the
// arrival pattern (common random numbers across a sweep).
enum class Stream : std::uint64_t {
  kArrivals = 0,
  kAdmissions = 1,
  kServices = 2,
};

// Deterministic (seed, stream) -> bit stream. The engine is seeded through
// std::seed_seq over the 32-bit words of both ids, and uniforms take the top
// 53 bits of each draw, so the sequence is identical across platforms; that
// bit-for-bit reproducibility is a library contract, not an accident.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);
  RngStream(std::uint64_t seed, Stream stream)
      : RngStream(seed, static_cast<std::uint64_t>(stream)) {}

  std::uint64_t next_u64();
  // Uniform on [0, 1) with exactly 53 random bits; never returns 1.0.
  double next_uniform();
  // Number of engine draws consumed so far (uniforms and u64s each count 1).
  std::uint64_t draws() const noexcept { return draws_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t draws_ = 0;
};

}  // namespace ageleak

#endif  // AGELEAK_RNG_H_
