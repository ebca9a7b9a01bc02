// Copyright 2026 The STA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Counter-based random streams for reproducible Monte Carlo runs.
//
// Generator: Philox4x32-10 (Salmon et al., SC'11), stream version 1.
//   key     = (seed low 32 bits, seed high 32 bits)
//   counter = (draw low, draw high, substream low, substream high)
// A draw yields four 32-bit words, combined into two 53-bit uniforms in
// (0, 1) and turned into a pair of standard normals by Box-Muller, so every
// Gaussian pair costs exactly one counter value and streams never drift out
// of alignment.

#ifndef STA_CORE_RANDOM_HPP_
#define STA_CORE_RANDOM_HPP_

#include <array>
#include <cstdint>
#include <utility>

namespace sta {

inline constexpr int kRandomStreamVersion = 1;

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter Philox4x32(PhiloxCounter counter, PhiloxKey key);

class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t substream)
      : seed_(seed), substream_(substream) {}

  // Pair of independent uniforms in the open interval (0, 1).
  std::pair<double, double> NextUniformPair();
  std::pair<double, double> NextNormalPair();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t substream() const { return substream_; }
  std::uint64_t position() const { return draw_; }

 private:
  std::uint64_t seed_;
  std::uint64_t substream_;
  std::uint64_t draw_ = 0;
};

}  // namespace sta

#endif  // STA_CORE_RANDOM_HPP_
