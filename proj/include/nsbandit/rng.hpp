// Copyright 2026 The nsbandit Authors.
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

#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace nsbandit {

// 64-bit FNV-1a, used to hash stream purpose tags.
constexpr uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// SplitMix64 finalizer (stateless avalanche step).
constexpr uint64_t mix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic random stream: xoshiro256** state filled by a SplitMix64
// sequence from a 64-bit key. Streams are identified by their key alone,
// so any stream can spawn order-independent substreams; replications and
// purposes never share draws.
//
// The generator choice is part of the reproducibility contract: traces and
// CSV outputs are bit-stable for a given (seed, replication, tag) within
// one build of the library.
class RngStream {
 public:
  RngStream() : RngStream(uint64_t{0}) {}

  explicit RngStream(uint64_t key) : key_(key) {
    uint64_t x = key;
    for (auto& w : state_) w = mix64(x++);
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  }

  RngStream(uint64_t seed, uint64_t replication, std::string_view tag)
      : RngStream(mix64(mix64(mix64(seed) ^ replication) ^ fnv1a64(tag))) {}

  uint64_t key() const { return key_; }

  // Child stream derived from this stream's identity; independent of any
  // draws already made.
  RngStream substream(uint64_t index) const {
    return RngStream(mix64(key_ ^ mix64(index ^ 0x5851f42d4c957f2dULL)));
  }

  uint64_t next_u64() {
    const uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform double in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_double() < p; }

 private:
  static constexpr uint64_t rotl(uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  uint64_t key_;
  std::array<uint64_t, 4> state_;
};

// Stream for (seed, replication, purpose tag). Identical arguments yield
// identical draw sequences; distinct replications or tags yield unrelated
// streams.
inline RngStream derive_stream(uint64_t seed, uint64_t replication, std::string_view tag) {
  return RngStream(seed, replication, tag);
}

}  // namespace nsbandit
