// Copyright 2026 The ldp-rl Authors
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

#ifndef LDP_RL_RNG_HPP_
#define LDP_RL_RNG_HPP_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace ldp_rl {

// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

// Folds a tuple of 64-bit words into one seed by chaining splitmix64:
// h <- splitmix64(h ^ word) for each word, starting from a fixed constant.
// Used to give every (cell, seed, episode) its own independent stream.
std::uint64_t derive_seed(std::initializer_list<std::uint64_t> words);

// Deterministic random stream.
//
// Uniforms come from the top 53 bits of a mt19937_64 draw. Gaussians use
// the Marsaglia polar method and cache the second variate of each pair.
// Both algorithms are pinned here (rather than using the standard library
// distributions, whose algorithms are implementation-defined) so that a
// seed yields the same stream on every conforming toolchain, up to
// floating-point reproducibility of log/sqrt.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1).
  double uniform();
  // Uniform on the open interval (0, 1).
  double uniform_open();
  // Standard normal.
  double gaussian();

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace ldp_rl

#endif  // LDP_RL_RNG_HPP_
