// Copyright 2026 The cqrac Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

namespace cqrac {

/// Engine used for every stochastic component. All randomized entry points
/// take an explicit engine (or a seed they expand themselves) so that reruns
/// with the same seed are bit-identical.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer. Used to spread low-entropy seeds and to derive
/// independent per-item streams from (base seed, item index) without any
/// dependence on thread scheduling.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed for the `stream`-th independent substream of `base`. Mixing the
/// stream index through splitmix64 first keeps adjacent indices uncorrelated.
inline uint64_t derive_seed(uint64_t base, uint64_t stream) {
    return splitmix64(base ^ splitmix64(stream));
}

inline Rng make_rng(uint64_t seed) { return Rng(splitmix64(seed)); }

/// Fair coin as +1 / -1, consuming exactly one engine draw.
inline int coin_pm1(Rng &rng) { return (rng() & 1u) ? -1 : +1; }

}  // namespace cqrac
