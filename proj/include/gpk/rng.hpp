// Copyright 2026 The GPK Toolkit Authors
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

#include <cstdint>
#include <random>

namespace gpk {

using Rng = std::mt19937_64;

/// Independent streams derived from one user seed. Drawing more values from
/// one stream never shifts another.
enum class Stream : std::uint32_t {
    instance = 1,
    markers = 2,
    measurements = 3,
};

[[nodiscard]] inline Rng make_rng(std::uint64_t seed, Stream stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream)};
    return Rng(seq);
}

/// Uniform double in [0, 1) from the top 53 bits of one draw.
[[nodiscard]] inline double uniform_unit(Rng &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace gpk
