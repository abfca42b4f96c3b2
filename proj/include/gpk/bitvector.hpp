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
/**
 * @file
 * Fixed-width bit strings viewed as vectors of F_2^w.
 *
 * Coordinate i is bit i of the packed word. When written as a string the
 * most significant position comes first, so position 0 is the rightmost
 * character: "0010" has coordinate 1 set.
 */
#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "gpk/errors.hpp"

namespace gpk {

class BitVector {
  public:
    static constexpr int kMaxWidth = 24;

    BitVector(int width, std::uint32_t bits) : width_(width), bits_(bits) {
        detail::require(width >= 1 && width <= kMaxWidth,
                        "BitVector width must lie in [1, 24], got " + std::to_string(width));
        detail::require((bits >> width) == 0u, "BitVector has bits set beyond its width");
    }

    static BitVector zero(int width) { return {width, 0u}; }

    static BitVector unit(int width, int position) {
        detail::require(position >= 0 && position < width, "unit vector position out of range");
        return {width, 1u << position};
    }

    /// Parses a string of '0'/'1', most significant position first.
    static BitVector parse(std::string_view text) {
        if (text.empty() || text.size() > static_cast<std::size_t>(kMaxWidth)) {
            throw ParseError("binary string must have 1..24 characters: '" + std::string(text) +
                             "'");
        }
        std::uint32_t bits = 0;
        for (char c : text) {
            if (c != '0' && c != '1') {
                throw ParseError("not a binary string: '" + std::string(text) + "'");
            }
            bits = (bits << 1) | static_cast<std::uint32_t>(c == '1');
        }
        return {static_cast<int>(text.size()), bits};
    }

    [[nodiscard]] int width() const noexcept { return width_; }
    [[nodiscard]] std::uint32_t bits() const noexcept { return bits_; }
    [[nodiscard]] std::uint32_t size() const noexcept { return 1u << width_; }

    [[nodiscard]] bool operator[](int position) const noexcept {
        return ((bits_ >> position) & 1u) != 0u;
    }

    [[nodiscard]] bool is_zero() const noexcept { return bits_ == 0u; }

    [[nodiscard]] std::string to_string() const {
        std::string out(static_cast<std::size_t>(width_), '0');
        for (int i = 0; i < width_; ++i) {
            if ((*this)[i]) {
                out[static_cast<std::size_t>(width_ - 1 - i)] = '1';
            }
        }
        return out;
    }

    BitVector &operator^=(const BitVector &other) {
        detail::require(width_ == other.width_, "xor of BitVectors with different widths");
        bits_ ^= other.bits_;
        return *this;
    }

    friend BitVector operator^(BitVector lhs, const BitVector &rhs) { return lhs ^= rhs; }

    friend bool operator==(const BitVector &, const BitVector &) = default;

    /// Orders by width, then by integer value.
    friend auto operator<=>(const BitVector &, const BitVector &) = default;

  private:
    int width_;
    std::uint32_t bits_;
};

/// Inner product over F_2: parity of the coordinatewise AND.
[[nodiscard]] inline bool dot(const BitVector &u, const BitVector &v) {
    detail::require(u.width() == v.width(), "dot of BitVectors with different widths");
    return (std::popcount(u.bits() & v.bits()) & 1) != 0;
}

/// Raw-word inner product used in hot loops where widths are already validated.
[[nodiscard]] constexpr int parity_of_and(std::uint32_t a, std::uint32_t b) noexcept {
    return std::popcount(a & b) & 1;
}

} // namespace gpk
