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
 * Exact linear algebra over F_2 on packed bit vectors: spans, membership,
 * orthogonal complements and homogeneous systems.
 */
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gpk/bitvector.hpp"
#include "gpk/errors.hpp"

namespace gpk {

/**
 * A linear subspace of F_2^w held as a fully reduced row-echelon basis.
 *
 * The leading coordinate (pivot) of a row is its most significant set bit.
 * Rows are sorted by strictly decreasing pivot and every pivot column is zero
 * in all other rows, so two bases span the same subspace iff they compare
 * equal.
 */
class SubspaceBasis {
  public:
    explicit SubspaceBasis(int width) : width_(width) {
        detail::require(width >= 1 && width <= BitVector::kMaxWidth,
                        "SubspaceBasis width must lie in [1, 24]");
    }

    /// Span of an arbitrary list of same-width vectors.
    static SubspaceBasis span_of(int width, std::span<const BitVector> vectors) {
        SubspaceBasis basis(width);
        for (const auto &v : vectors) {
            basis.insert(v);
        }
        return basis;
    }

    static SubspaceBasis full(int width) {
        SubspaceBasis basis(width);
        for (int i = 0; i < width; ++i) {
            basis.insert(BitVector::unit(width, i));
        }
        return basis;
    }

    [[nodiscard]] int width() const noexcept { return width_; }
    [[nodiscard]] int dimension() const noexcept { return static_cast<int>(rows_.size()); }
    [[nodiscard]] bool is_full() const noexcept { return dimension() == width_; }

    [[nodiscard]] std::vector<BitVector> rows() const {
        std::vector<BitVector> out;
        out.reserve(rows_.size());
        for (auto r : rows_) {
            out.emplace_back(width_, r);
        }
        return out;
    }

    [[nodiscard]] std::span<const std::uint32_t> packed_rows() const noexcept { return rows_; }

    /// Mask of the pivot columns.
    [[nodiscard]] std::uint32_t pivot_mask() const noexcept {
        std::uint32_t mask = 0;
        for (auto r : rows_) {
            mask |= leading_bit(r);
        }
        return mask;
    }

    /// Clears every pivot coordinate of v by adding basis rows. The result is
    /// a canonical representative of the coset v + span.
    [[nodiscard]] std::uint32_t reduce(std::uint32_t v) const noexcept {
        for (auto r : rows_) {
            if ((v & leading_bit(r)) != 0u) {
                v ^= r;
            }
        }
        return v;
    }

    [[nodiscard]] BitVector reduce(const BitVector &v) const {
        check_width(v);
        return {width_, reduce(v.bits())};
    }

    [[nodiscard]] bool contains(const BitVector &v) const {
        check_width(v);
        return reduce(v.bits()) == 0u;
    }

    [[nodiscard]] bool contains_packed(std::uint32_t v) const noexcept { return reduce(v) == 0u; }

    /// Adds v to the span. Returns false (and leaves the basis unchanged) when
    /// v already lies in it.
    bool insert(const BitVector &v) {
        check_width(v);
        std::uint32_t residue = reduce(v.bits());
        if (residue == 0u) {
            return false;
        }
        const std::uint32_t pivot = leading_bit(residue);
        for (auto &r : rows_) {
            if ((r & pivot) != 0u) {
                r ^= residue;
            }
        }
        auto pos = std::find_if(rows_.begin(), rows_.end(),
                                [&](std::uint32_t r) { return leading_bit(r) < pivot; });
        rows_.insert(pos, residue);
        return true;
    }

    friend bool operator==(const SubspaceBasis &, const SubspaceBasis &) = default;

  private:
    static std::uint32_t leading_bit(std::uint32_t v) noexcept { return std::bit_floor(v); }

    void check_width(const BitVector &v) const {
        detail::require(v.width() == width_, "vector width does not match the subspace width");
    }

    int width_;
    std::vector<std::uint32_t> rows_;
};

struct ExtendResult {
    bool added;
    SubspaceBasis basis;
};

/// Functional form of SubspaceBasis::insert.
[[nodiscard]] inline ExtendResult extend_basis(SubspaceBasis basis, const BitVector &v) {
    bool added = basis.insert(v);
    return {added, std::move(basis)};
}

/**
 * Smallest nonzero vector (by integer value) outside the span, or nullopt when
 * the span is the whole space.
 *
 * All pivots of a reduced basis are leading bits, so every vector below 2^j
 * lies in the span when columns 0..j-1 are all pivots, while e_j itself lies
 * outside when column j is not. The answer is therefore e_j for the lowest
 * non-pivot column j.
 */
[[nodiscard]] inline std::optional<BitVector> first_outside(const SubspaceBasis &basis) {
    const std::uint32_t free_columns = ~basis.pivot_mask() & ((1u << basis.width()) - 1u);
    if (free_columns == 0u) {
        return std::nullopt;
    }
    return BitVector(basis.width(), free_columns & (~free_columns + 1u));
}

/// Basis of { z : dot(z, r) = 0 for every r in the span }.
[[nodiscard]] inline SubspaceBasis orthogonal_complement(const SubspaceBasis &basis) {
    const int width = basis.width();
    const std::uint32_t pivots = basis.pivot_mask();
    SubspaceBasis result(width);
    for (int column = 0; column < width; ++column) {
        const std::uint32_t bit = 1u << column;
        if ((pivots & bit) != 0u) {
            continue;
        }
        // Free column: set it, then set the pivot of every row touching it.
        std::uint32_t z = bit;
        for (auto r : basis.packed_rows()) {
            if ((r & bit) != 0u) {
                z |= std::bit_floor(r);
            }
        }
        result.insert(BitVector(width, z));
    }
    return result;
}

/// Solution space of the homogeneous system { s . x = 0 : s in constraints }.
[[nodiscard]] inline SubspaceBasis solve_homogeneous(std::span<const BitVector> constraints,
                                                     int width) {
    for (const auto &c : constraints) {
        detail::require(c.width() == width, "constraint width does not match the system width");
    }
    return orthogonal_complement(SubspaceBasis::span_of(width, constraints));
}

inline constexpr int kMaxEnumerationDimension = 20;

/// Every element of the span, sorted by increasing integer value.
[[nodiscard]] inline std::vector<BitVector> enumerate_subspace(const SubspaceBasis &basis) {
    if (basis.dimension() > kMaxEnumerationDimension) {
        throw ResourceError("refusing to enumerate a subspace of dimension " +
                            std::to_string(basis.dimension()));
    }
    std::vector<std::uint32_t> elements{0u};
    elements.reserve(std::size_t{1} << basis.dimension());
    for (auto r : basis.packed_rows()) {
        const std::size_t count = elements.size();
        for (std::size_t i = 0; i < count; ++i) {
            elements.push_back(elements[i] ^ r);
        }
    }
    std::sort(elements.begin(), elements.end());
    std::vector<BitVector> out;
    out.reserve(elements.size());
    for (auto e : elements) {
        out.emplace_back(basis.width(), e);
    }
    return out;
}

/// Rank over F_2 of an arbitrary list of vectors.
[[nodiscard]] inline int rank(int width, std::span<const BitVector> vectors) {
    return SubspaceBasis::span_of(width, vectors).dimension();
}

} // namespace gpk
