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
 * Seeded instance generators. All randomness comes from the Rng passed in;
 * the seed overloads draw from the Stream::instance stream of that seed.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <unordered_map>
#include <vector>

#include "gpk/bitvector.hpp"
#include "gpk/errors.hpp"
#include "gpk/gf2.hpp"
#include "gpk/oracle.hpp"
#include "gpk/rng.hpp"

namespace gpk {

[[nodiscard]] inline BitVector random_vector(int width, Rng &rng) {
    std::uniform_int_distribution<std::uint32_t> dist(0u, (1u << width) - 1u);
    return {width, dist(rng)};
}

/// Uniformly random subspace of the given dimension: a uniformly random
/// sequence of independent vectors spans a uniformly random subspace.
[[nodiscard]] inline SubspaceBasis random_subspace(int width, int dimension, Rng &rng) {
    detail::require(dimension >= 0 && dimension <= width, "subspace dimension out of range");
    SubspaceBasis basis(width);
    while (basis.dimension() < dimension) {
        basis.insert(random_vector(width, rng));
    }
    return basis;
}

[[nodiscard]] inline BooleanOracle gen_constant(int n, const BitVector &value) {
    return {n, value.width(), std::vector<std::uint32_t>(std::size_t{1} << n, value.bits())};
}

/**
 * x -> A x + b. Row i of the matrix gives output coordinate i (position 0 is
 * the rightmost output character), so the matrix has m rows of width n.
 */
[[nodiscard]] inline BooleanOracle gen_affine(std::span<const BitVector> matrix,
                                              const BitVector &offset) {
    const int m = offset.width();
    detail::require(static_cast<int>(matrix.size()) == m, "affine matrix needs exactly m rows");
    detail::require(!matrix.empty(), "affine matrix needs at least one row");
    const int n = matrix.front().width();
    for (const auto &row : matrix) {
        detail::require(row.width() == n, "affine matrix rows must share one width");
    }
    std::vector<std::uint32_t> table(std::size_t{1} << n);
    for (std::uint32_t x = 0; x < table.size(); ++x) {
        std::uint32_t y = offset.bits();
        for (int i = 0; i < m; ++i) {
            y ^= static_cast<std::uint32_t>(parity_of_and(matrix[i].bits(), x)) << i;
        }
        table[x] = y;
    }
    return {n, m, std::move(table)};
}

/// Random m x n matrix (as m rows of width n) of exact rank r.
[[nodiscard]] inline std::vector<BitVector> random_matrix_of_rank(int n, int m, int r, Rng &rng) {
    detail::require(r >= 0 && r <= std::min(n, m), "matrix rank must lie in [0, min(n, m)]");
    // Row space: r independent vectors of width n. Coefficients: m rows of
    // width r spanning F_2^r. Their product has rank exactly r.
    const auto row_space = random_subspace(n, r, rng).rows();
    std::vector<std::uint32_t> coefficients(static_cast<std::size_t>(m), 0u);
    if (r > 0) {
        while (true) {
            SubspaceBasis check(r);
            for (auto &c : coefficients) {
                c = random_vector(r, rng).bits();
                check.insert(BitVector(r, c));
            }
            if (check.is_full()) {
                break;
            }
        }
    }
    std::vector<BitVector> matrix;
    matrix.reserve(static_cast<std::size_t>(m));
    for (auto c : coefficients) {
        std::uint32_t row = 0;
        for (int j = 0; j < r; ++j) {
            if (((c >> j) & 1u) != 0u) {
                row ^= row_space[static_cast<std::size_t>(j)].bits();
            }
        }
        matrix.emplace_back(n, row);
    }
    return matrix;
}

/**
 * Fully balanced oracle with image a uniformly random affine subspace of
 * dimension r. Each image point receives exactly 2^(n-r) preimages, assigned
 * through a random permutation of the inputs.
 */
[[nodiscard]] inline BooleanOracle gen_fully_balanced(int n, int m, int r, Rng &rng) {
    detail::require(n >= 1 && m >= 1, "oracle widths must be positive");
    detail::require(r >= 0 && r <= std::min(n, m), "image dimension must lie in [0, min(n, m)]");
    const auto direction = random_subspace(m, r, rng);
    const auto offset = random_vector(m, rng);
    const auto points = enumerate_subspace(direction);

    std::vector<std::uint32_t> inputs(std::size_t{1} << n);
    std::iota(inputs.begin(), inputs.end(), 0u);
    std::shuffle(inputs.begin(), inputs.end(), rng);

    const std::size_t per_point = std::size_t{1} << (n - r);
    std::vector<std::uint32_t> table(inputs.size());
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        table[inputs[i]] = points[i / per_point].bits() ^ offset.bits();
    }
    return {n, m, std::move(table)};
}

[[nodiscard]] inline BooleanOracle gen_fully_balanced(int n, int m, int r, std::uint64_t seed) {
    Rng rng = make_rng(seed, Stream::instance);
    return gen_fully_balanced(n, m, r, rng);
}

struct SimonInstance {
    BooleanOracle oracle;
    SubspaceBasis hidden;
};

/**
 * Oracle hiding a random k-dimensional subspace S of {0,1}^n: constant on
 * each coset of S and injective across cosets.
 */
[[nodiscard]] inline SimonInstance gen_simon(int n, int m, int k, Rng &rng) {
    detail::require(n >= 1 && m >= 1, "oracle widths must be positive");
    detail::require(k >= 0 && k <= n, "hidden subgroup dimension must lie in [0, n]");
    detail::require(n - k <= m, "need 2^(n-k) distinct output values, so n - k <= m");
    auto hidden = random_subspace(n, k, rng);

    // Distinct random outputs, one per coset.
    const std::size_t cosets = std::size_t{1} << (n - k);
    std::vector<std::uint32_t> values;
    values.reserve(cosets);
    if (m <= 20) {
        std::vector<std::uint32_t> all(std::size_t{1} << m);
        std::iota(all.begin(), all.end(), 0u);
        std::shuffle(all.begin(), all.end(), rng);
        values.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(cosets));
    } else {
        std::unordered_map<std::uint32_t, bool> used;
        while (values.size() < cosets) {
            auto v = random_vector(m, rng).bits();
            if (used.emplace(v, true).second) {
                values.push_back(v);
            }
        }
    }

    std::unordered_map<std::uint32_t, std::uint32_t> coset_value;
    std::vector<std::uint32_t> table(std::size_t{1} << n);
    std::size_t next = 0;
    for (std::uint32_t x = 0; x < table.size(); ++x) {
        const auto rep = hidden.reduce(x);
        auto [it, fresh] = coset_value.try_emplace(rep, 0u);
        if (fresh) {
            it->second = values[next++];
        }
        table[x] = it->second;
    }
    return {BooleanOracle(n, m, std::move(table)), std::move(hidden)};
}

[[nodiscard]] inline SimonInstance gen_simon(int n, int m, int k, std::uint64_t seed) {
    Rng rng = make_rng(seed, Stream::instance);
    return gen_simon(n, m, k, rng);
}

} // namespace gpk
