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
 * Classical brute-force analysis of truth-table oracles: marker classes,
 * constant and balancing sets, and the structure of the image.
 *
 * Everything here reads the table directly and never touches the query
 * counter. These routines are the ground truth the quantum-side results are
 * checked against, so none of them go through the Walsh-Hadamard code.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "gpk/bitvector.hpp"
#include "gpk/errors.hpp"
#include "gpk/gf2.hpp"
#include "gpk/oracle.hpp"

namespace gpk {

using Rational = boost::rational<std::int64_t>;

enum class MarkerClass { constant, balanced, neither };

[[nodiscard]] inline const char *to_string(MarkerClass c) noexcept {
    switch (c) {
    case MarkerClass::constant:
        return "constant";
    case MarkerClass::balanced:
        return "balanced";
    case MarkerClass::neither:
        return "neither";
    }
    return "?";
}

/// Sum over all inputs of (-1)^(f(x).y).
[[nodiscard]] inline std::int64_t correlation_sum(const BooleanOracle &oracle, const BitVector &y) {
    detail::require(y.width() == oracle.output_width(), "marker width must equal m");
    std::int64_t ones = 0;
    for (auto v : oracle.table()) {
        ones += parity_of_and(v, y.bits());
    }
    return static_cast<std::int64_t>(oracle.domain_size()) - 2 * ones;
}

[[nodiscard]] inline MarkerClass classify_sum(std::int64_t sum, std::uint32_t domain_size) noexcept {
    if (sum == 0) {
        return MarkerClass::balanced;
    }
    if (std::llabs(sum) == static_cast<std::int64_t>(domain_size)) {
        return MarkerClass::constant;
    }
    return MarkerClass::neither;
}

[[nodiscard]] inline MarkerClass classify_marker(const BooleanOracle &oracle, const BitVector &y) {
    return classify_sum(correlation_sum(oracle, y), oracle.domain_size());
}

struct ImageAnalysis {
    std::vector<BitVector> points; ///< distinct outputs, increasing integer value
    std::vector<std::uint64_t> multiplicities;
    bool is_affine = false;
    bool uniform = false;
    SubspaceBasis direction_basis; ///< span of { p + points[0] }

    [[nodiscard]] int dimension() const noexcept { return direction_basis.dimension(); }
};

[[nodiscard]] inline ImageAnalysis image_analysis(const BooleanOracle &oracle) {
    const int m = oracle.output_width();
    std::map<std::uint32_t, std::uint64_t> histogram;
    for (auto v : oracle.table()) {
        ++histogram[v];
    }
    ImageAnalysis result{{}, {}, false, false, SubspaceBasis(m)};
    for (const auto &[point, count] : histogram) {
        result.points.emplace_back(m, point);
        result.multiplicities.push_back(count);
    }
    const BitVector origin = result.points.front();
    for (const auto &p : result.points) {
        result.direction_basis.insert(p ^ origin);
    }
    // The translated set is closed under xor iff it is its own span, and it
    // always sits inside its span, so comparing sizes suffices.
    const int dim = result.direction_basis.dimension();
    result.is_affine = dim < 63 && result.points.size() == (std::size_t{1} << dim);
    result.uniform = std::all_of(result.multiplicities.begin(), result.multiplicities.end(),
                                 [&](auto c) { return c == result.multiplicities.front(); });
    return result;
}

/// Classification of every marker in {0,1}^m.
struct MarkerCensus {
    SubspaceBasis constant_set;
    std::uint64_t constant_count = 0;
    std::vector<BitVector> balancing_set;
    std::optional<BitVector> neither_witness; ///< smallest marker of class neither

    [[nodiscard]] bool fully_balanced() const noexcept { return !neither_witness.has_value(); }

    /// #B(f) / #C(f), exact. Only an integer in the fully balanced case.
    [[nodiscard]] Rational balancing_index() const {
        return {static_cast<std::int64_t>(balancing_set.size()),
                static_cast<std::int64_t>(constant_count)};
    }
};

inline constexpr int kMaxCensusWidth = 20;

[[nodiscard]] inline MarkerCensus marker_census(const BooleanOracle &oracle) {
    const int m = oracle.output_width();
    if (m > kMaxCensusWidth) {
        throw ResourceError("marker census needs m <= 20, got m = " + std::to_string(m));
    }
    // Sum over distinct image points weighted by multiplicity; identical to
    // correlation_sum but linear in |img(f)| instead of 2^n per marker.
    std::map<std::uint32_t, std::int64_t> histogram;
    for (auto v : oracle.table()) {
        ++histogram[v];
    }
    MarkerCensus census{SubspaceBasis(m), 0, {}, std::nullopt};
    const std::uint32_t markers = 1u << m;
    for (std::uint32_t y = 0; y < markers; ++y) {
        std::int64_t sum = 0;
        for (const auto &[point, count] : histogram) {
            sum += parity_of_and(point, y) != 0 ? -count : count;
        }
        switch (classify_sum(sum, oracle.domain_size())) {
        case MarkerClass::constant:
            census.constant_set.insert(BitVector(m, y));
            ++census.constant_count;
            break;
        case MarkerClass::balanced:
            census.balancing_set.emplace_back(m, y);
            break;
        case MarkerClass::neither:
            if (!census.neither_witness) {
                census.neither_witness = BitVector(m, y);
            }
            break;
        }
    }
    return census;
}

[[nodiscard]] inline SubspaceBasis constant_set(const BooleanOracle &oracle) {
    return marker_census(oracle).constant_set;
}

[[nodiscard]] inline std::vector<BitVector> balancing_set(const BooleanOracle &oracle) {
    return marker_census(oracle).balancing_set;
}

[[nodiscard]] inline Rational balancing_index(const BooleanOracle &oracle) {
    return marker_census(oracle).balancing_index();
}

[[nodiscard]] inline bool is_fully_balanced(const BooleanOracle &oracle) {
    return marker_census(oracle).fully_balanced();
}

/// The translate x -> f(x) + shift.
[[nodiscard]] inline BooleanOracle translate(const BooleanOracle &oracle, const BitVector &shift) {
    detail::require(shift.width() == oracle.output_width(), "shift width must equal m");
    std::vector<std::uint32_t> table = oracle.table();
    for (auto &v : table) {
        v ^= shift.bits();
    }
    return {oracle.input_width(), oracle.output_width(), std::move(table)};
}

} // namespace gpk
