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
 * Generalised Simon problem: f is constant exactly on the cosets of a hidden
 * subspace S of {0,1}^n. Every GPK outcome lies in the orthogonal complement
 * of S, so collecting outcomes until their span stops growing and taking the
 * complement recovers S.
 *
 * Markers live in {0,1}^m, the width of the oracle's output register.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "gpk/bitvector.hpp"
#include "gpk/boolfn.hpp"
#include "gpk/errors.hpp"
#include "gpk/gf2.hpp"
#include "gpk/gpk.hpp"
#include "gpk/oracle.hpp"
#include "gpk/rng.hpp"

namespace gpk {

struct FixedMarker {
    BitVector y;
};

/// Marker drawn uniformly from {0,1}^m \ {0} on every run.
struct UniformNonzeroMarker {};

using MarkerMode = std::variant<FixedMarker, UniformNonzeroMarker>;

[[nodiscard]] inline std::string describe(const MarkerMode &mode) {
    if (const auto *fixed = std::get_if<FixedMarker>(&mode)) {
        return "fixed(" + fixed->y.to_string() + ")";
    }
    return "uniform_nonzero";
}

/// Which markers a theoretical distribution averages over.
enum class MarkerAverage { all_markers, nonzero_markers };

/// Separate streams so the number of marker draws never perturbs measurements.
struct SimonStreams {
    Rng markers;
    Rng measurements;

    static SimonStreams from_seed(std::uint64_t seed) {
        return {make_rng(seed, Stream::markers), make_rng(seed, Stream::measurements)};
    }
};

[[nodiscard]] inline BitVector draw_marker(const MarkerMode &mode, int m, Rng &markers) {
    if (const auto *fixed = std::get_if<FixedMarker>(&mode)) {
        detail::require(fixed->y.width() == m, "fixed marker must have width m");
        detail::require(!fixed->y.is_zero(), "the zero marker always yields 0 and is rejected");
        return fixed->y;
    }
    detail::require(m >= 1, "uniform nonzero markers need m >= 1");
    std::uniform_int_distribution<std::uint32_t> dist(1u, (1u << m) - 1u);
    return {m, dist(markers)};
}

/// One GPK run with a marker drawn per `mode`, measured once.
[[nodiscard]] inline BitVector simon_sample(GpkEngine &engine, const BooleanOracle &oracle,
                                            const MarkerMode &mode, SimonStreams &streams,
                                            Backend backend = Backend::fwht) {
    const auto y = draw_marker(mode, oracle.output_width(), streams.markers);
    return gpk_measure(engine.run(oracle, y, backend), streams.measurements);
}

/**
 * Exact outcome distribution of a GPK run with a uniformly random marker on
 * a Simon oracle hiding S (dim k, K = 2^k, N = 2^n, M = 2^m):
 *
 *  - all markers:      K/N on S-perp, 0 elsewhere;
 *  - nonzero markers:  (MK/N - 1)/(M - 1) at z = 0, MK/(N(M - 1)) on
 *                      S-perp \ {0}, 0 elsewhere.
 *
 * With m = n the nonzero case is (K-1)/(N-1) at 0 and K/(N-1) elsewhere on
 * S-perp. Dense vector indexed by z.
 */
[[nodiscard]] inline std::vector<Rational> theoretical_distribution(const SubspaceBasis &hidden,
                                                                    int n, int m,
                                                                    MarkerAverage average) {
    detail::require(hidden.width() == n, "hidden subspace must have width n");
    detail::require(m >= 1 && m <= 30 && n <= 20, "distribution size out of range");
    const int k = hidden.dimension();
    detail::require(n - k <= m, "no Simon oracle exists with n - k > m");
    const auto perp = orthogonal_complement(hidden);
    const std::int64_t K = std::int64_t{1} << k;
    const std::int64_t N = std::int64_t{1} << n;
    const std::int64_t M = std::int64_t{1} << m;

    std::vector<Rational> dist(static_cast<std::size_t>(N), Rational(0));
    for (std::uint32_t z = 0; z < static_cast<std::uint32_t>(N); ++z) {
        if (!perp.contains_packed(z)) {
            continue;
        }
        if (average == MarkerAverage::all_markers) {
            dist[z] = Rational(K, N);
        } else if (z == 0) {
            dist[z] = (Rational(M * K, N) - 1) / (M - 1);
        } else {
            dist[z] = Rational(M * K, N * (M - 1));
        }
    }
    return dist;
}

/// Exact marker-averaged outcome distribution from the Walsh spectra of the
/// oracle itself: (1/#markers) sum_y W_f(z, y)^2 / N^2.
[[nodiscard]] inline std::vector<Rational> exact_marker_average(const BooleanOracle &oracle,
                                                                MarkerAverage average) {
    const int n = oracle.input_width();
    const int m = oracle.output_width();
    if (2 * n + m > 60) {
        throw ResourceError("exact marker average needs 2n + m <= 60");
    }
    const std::uint32_t first = average == MarkerAverage::all_markers ? 0u : 1u;
    const std::uint32_t markers = 1u << m;
    std::vector<std::int64_t> sums(std::size_t{1} << n, 0);
    for (std::uint32_t y = first; y < markers; ++y) {
        const auto spectrum = walsh_spectrum(oracle, BitVector(m, y));
        for (std::size_t z = 0; z < sums.size(); ++z) {
            sums[z] += spectrum[z] * spectrum[z];
        }
    }
    const std::int64_t N = std::int64_t{1} << n;
    const std::int64_t denominator = N * N * static_cast<std::int64_t>(markers - first);
    std::vector<Rational> out;
    out.reserve(sums.size());
    for (auto s : sums) {
        out.emplace_back(s, denominator);
    }
    return out;
}

/// f is constant on every coset of S and takes distinct values on distinct
/// cosets. Exhaustive over the truth table.
[[nodiscard]] inline bool verify_hidden_subgroup(const BooleanOracle &oracle,
                                                 const SubspaceBasis &hidden) {
    if (hidden.width() != oracle.input_width()) {
        return false;
    }
    std::unordered_map<std::uint32_t, std::uint32_t> value_of_coset;
    std::unordered_map<std::uint32_t, std::uint32_t> coset_of_value;
    const auto &table = oracle.table();
    for (std::uint32_t x = 0; x < table.size(); ++x) {
        const auto rep = hidden.reduce(x);
        auto [it, fresh] = value_of_coset.try_emplace(rep, table[x]);
        if (!fresh && it->second != table[x]) {
            return false;
        }
        auto [jt, new_value] = coset_of_value.try_emplace(table[x], rep);
        if (!new_value && jt->second != rep) {
            return false;
        }
    }
    return true;
}

struct SimonRun {
    std::vector<BitVector> samples;
    SubspaceBasis collected;
    std::uint64_t iterations = 0;
    SubspaceBasis recovered;
    bool verified = false;
};

inline constexpr int kDefaultStallLimit = 20;

/**
 * Samples until `stall_limit` consecutive outcomes fail to enlarge the span
 * of the outcomes seen so far, then returns its orthogonal complement.
 *
 * While the span is a proper subspace of S-perp a fresh nonzero-marker sample
 * stays inside it with probability below 1/2, so a run stops early with
 * probability below 2^-stall_limit per stall.
 */
[[nodiscard]] inline SimonRun recover_hidden_subgroup(const BooleanOracle &oracle,
                                                      SimonStreams &streams,
                                                      int stall_limit = kDefaultStallLimit,
                                                      const MarkerMode &mode = UniformNonzeroMarker{},
                                                      Backend backend = Backend::fwht) {
    detail::require(stall_limit >= 1, "stall limit must be at least 1");
    const int n = oracle.input_width();
    GpkEngine engine;
    SimonRun run{{}, SubspaceBasis(n), 0, SubspaceBasis(n), false};
    int stalled = 0;
    // A full span cannot grow, so there is nothing left to wait for.
    while (stalled < stall_limit && !run.collected.is_full()) {
        const auto z = simon_sample(engine, oracle, mode, streams, backend);
        run.samples.push_back(z);
        stalled = run.collected.insert(z) ? 0 : stalled + 1;
    }
    run.iterations = engine.calls();
    run.recovered = orthogonal_complement(run.collected);
    run.verified = verify_hidden_subgroup(oracle, run.recovered);
    return run;
}

struct OutcomeRow {
    BitVector z;
    double theoretical;
    double empirical;
};

struct EmpiricalComparison {
    double tv_distance = 0.0;
    std::vector<OutcomeRow> rows; ///< outcomes with nonzero theoretical or empirical mass
};

/**
 * Total-variation distance between `draws` sampled outcomes and the exact
 * distribution for the mode: the nonzero-marker formula for uniform markers,
 * the squared amplitudes of that one marker for a fixed one.
 */
[[nodiscard]] inline EmpiricalComparison
empirical_vs_theoretical(const BooleanOracle &oracle, const SubspaceBasis &hidden,
                         const MarkerMode &mode, std::uint64_t draws, SimonStreams &streams) {
    detail::require(draws >= 1000, "need at least 1000 draws");
    const int n = oracle.input_width();
    const int m = oracle.output_width();
    std::vector<double> theory(std::size_t{1} << n, 0.0);
    if (const auto *fixed = std::get_if<FixedMarker>(&mode)) {
        detail::require(!fixed->y.is_zero(), "the zero marker always yields 0 and is rejected");
        const auto spectrum = walsh_spectrum(oracle, fixed->y);
        const double N = static_cast<double>(theory.size());
        for (std::size_t z = 0; z < theory.size(); ++z) {
            const double a = static_cast<double>(spectrum[z]) / N;
            theory[z] = a * a;
        }
    } else {
        const auto exact = theoretical_distribution(hidden, n, m, MarkerAverage::nonzero_markers);
        for (std::size_t z = 0; z < theory.size(); ++z) {
            theory[z] = boost::rational_cast<double>(exact[z]);
        }
    }

    std::vector<std::uint64_t> counts(theory.size(), 0);
    GpkEngine engine;
    for (std::uint64_t i = 0; i < draws; ++i) {
        ++counts[simon_sample(engine, oracle, mode, streams).bits()];
    }

    EmpiricalComparison result;
    double total = 0.0;
    for (std::size_t z = 0; z < theory.size(); ++z) {
        const double empirical = static_cast<double>(counts[z]) / static_cast<double>(draws);
        total += std::abs(empirical - theory[z]);
        if (theory[z] > 0.0 || counts[z] > 0) {
            result.rows.push_back({BitVector(n, static_cast<std::uint32_t>(z)), theory[z], empirical});
        }
    }
    result.tv_distance = total / 2.0;
    return result;
}

} // namespace gpk
