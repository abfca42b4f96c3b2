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
 * Marker selection algorithms for the fully balanced image (FBI) problem:
 * find r = dim img(f) of a fully balanced oracle with certainty using GPK
 * runs only, then rebuild img(f) with a single classical query.
 *
 * A GPK(y) outcome of 0 means y makes f constant; any other outcome means y
 * balances f. Markers are always the smallest vector outside the span of
 * everything collected so far, which makes every trace reproducible.
 */
#pragma once

#include <cstdint>
#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gpk/bitvector.hpp"
#include "gpk/errors.hpp"
#include "gpk/gf2.hpp"
#include "gpk/gpk.hpp"
#include "gpk/oracle.hpp"
#include "gpk/rng.hpp"

namespace gpk {

struct TraceEntry {
    std::uint64_t call_index; ///< 1-based
    BitVector marker;
    BitVector outcome;

    [[nodiscard]] bool constant() const noexcept { return outcome.is_zero(); }

    /// `call_index marker outcome_z classification`
    [[nodiscard]] std::string to_line() const {
        return std::to_string(call_index) + " " + marker.to_string() + " " + outcome.to_string() +
               (constant() ? " constant" : " balanced");
    }
};

struct MarkerLedger {
    explicit MarkerLedger(int m) : constant_span(m), collected_span(m) {}

    std::vector<BitVector> constant_markers; ///< C, in insertion order
    SubspaceBasis constant_span;             ///< span(C)
    std::vector<BitVector> balancing;        ///< B, in insertion order
    SubspaceBasis collected_span;            ///< span(C u B)
    std::uint64_t gpk_calls = 0;
    std::vector<TraceEntry> trace;

    void add_constant(const BitVector &y) {
        constant_markers.push_back(y);
        constant_span.insert(y);
        collected_span.insert(y);
    }

    void add_balancing(const BitVector &y) {
        balancing.push_back(y);
        collected_span.insert(y);
    }

    [[nodiscard]] std::string trace_log() const {
        std::string out;
        for (const auto &e : trace) {
            out += e.to_line();
            out += '\n';
        }
        return out;
    }
};

struct ImageReconstruction {
    BitVector offset;         ///< f(0), from one classical query
    SubspaceBasis direction;  ///< solutions of { s . x = 0 : s in C }
    std::vector<BitVector> points;
};

struct FbiResult {
    int r = 0;
    MarkerLedger ledger;
    std::optional<ImageReconstruction> image;
};

struct FbiOptions {
    Backend backend = Backend::fwht;
    /// Abort with ResourceError once this many GPK calls have been spent.
    std::optional<std::uint64_t> max_calls;
};

namespace detail {

class MarkerSession {
  public:
    MarkerSession(const BooleanOracle &oracle, Rng &rng, const FbiOptions &options)
        : oracle_(oracle), rng_(rng), options_(options), ledger_(oracle.output_width()) {}

    /// One GPK(y) run followed by a measurement; true iff the outcome is 0.
    bool probe_constant(const BitVector &y) {
        if (options_.max_calls && engine_.calls() >= *options_.max_calls) {
            throw ResourceError("GPK call budget of " + std::to_string(*options_.max_calls) +
                                " exhausted");
        }
        const auto dist = engine_.run(oracle_, y, options_.backend);
        const auto outcome = gpk_measure(dist, rng_);
        ledger_.gpk_calls = engine_.calls();
        ledger_.trace.push_back({ledger_.gpk_calls, y, outcome});
        return outcome.is_zero();
    }

    [[nodiscard]] std::optional<BitVector> next_marker() const {
        return first_outside(ledger_.collected_span);
    }

    MarkerLedger &ledger() noexcept { return ledger_; }
    [[nodiscard]] int m() const noexcept { return oracle_.output_width(); }

    FbiResult finish(int r) { return {r, std::move(ledger_), std::nullopt}; }

  private:
    const BooleanOracle &oracle_;
    Rng &rng_;
    const FbiOptions &options_;
    GpkEngine engine_;
    MarkerLedger ledger_;
};

} // namespace detail

/**
 * Distinguishes r = 0 from r = r0 > 0. Since dim C(f) = m - r0 in the second
 * case, m - r0 + 1 independent constant markers prove r = 0, and any nonzero
 * outcome proves r = r0.
 */
[[nodiscard]] inline FbiResult run_algorithm1_early_stop(const BooleanOracle &oracle, int r0,
                                                         Rng &rng, const FbiOptions &options = {}) {
    const int m = oracle.output_width();
    detail::require(r0 >= 1 && r0 <= m, "r0 must lie in [1, m]");
    detail::MarkerSession session(oracle, rng, options);
    const int needed = m - r0 + 1;
    for (int i = 0; i < needed; ++i) {
        const auto y = session.next_marker();
        if (!y) {
            break;
        }
        if (!session.probe_constant(*y)) {
            return session.finish(r0);
        }
        session.ledger().add_constant(*y);
    }
    return session.finish(0);
}

/// Constant (r = 0) versus balanced (r = 1), at most m GPK calls.
[[nodiscard]] inline FbiResult run_algorithm1(const BooleanOracle &oracle, Rng &rng,
                                              const FbiOptions &options = {}) {
    return run_algorithm1_early_stop(oracle, 1, rng, options);
}

/**
 * r = 1 versus r = 2, at most 2m - 1 GPK calls. Stops with r = 1 once m - 1
 * independent constant markers are known, or with r = 2 once three balancing
 * classes are known.
 */
[[nodiscard]] inline FbiResult run_algorithm2(const BooleanOracle &oracle, Rng &rng,
                                              const FbiOptions &options = {}) {
    detail::MarkerSession session(oracle, rng, options);
    auto &ledger = session.ledger();
    const auto target_constants = static_cast<std::size_t>(session.m() - 1);
    while (ledger.constant_markers.size() < target_constants) {
        const auto y = session.next_marker();
        if (!y) {
            throw PromiseViolation("markers exhausted before r was decided; oracle is not "
                                   "fully balanced with r in {1, 2}");
        }
        if (session.probe_constant(*y)) {
            ledger.add_constant(*y);
            continue;
        }
        if (ledger.balancing.empty()) {
            ledger.add_balancing(*y);
            continue;
        }
        const BitVector paired = ledger.balancing.front() ^ *y;
        if (session.probe_constant(paired)) {
            ledger.add_constant(paired);
            continue;
        }
        ledger.add_balancing(*y);
        ledger.add_balancing(paired);
        return session.finish(2);
    }
    return session.finish(1);
}

/**
 * General case: exact r for any fully balanced oracle. Collects independent
 * constant markers in C and representatives of the balancing classes modulo
 * C(f) in B until C u B spans {0,1}^m, then reads r = m - dim C and checks
 * #B = 2^r - 1.
 */
[[nodiscard]] inline FbiResult run_algorithm3(const BooleanOracle &oracle, Rng &rng,
                                              const FbiOptions &options = {}) {
    detail::MarkerSession session(oracle, rng, options);
    auto &ledger = session.ledger();
    while (const auto y = session.next_marker()) {
        if (session.probe_constant(*y)) {
            ledger.add_constant(*y);
            continue;
        }
        if (ledger.balancing.empty()) {
            ledger.add_balancing(*y);
            continue;
        }
        const std::vector<BitVector> classes = ledger.balancing;
        std::vector<BitVector> shifted;
        shifted.reserve(classes.size());
        bool found_constant = false;
        for (const auto &s : classes) {
            const BitVector candidate = s ^ *y;
            if (session.probe_constant(candidate)) {
                ledger.add_constant(candidate);
                found_constant = true;
                break;
            }
            shifted.push_back(candidate);
        }
        if (!found_constant) {
            ledger.add_balancing(*y);
            for (const auto &c : shifted) {
                ledger.add_balancing(c);
            }
        }
    }

    // Each round adds one dimension to span(C u B), so this only fails if the
    // bookkeeping above is broken.
    const int r = session.m() - ledger.constant_span.dimension();
    const std::size_t expected_classes = (std::size_t{1} << r) - 1;
    if (ledger.balancing.size() != expected_classes) {
        throw PromiseViolation("inconsistent ledger: dim C = " +
                               std::to_string(ledger.constant_span.dimension()) + " implies " +
                               std::to_string(expected_classes) + " balancing classes, found " +
                               std::to_string(ledger.balancing.size()));
    }
    return session.finish(r);
}

/**
 * img(f) = f(0) + { x : s . x = 0 for s in C }. Spends exactly one classical
 * query on the oracle.
 */
[[nodiscard]] inline ImageReconstruction reconstruct_image(const BooleanOracle &oracle,
                                                           const MarkerLedger &ledger) {
    const int m = oracle.output_width();
    auto direction = solve_homogeneous(ledger.constant_markers, m);
    const BitVector offset = oracle.evaluate(BitVector::zero(oracle.input_width()));
    std::vector<BitVector> points;
    for (const auto &d : enumerate_subspace(direction)) {
        points.push_back(d ^ offset);
    }
    std::sort(points.begin(), points.end());
    return {offset, std::move(direction), std::move(points)};
}

struct AuditReport {
    std::uint64_t probes = 0;
    std::vector<TraceEntry> trace;
};

/**
 * Spends `probes` extra GPK runs on markers whose class the ledger already
 * implies: nonzero elements of span(C) must yield 0, elements of
 * span(C u B) outside span(C) must not. A mismatch proves the oracle is not
 * fully balanced and raises PromiseViolation. The algorithms themselves never
 * query an implied marker, so this is the only way to catch a broken promise.
 */
inline AuditReport audit_ledger(const BooleanOracle &oracle, const MarkerLedger &ledger,
                                std::uint64_t probes, Rng &marker_rng, Rng &measure_rng,
                                Backend backend = Backend::fwht) {
    AuditReport report;
    const auto candidates = enumerate_subspace(ledger.collected_span);
    if (candidates.size() < 2) {
        return report;
    }
    std::uniform_int_distribution<std::size_t> pick(1, candidates.size() - 1);
    GpkEngine engine;
    for (std::uint64_t i = 0; i < probes; ++i) {
        const BitVector y = candidates[pick(marker_rng)];
        const bool implied_constant = ledger.constant_span.contains(y);
        const auto outcome = gpk_measure(engine.run(oracle, y, backend), measure_rng);
        report.trace.push_back({engine.calls(), y, outcome});
        report.probes = engine.calls();
        if (outcome.is_zero() != implied_constant) {
            throw PromiseViolation("marker " + y.to_string() + " was implied " +
                                   (implied_constant ? "constant" : "balanced") +
                                   " but GPK returned " + outcome.to_string() +
                                   "; the oracle is not fully balanced");
        }
    }
    return report;
}

/// Largest GPK call count each algorithm may spend.
[[nodiscard]] inline std::uint64_t algorithm1_bound(int m) { return static_cast<std::uint64_t>(m); }

[[nodiscard]] inline std::uint64_t early_stop_bound(int m, int r0) {
    return static_cast<std::uint64_t>(m - r0 + 1);
}

[[nodiscard]] inline std::uint64_t algorithm2_bound(int m) {
    return static_cast<std::uint64_t>(2 * m - 1);
}

[[nodiscard]] inline std::uint64_t algorithm3_bound(int m, int r) {
    return (std::uint64_t{1} << r) * static_cast<std::uint64_t>(m - r + 1) - 1;
}

} // namespace gpk
