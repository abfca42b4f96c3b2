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
#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "gpk/boolfn.hpp"
#include "gpk/fbi.hpp"
#include "gpk/generators.hpp"
#include "test_support.hpp"

using namespace gpk;
using gpk::testing::bit_set;
using gpk::testing::rank2_oracle;

namespace {

BitVector bv(const char *s) { return BitVector::parse(s); }

/// Distinct classes of the balancing markers modulo span(C).
std::set<std::uint32_t> classes_mod(const std::vector<BitVector> &markers,
                                    const SubspaceBasis &constants) {
    std::set<std::uint32_t> out;
    for (const auto &b : markers) {
        out.insert(constants.reduce(b.bits()));
    }
    return out;
}

void expect_sound_ledger(const BooleanOracle &f, const MarkerLedger &ledger) {
    for (const auto &c : ledger.constant_markers) {
        EXPECT_EQ(classify_marker(f, c), MarkerClass::constant);
    }
    for (const auto &b : ledger.balancing) {
        EXPECT_EQ(classify_marker(f, b), MarkerClass::balanced);
    }
    EXPECT_EQ(static_cast<int>(ledger.constant_markers.size()), ledger.constant_span.dimension());
    EXPECT_EQ(ledger.gpk_calls, ledger.trace.size());
}

} // namespace

TEST(Algorithm3, RankTwoOracleTrace) {
    const auto f = rank2_oracle();
    Rng rng(1);
    const auto result = run_algorithm3(f, rng);
    EXPECT_EQ(result.r, 2);

    const auto &ledger = result.ledger;
    EXPECT_EQ(ledger.constant_span, SubspaceBasis::span_of(4, std::vector{bv("0010"), bv("1100")}));
    EXPECT_EQ(classes_mod(ledger.balancing, ledger.constant_span),
              classes_mod({bv("0001"), bv("0100"), bv("0101")}, ledger.constant_span));
    EXPECT_EQ(ledger.balancing.size(), 3u);
    expect_sound_ledger(f, ledger);

    // Marker order: 0001 (B), 0010 (C), 0100 then 0101 (B, B), 1000 then
    // 1001, then 1100 which is constant.
    std::vector<std::string> markers;
    for (const auto &e : ledger.trace) {
        markers.push_back(e.marker.to_string());
    }
    EXPECT_EQ(markers, (std::vector<std::string>{"0001", "0010", "0100", "0101", "1000", "1001",
                                                 "1100"}));
    EXPECT_LE(ledger.gpk_calls, algorithm3_bound(4, 2));
    EXPECT_EQ(ledger.trace[1].to_line(), "2 0010 0000 constant");

    const auto image = reconstruct_image(f, ledger);
    EXPECT_EQ(image.offset, bv("0001"));
    EXPECT_EQ(enumerate_subspace(image.direction),
              (std::vector<BitVector>{bv("0000"), bv("0001"), bv("1100"), bv("1101")}));
    EXPECT_EQ(bit_set(image.points), bit_set({bv("0000"), bv("0001"), bv("1100"), bv("1101")}));
    EXPECT_EQ(f.query_count(), 1u);
}

TEST(Algorithm3, ConstantOracleFillsC) {
    const auto f = gen_constant(3, bv("1010"));
    Rng rng(2);
    const auto result = run_algorithm3(f, rng);
    EXPECT_EQ(result.r, 0);
    EXPECT_EQ(result.ledger.constant_span.dimension(), 4);
    EXPECT_TRUE(result.ledger.balancing.empty());
    EXPECT_EQ(result.ledger.gpk_calls, 4u);
    const auto image = reconstruct_image(f, result.ledger);
    EXPECT_EQ(image.direction.dimension(), 0);
    EXPECT_EQ(image.points, (std::vector<BitVector>{bv("1010")}));
}

TEST(Algorithm3, SweepRecoversRankWithinBudget) {
    for (int n = 1; n <= 6; ++n) {
        for (int m = 1; m <= 6; ++m) {
            for (int r = 0; r <= std::min(n, m); ++r) {
                for (std::uint64_t seed = 0; seed < 3; ++seed) {
                    const auto f = gen_fully_balanced(n, m, r, seed * 7919 + n * 97 + m * 13 + r);
                    Rng rng(seed);
                    const auto result = run_algorithm3(f, rng);
                    ASSERT_EQ(result.r, r);
                    ASSERT_LE(result.ledger.gpk_calls, algorithm3_bound(m, r));
                    expect_sound_ledger(f, result.ledger);
                    EXPECT_EQ(result.ledger.constant_span.dimension(), m - r);
                    EXPECT_EQ(classes_mod(result.ledger.balancing, result.ledger.constant_span).size(),
                              (std::size_t{1} << r) - 1);
                    const auto image = reconstruct_image(f, result.ledger);
                    EXPECT_EQ(image.points, image_analysis(f).points);
                }
            }
        }
    }
}

TEST(Algorithm3, FullRankNeedsAllBalancingClasses) {
    const auto f = gen_fully_balanced(4, 4, 4, std::uint64_t{5});
    Rng rng(3);
    const auto result = run_algorithm3(f, rng);
    EXPECT_EQ(result.r, 4);
    EXPECT_EQ(result.ledger.balancing.size(), 15u);
    EXPECT_EQ(result.ledger.gpk_calls, 15u);
}

TEST(Algorithm3, MaxCallsGuard) {
    const auto f = gen_fully_balanced(4, 4, 4, std::uint64_t{5});
    Rng rng(3);
    FbiOptions options;
    options.max_calls = 5;
    EXPECT_THROW((void)run_algorithm3(f, rng, options), ResourceError);
}

TEST(Audit, CatchesOracleThatIsNotFullyBalanced) {
    // Markers 01 and 10 are neither constant nor balanced for this oracle, so
    // their GPK outcome is random and eventually contradicts the ledger.
    const auto f = gpk::testing::load_oracle("not_fully_balanced.oracle");
    int violations = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(seed);
        const auto result = run_algorithm3(f, rng);
        Rng markers(seed + 100);
        try {
            (void)audit_ledger(f, result.ledger, 64, markers, rng);
        } catch (const PromiseViolation &) {
            ++violations;
        }
    }
    EXPECT_EQ(violations, 20);
}

TEST(Audit, NeverFiresOnFullyBalancedOracles) {
    for (int r = 0; r <= 4; ++r) {
        const auto f = gen_fully_balanced(5, 4, r, std::uint64_t(r));
        Rng rng(9);
        const auto result = run_algorithm3(f, rng);
        Rng markers(10);
        const auto report = audit_ledger(f, result.ledger, 64, markers, rng);
        EXPECT_EQ(report.probes, 64u);
    }
    Rng rng(1);
    const auto flat = run_algorithm1(gen_constant(2, BitVector::parse("01")), rng);
    Rng markers(2);
    EXPECT_EQ(audit_ledger(gen_constant(2, BitVector::parse("01")), flat.ledger, 8, markers, rng).probes,
              8u);
}

TEST(Algorithm3, SameSeedSameTraceAndSeedNeverChangesClassification) {
    const auto f = gen_fully_balanced(5, 5, 3, std::uint64_t{77});
    Rng a(1);
    Rng b(1);
    const auto first = run_algorithm3(f, a);
    const auto second = run_algorithm3(f, b);
    EXPECT_EQ(first.ledger.trace_log(), second.ledger.trace_log());

    Rng c(2);
    const auto other = run_algorithm3(f, c);
    ASSERT_EQ(other.ledger.trace.size(), first.ledger.trace.size());
    for (std::size_t i = 0; i < other.ledger.trace.size(); ++i) {
        EXPECT_EQ(other.ledger.trace[i].marker, first.ledger.trace[i].marker);
        EXPECT_EQ(other.ledger.trace[i].constant(), first.ledger.trace[i].constant());
    }
}

TEST(Algorithm1, Examples) {
    Rng rng(4);
    const auto constant = run_algorithm1(gen_constant(3, bv("011")), rng);
    EXPECT_EQ(constant.r, 0);
    EXPECT_EQ(constant.ledger.gpk_calls, 3u);

    const BooleanOracle x0(3, 1, {0, 1, 0, 1, 0, 1, 0, 1});
    const auto balanced = run_algorithm1(x0, rng);
    EXPECT_EQ(balanced.r, 1);
    EXPECT_EQ(balanced.ledger.gpk_calls, 1u);
}

TEST(Algorithm1, SweepWithinBudget) {
    for (int n = 1; n <= 6; ++n) {
        for (int m = 1; m <= 6; ++m) {
            for (int r = 0; r <= 1; ++r) {
                for (std::uint64_t seed = 0; seed < 5; ++seed) {
                    const auto f = gen_fully_balanced(n, m, r, seed * 31 + n * 7 + m * 3 + r);
                    Rng rng(seed);
                    const auto result = run_algorithm1(f, rng);
                    ASSERT_EQ(result.r, r);
                    ASSERT_LE(result.ledger.gpk_calls, algorithm1_bound(m));
                    expect_sound_ledger(f, result.ledger);
                }
            }
        }
    }
}

TEST(Algorithm1EarlyStop, Examples) {
    const auto f = gen_fully_balanced(5, 5, 1, std::uint64_t{3});
    Rng a(1);
    Rng b(1);
    EXPECT_EQ(run_algorithm1_early_stop(f, 1, a).ledger.trace_log(),
              run_algorithm1(f, b).ledger.trace_log());

    // r0 = m decides with one call either way.
    Rng rng(2);
    const auto full = run_algorithm1_early_stop(gen_fully_balanced(4, 4, 4, std::uint64_t{1}), 4, rng);
    EXPECT_EQ(full.r, 4);
    EXPECT_EQ(full.ledger.gpk_calls, 1u);
    const auto flat = run_algorithm1_early_stop(gen_constant(4, bv("0110")), 4, rng);
    EXPECT_EQ(flat.r, 0);
    EXPECT_EQ(flat.ledger.gpk_calls, 1u);

    EXPECT_THROW((void)run_algorithm1_early_stop(f, 0, rng), ContractError);
}

TEST(Algorithm1EarlyStop, SweepWithinBudget) {
    for (int n = 1; n <= 6; ++n) {
        for (int m = 1; m <= 6; ++m) {
            for (int r0 = 1; r0 <= std::min(n, m); ++r0) {
                for (int r : {0, r0}) {
                    const auto f = gen_fully_balanced(n, m, r, std::uint64_t(n * 1000 + m * 100 + r0 * 10 + r));
                    Rng rng(static_cast<std::uint64_t>(r0));
                    const auto result = run_algorithm1_early_stop(f, r0, rng);
                    ASSERT_EQ(result.r, r);
                    ASSERT_LE(result.ledger.gpk_calls, early_stop_bound(m, r0));
                }
            }
        }
    }
}

TEST(Algorithm2, Examples) {
    Rng rng(5);
    const auto one = run_algorithm2(gen_fully_balanced(4, 4, 1, std::uint64_t{11}), rng);
    EXPECT_EQ(one.r, 1);
    EXPECT_LE(one.ledger.gpk_calls, 7u);
    const auto two = run_algorithm2(gen_fully_balanced(4, 4, 2, std::uint64_t{11}), rng);
    EXPECT_EQ(two.r, 2);
    EXPECT_LE(two.ledger.gpk_calls, 7u);
    const auto ex = run_algorithm2(rank2_oracle(), rng);
    EXPECT_EQ(ex.r, 2);
    EXPECT_EQ(ex.ledger.balancing.size(), 3u);
}

TEST(Algorithm2, SweepWithinBudget) {
    for (int n = 1; n <= 6; ++n) {
        for (int m = 1; m <= 6; ++m) {
            for (int r = 1; r <= std::min({2, n, m}); ++r) {
                for (std::uint64_t seed = 0; seed < 5; ++seed) {
                    const auto f = gen_fully_balanced(n, m, r, seed * 17 + n * 5 + m * 3 + r);
                    Rng rng(seed);
                    const auto result = run_algorithm2(f, rng);
                    ASSERT_EQ(result.r, r);
                    ASSERT_LE(result.ledger.gpk_calls, algorithm2_bound(m));
                    expect_sound_ledger(f, result.ledger);
                }
            }
        }
    }
}

TEST(Bounds, Values) {
    EXPECT_EQ(algorithm1_bound(5), 5u);
    EXPECT_EQ(early_stop_bound(5, 3), 3u);
    EXPECT_EQ(algorithm2_bound(4), 7u);
    EXPECT_EQ(algorithm3_bound(4, 2), 11u);
    EXPECT_EQ(algorithm3_bound(4, 4), 15u);
}
