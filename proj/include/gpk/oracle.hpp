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
 * Truth-table Boolean oracles f : {0,1}^n -> {0,1}^m and their text format.
 *
 * File format:
 *
 *     n m
 *     <f(0)>
 *     <f(1)>
 *     ...
 *     <f(2^n - 1)>
 *
 * Each output is an m-character binary string, most significant position
 * first. Line i holds f(x) for the input whose integer encoding is i. A '#'
 * starts a comment running to the end of the line; blank lines are ignored.
 */
#pragma once

#include <atomic>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gpk/bitvector.hpp"
#include "gpk/errors.hpp"

namespace gpk {

class BooleanOracle {
  public:
    BooleanOracle(int n, int m, std::vector<std::uint32_t> table)
        : n_(n), m_(m), table_(std::move(table)) {
        detail::require(n >= 1 && n <= BitVector::kMaxWidth, "oracle input width must be 1..24");
        detail::require(m >= 1 && m <= BitVector::kMaxWidth, "oracle output width must be 1..24");
        detail::require(table_.size() == (std::size_t{1} << n),
                        "oracle table must have exactly 2^n entries");
        for (auto v : table_) {
            detail::require((v >> m) == 0u, "oracle table entry wider than m");
        }
    }

    BooleanOracle(const BooleanOracle &other)
        : n_(other.n_), m_(other.m_), table_(other.table_), queries_(other.query_count()) {}

    BooleanOracle &operator=(const BooleanOracle &other) {
        if (this != &other) {
            n_ = other.n_;
            m_ = other.m_;
            table_ = other.table_;
            queries_.store(other.query_count());
        }
        return *this;
    }

    [[nodiscard]] int input_width() const noexcept { return n_; }
    [[nodiscard]] int output_width() const noexcept { return m_; }
    [[nodiscard]] std::uint32_t domain_size() const noexcept { return 1u << n_; }

    /// Classical, metered access: one call is one query.
    BitVector evaluate(const BitVector &x) const {
        detail::require(x.width() == n_, "oracle input has the wrong width");
        queries_.fetch_add(1, std::memory_order_relaxed);
        return {m_, table_[x.bits()]};
    }

    [[nodiscard]] std::uint64_t query_count() const noexcept {
        return queries_.load(std::memory_order_relaxed);
    }

    /// Unmetered view of the table for the circuit simulators and the
    /// brute-force ground truth.
    [[nodiscard]] const std::vector<std::uint32_t> &table() const noexcept { return table_; }

    [[nodiscard]] BitVector output_at(std::uint32_t x) const { return {m_, table_.at(x)}; }

    /// Same function, regardless of query history.
    [[nodiscard]] bool same_function(const BooleanOracle &other) const noexcept {
        return n_ == other.n_ && m_ == other.m_ && table_ == other.table_;
    }

  private:
    int n_;
    int m_;
    std::vector<std::uint32_t> table_;
    mutable std::atomic<std::uint64_t> queries_{0};
};

namespace detail {
inline std::string strip_comment(std::string line) {
    if (auto hash = line.find('#'); hash != std::string::npos) {
        line.erase(hash);
    }
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    auto last = line.find_last_not_of(" \t\r");
    return line.substr(first, last - first + 1);
}
} // namespace detail

[[nodiscard]] inline BooleanOracle read_oracle(std::istream &in) {
    std::string line;
    int line_no = 0;
    auto next_content = [&]() -> std::optional<std::string> {
        while (std::getline(in, line)) {
            ++line_no;
            auto content = detail::strip_comment(line);
            if (!content.empty()) {
                return content;
            }
        }
        return std::nullopt;
    };

    auto header = next_content();
    if (!header) {
        throw ParseError("oracle file is empty");
    }
    std::istringstream hs(*header);
    int n = 0;
    int m = 0;
    std::string trailing;
    if (!(hs >> n >> m) || (hs >> trailing)) {
        throw ParseError("line " + std::to_string(line_no) + ": expected header 'n m'");
    }
    if (n < 1 || n > BitVector::kMaxWidth || m < 1 || m > BitVector::kMaxWidth) {
        throw ParseError("header widths must lie in [1, 24]");
    }

    std::vector<std::uint32_t> table;
    table.reserve(std::size_t{1} << n);
    while (auto content = next_content()) {
        if (table.size() == (std::size_t{1} << n)) {
            throw ParseError("line " + std::to_string(line_no) + ": more than 2^n table rows");
        }
        BitVector value = BitVector::parse(*content);
        if (value.width() != m) {
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(m) + " output bits");
        }
        table.push_back(value.bits());
    }
    if (table.size() != (std::size_t{1} << n)) {
        throw ParseError("expected " + std::to_string(std::size_t{1} << n) + " table rows, got " +
                         std::to_string(table.size()));
    }
    return {n, m, std::move(table)};
}

[[nodiscard]] inline BooleanOracle parse_oracle(const std::string &text) {
    std::istringstream in(text);
    return read_oracle(in);
}

/// Canonical serialization: header, then one row per input, no comments.
[[nodiscard]] inline std::string format_oracle(const BooleanOracle &oracle) {
    std::string out = std::to_string(oracle.input_width()) + " " +
                      std::to_string(oracle.output_width()) + "\n";
    out.reserve(out.size() + oracle.table().size() * (oracle.output_width() + 1));
    for (auto v : oracle.table()) {
        out += BitVector(oracle.output_width(), v).to_string();
        out += '\n';
    }
    return out;
}

} // namespace gpk
