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
 * Minimal dense state-vector simulator for the two-register H / U_f circuit.
 *
 * Basis index layout for n + m qubits: index = (x << m) | w, so the input
 * register x occupies the high qubits m .. m+n-1 and the output register w
 * the low qubits 0 .. m-1.
 */
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "gpk/errors.hpp"
#include "gpk/oracle.hpp"

namespace gpk {

inline constexpr int kMaxSimulatedQubits = 22;

class StateVector {
  public:
    using Complex = std::complex<double>;

    explicit StateVector(int qubits) : qubits_(qubits) {
        if (qubits < 1 || qubits > kMaxSimulatedQubits) {
            throw ResourceError("state vector supports 1.." + std::to_string(kMaxSimulatedQubits) +
                                " qubits, requested " + std::to_string(qubits));
        }
        amplitudes_.assign(std::size_t{1} << qubits, Complex{});
    }

    /// Computational basis state |index>.
    static StateVector basis_state(int qubits, std::uint64_t index) {
        StateVector state(qubits);
        detail::require(index < state.amplitudes_.size(), "basis index out of range");
        state.amplitudes_[index] = 1.0;
        return state;
    }

    [[nodiscard]] int qubits() const noexcept { return qubits_; }
    [[nodiscard]] std::size_t size() const noexcept { return amplitudes_.size(); }
    [[nodiscard]] const std::vector<Complex> &amplitudes() const noexcept { return amplitudes_; }
    [[nodiscard]] std::vector<Complex> &amplitudes() noexcept { return amplitudes_; }

    void apply_hadamard(int target) {
        detail::require(target >= 0 && target < qubits_, "hadamard target out of range");
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        const std::size_t stride = std::size_t{1} << target;
        for (std::size_t block = 0; block < amplitudes_.size(); block += 2 * stride) {
            for (std::size_t i = block; i < block + stride; ++i) {
                const Complex a = amplitudes_[i];
                const Complex b = amplitudes_[i + stride];
                amplitudes_[i] = (a + b) * inv_sqrt2;
                amplitudes_[i + stride] = (a - b) * inv_sqrt2;
            }
        }
    }

    /// U_f |x>|w> = |x>|w + f(x)>, a permutation of basis states.
    void apply_oracle(const BooleanOracle &oracle) {
        const int n = oracle.input_width();
        const int m = oracle.output_width();
        detail::require(n + m == qubits_, "oracle needs n + m qubits");
        const auto &table = oracle.table();
        std::vector<Complex> next(amplitudes_.size());
        const std::size_t outputs = std::size_t{1} << m;
        for (std::size_t x = 0; x < table.size(); ++x) {
            const std::size_t base = x << m;
            for (std::size_t w = 0; w < outputs; ++w) {
                next[base | (w ^ table[x])] = amplitudes_[base | w];
            }
        }
        amplitudes_.swap(next);
    }

    [[nodiscard]] double norm_squared() const noexcept {
        double total = 0.0;
        for (const auto &a : amplitudes_) {
            total += std::norm(a);
        }
        return total;
    }

  private:
    int qubits_;
    std::vector<Complex> amplitudes_;
};

/// Amplitudes of |gamma_y> = H_m |y>: (-1)^(y.w) / sqrt(2^m).
[[nodiscard]] inline std::vector<double> marker_state(int m, std::uint32_t y) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(std::size_t{1} << m));
    std::vector<double> gamma(std::size_t{1} << m);
    for (std::uint32_t w = 0; w < gamma.size(); ++w) {
        gamma[w] = parity_of_and(y, w) != 0 ? -scale : scale;
    }
    return gamma;
}

} // namespace gpk
