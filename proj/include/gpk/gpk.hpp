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
 * The generalised phase kick-back circuit GPK(y) on a truth-table oracle.
 *
 * Two independent backends produce the first-register amplitudes
 *
 *     alpha_z = (1/N) sum_x (-1)^(y.f(x) + x.z),   N = 2^n,
 *
 * which are the Walsh coefficients W_f(z, y) scaled by 1/N:
 *
 *  - Backend::fwht builds the sign vector (-1)^(y.f(x)) and runs one exact
 *    integer fast Walsh-Hadamard transform.
 *  - Backend::statevector simulates the circuit gate by gate on n + m qubits:
 *    |0>|y>, H on every qubit, U_f, H on the input register, then projects
 *    the output register onto |gamma_y>.
 */
#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gpk/bitvector.hpp"
#include "gpk/errors.hpp"
#include "gpk/oracle.hpp"
#include "gpk/rng.hpp"
#include "gpk/statevector.hpp"

namespace gpk {

/// Unnormalised in-place Walsh-Hadamard transform:
/// out[z] = sum_x (-1)^(x.z) in[x].
template <typename T>
    requires std::is_arithmetic_v<T>
void fwht_inplace(std::span<T> values) {
    const std::size_t size = values.size();
    detail::require(size > 0 && std::has_single_bit(size), "fwht length must be a power of two");
    for (std::size_t half = 1; half < size; half <<= 1) {
        for (std::size_t block = 0; block < size; block += 2 * half) {
            for (std::size_t i = block; i < block + half; ++i) {
                const T a = values[i];
                const T b = values[i + half];
                values[i] = a + b;
                values[i + half] = a - b;
            }
        }
    }
}

template <typename T>
    requires std::is_arithmetic_v<T>
void fwht_inplace(std::vector<T> &values) {
    fwht_inplace(std::span<T>(values));
}

/// W_f(z, y) by direct summation over all inputs.
[[nodiscard]] inline std::int64_t walsh_coefficient(const BooleanOracle &oracle, const BitVector &z,
                                                    const BitVector &y) {
    detail::require(z.width() == oracle.input_width(), "z must have width n");
    detail::require(y.width() == oracle.output_width(), "y must have width m");
    std::int64_t sum = 0;
    const auto &table = oracle.table();
    for (std::uint32_t x = 0; x < table.size(); ++x) {
        sum += (parity_of_and(table[x], y.bits()) ^ parity_of_and(x, z.bits())) != 0 ? -1 : 1;
    }
    return sum;
}

inline constexpr int kMaxFwhtInputWidth = 22;

/// All W_f(., y) at once: one pass for the sign vector, one transform.
[[nodiscard]] inline std::vector<std::int64_t> walsh_spectrum(const BooleanOracle &oracle,
                                                              const BitVector &y) {
    detail::require(y.width() == oracle.output_width(), "y must have width m");
    if (oracle.input_width() > kMaxFwhtInputWidth) {
        throw ResourceError("fwht backend supports n <= 22");
    }
    const auto &table = oracle.table();
    std::vector<std::int64_t> signs(table.size());
    for (std::size_t x = 0; x < table.size(); ++x) {
        signs[x] = parity_of_and(table[x], y.bits()) != 0 ? -1 : 1;
    }
    fwht_inplace(signs);
    return signs;
}

/// Final first-register amplitudes of one GPK(y) run.
struct GpkDistribution {
    int n = 0;
    std::vector<double> alphas;

    [[nodiscard]] double probability(std::uint32_t z) const { return alphas.at(z) * alphas.at(z); }

    [[nodiscard]] double total_probability() const noexcept {
        double total = 0.0;
        for (double a : alphas) {
            total += a * a;
        }
        return total;
    }
};

/// Diagnostics of one gate-level simulation.
struct StatevectorRun {
    GpkDistribution distribution;
    double max_imaginary = 0.0;        ///< largest |Im alpha_z|
    double separation_residual = 0.0;  ///< || psi - alpha (x) gamma_y ||
    double joint_norm_squared = 0.0;
};

[[nodiscard]] inline StatevectorRun simulate_gpk_circuit(const BooleanOracle &oracle,
                                                         const BitVector &y) {
    const int n = oracle.input_width();
    const int m = oracle.output_width();
    detail::require(y.width() == m, "y must have width m");
    if (n + m > kMaxSimulatedQubits) {
        throw ResourceError("statevector backend supports n + m <= 22");
    }

    // |0>_n (x) |y>_m, then H on all qubits.
    auto state = StateVector::basis_state(n + m, y.bits());
    for (int q = 0; q < n + m; ++q) {
        state.apply_hadamard(q);
    }
    state.apply_oracle(oracle);
    for (int q = m; q < n + m; ++q) {
        state.apply_hadamard(q);
    }

    // The output register is left in |gamma_y>; project onto it to read the
    // input-register factor, then measure how far the state is from a product.
    const auto gamma = marker_state(m, y.bits());
    const std::size_t outputs = gamma.size();
    const auto &psi = state.amplitudes();
    std::vector<std::complex<double>> factor(std::size_t{1} << n);
    for (std::size_t z = 0; z < factor.size(); ++z) {
        std::complex<double> acc{};
        for (std::size_t w = 0; w < outputs; ++w) {
            acc += gamma[w] * psi[(z << m) | w];
        }
        factor[z] = acc;
    }

    StatevectorRun run;
    run.distribution.n = n;
    run.distribution.alphas.resize(factor.size());
    double residual = 0.0;
    for (std::size_t z = 0; z < factor.size(); ++z) {
        run.distribution.alphas[z] = factor[z].real();
        run.max_imaginary = std::max(run.max_imaginary, std::abs(factor[z].imag()));
        for (std::size_t w = 0; w < outputs; ++w) {
            residual += std::norm(psi[(z << m) | w] - factor[z] * gamma[w]);
        }
    }
    run.separation_residual = std::sqrt(residual);
    run.joint_norm_squared = state.norm_squared();
    return run;
}

enum class Backend { fwht, statevector };

[[nodiscard]] inline const char *to_string(Backend b) noexcept {
    return b == Backend::fwht ? "fwht" : "statevector";
}

/**
 * Runs GPK(y) and counts U_f applications: every distribution built is one
 * call, whichever backend produced it. The counter is atomic so concurrent
 * runs against one engine never lose counts.
 */
class GpkEngine {
  public:
    /// Imaginary parts above this mean the simulator is broken.
    static constexpr double kImaginaryTolerance = 1e-12;

    GpkDistribution run(const BooleanOracle &oracle, const BitVector &y,
                        Backend backend = Backend::fwht) {
        return backend == Backend::fwht ? fwht_distribution(oracle, y)
                                        : statevector_distribution(oracle, y);
    }

    GpkDistribution fwht_distribution(const BooleanOracle &oracle, const BitVector &y) {
        const auto spectrum = walsh_spectrum(oracle, y);
        calls_.fetch_add(1, std::memory_order_relaxed);
        GpkDistribution dist;
        dist.n = oracle.input_width();
        dist.alphas.resize(spectrum.size());
        const double scale = 1.0 / static_cast<double>(spectrum.size());
        for (std::size_t z = 0; z < spectrum.size(); ++z) {
            dist.alphas[z] = static_cast<double>(spectrum[z]) * scale;
        }
        return dist;
    }

    GpkDistribution statevector_distribution(const BooleanOracle &oracle, const BitVector &y) {
        auto run = simulate_gpk_circuit(oracle, y);
        calls_.fetch_add(1, std::memory_order_relaxed);
        if (run.max_imaginary > kImaginaryTolerance) {
            throw std::logic_error("statevector backend produced complex amplitudes");
        }
        return std::move(run.distribution);
    }

    [[nodiscard]] std::uint64_t calls() const noexcept {
        return calls_.load(std::memory_order_relaxed);
    }

  private:
    std::atomic<std::uint64_t> calls_{0};
};

/// Samples z with probability alpha_z^2. Outcomes of zero amplitude are
/// never returned.
[[nodiscard]] inline BitVector gpk_measure(const GpkDistribution &dist, Rng &rng) {
    const double u = uniform_unit(rng) * dist.total_probability();
    double acc = 0.0;
    std::uint32_t last_supported = 0;
    for (std::uint32_t z = 0; z < dist.alphas.size(); ++z) {
        const double p = dist.alphas[z] * dist.alphas[z];
        if (p == 0.0) {
            continue;
        }
        acc += p;
        last_supported = z;
        if (u < acc) {
            return {dist.n, z};
        }
    }
    return {dist.n, last_supported};
}

/**
 * Largest per-amplitude difference after fixing the global sign: both
 * vectors are flipped so the entry where `a` has its largest magnitude is
 * non-negative.
 */
[[nodiscard]] inline double max_amplitude_discrepancy(const GpkDistribution &a,
                                                      const GpkDistribution &b) {
    detail::require(a.alphas.size() == b.alphas.size(), "distributions differ in size");
    std::size_t pivot = 0;
    for (std::size_t z = 1; z < a.alphas.size(); ++z) {
        if (std::abs(a.alphas[z]) > std::abs(a.alphas[pivot])) {
            pivot = z;
        }
    }
    const double sign_a = a.alphas[pivot] < 0.0 ? -1.0 : 1.0;
    const double sign_b = b.alphas[pivot] < 0.0 ? -1.0 : 1.0;
    double worst = 0.0;
    for (std::size_t z = 0; z < a.alphas.size(); ++z) {
        worst = std::max(worst, std::abs(sign_a * a.alphas[z] - sign_b * b.alphas[z]));
    }
    return worst;
}

/// || U_f v - (-1)^(y.f(x)) v || for v = |x> (x) |gamma_y>.
[[nodiscard]] inline double eigenvector_residual(const BooleanOracle &oracle, const BitVector &x,
                                                 const BitVector &y) {
    const int n = oracle.input_width();
    const int m = oracle.output_width();
    detail::require(x.width() == n, "x must have width n");
    detail::require(y.width() == m, "y must have width m");

    StateVector state(n + m);
    const auto gamma = marker_state(m, y.bits());
    const std::size_t base = static_cast<std::size_t>(x.bits()) << m;
    for (std::size_t w = 0; w < gamma.size(); ++w) {
        state.amplitudes()[base | w] = gamma[w];
    }
    const StateVector before = state;
    state.apply_oracle(oracle);

    const double eigenvalue = parity_of_and(y.bits(), oracle.table()[x.bits()]) != 0 ? -1.0 : 1.0;
    double residual = 0.0;
    for (std::size_t i = 0; i < state.size(); ++i) {
        residual += std::norm(state.amplitudes()[i] - eigenvalue * before.amplitudes()[i]);
    }
    return std::sqrt(residual);
}

} // namespace gpk
