// Copyright 2026 The vqderiv Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Dense state vector and in-place gate kernels.
 */
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "vqderiv/error.hpp"
#include "vqderiv/sim/circuit.hpp"

namespace vqderiv {

class StateVector {
  public:
    using ComplexT = std::complex<double>;

    /// |0...0> on `num_wires` wires.
    explicit StateVector(std::size_t num_wires)
        : num_wires_(num_wires), amps_(std::size_t{1} << num_wires) {
        if (num_wires < 1 || num_wires > kMaxWires) {
            throw Error(ErrorKind::InvalidCircuit,
                        "wire count must lie in [1, 12]");
        }
        amps_[0] = 1.0;
    }

    StateVector(std::size_t num_wires, std::vector<ComplexT> amps)
        : num_wires_(num_wires), amps_(std::move(amps)) {
        if (amps_.size() != (std::size_t{1} << num_wires)) {
            throw Error(ErrorKind::InvalidArgument,
                        "amplitude count must be 2^n");
        }
    }

    [[nodiscard]] std::size_t numWires() const { return num_wires_; }
    [[nodiscard]] std::size_t size() const { return amps_.size(); }
    [[nodiscard]] std::span<const ComplexT> amplitudes() const {
        return amps_;
    }
    [[nodiscard]] ComplexT operator[](std::size_t i) const { return amps_[i]; }

    [[nodiscard]] double squaredNorm() const {
        double acc = 0.0;
        for (const auto &a : amps_) {
            acc += std::norm(a);
        }
        return acc;
    }

    /// <this|other>
    [[nodiscard]] ComplexT inner(const StateVector &other) const {
        ComplexT acc = 0.0;
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            acc += std::conj(amps_[i]) * other.amps_[i];
        }
        return acc;
    }

    void applyPauli(const PauliString &p) {
        std::vector<ComplexT> out(amps_.size());
        for (std::uint64_t i = 0; i < amps_.size(); ++i) {
            auto [c, k] = p.actOnBasis(i);
            out[k] = c * amps_[i];
        }
        amps_ = std::move(out);
    }

    /// exp(-i angle P / 2) = cos(angle/2) I - i sin(angle/2) P.
    void applyPauliRotation(const PauliString &p, double angle) {
        const double c = std::cos(angle / 2);
        const ComplexT minus_i_s{0.0, -std::sin(angle / 2)};
        std::vector<ComplexT> out(amps_.size());
        for (std::uint64_t i = 0; i < amps_.size(); ++i) {
            auto [coef, k] = p.actOnBasis(i);
            out[i] += c * amps_[i];
            out[k] += minus_i_s * coef * amps_[i];
        }
        amps_ = std::move(out);
    }

    void applyCnot(std::size_t control, std::size_t target) {
        const std::uint64_t cbit = bit(control);
        const std::uint64_t tbit = bit(target);
        for (std::uint64_t i = 0; i < amps_.size(); ++i) {
            if ((i & cbit) && !(i & tbit)) {
                std::swap(amps_[i], amps_[i | tbit]);
            }
        }
    }

    void applyHadamard(std::size_t wire) {
        const std::uint64_t b = bit(wire);
        const double r = 1.0 / std::sqrt(2.0);
        for (std::uint64_t i = 0; i < amps_.size(); ++i) {
            if (!(i & b)) {
                const ComplexT a0 = amps_[i];
                const ComplexT a1 = amps_[i | b];
                amps_[i] = r * (a0 + a1);
                amps_[i | b] = r * (a0 - a1);
            }
        }
    }

    void applyDense(const DenseUnitary &u) {
        const std::size_t k = u.wires.size();
        const std::size_t dim = std::size_t{1} << k;
        std::vector<std::uint64_t> offsets(dim, 0);
        std::uint64_t touched = 0;
        for (std::size_t local = 0; local < dim; ++local) {
            for (std::size_t q = 0; q < k; ++q) {
                if (local & (std::size_t{1} << (k - 1 - q))) {
                    offsets[local] |= bit(u.wires[q]);
                }
            }
        }
        for (auto w : u.wires) {
            touched |= bit(w);
        }
        std::vector<ComplexT> in(dim);
        for (std::uint64_t base = 0; base < amps_.size(); ++base) {
            if (base & touched) {
                continue;
            }
            for (std::size_t l = 0; l < dim; ++l) {
                in[l] = amps_[base | offsets[l]];
            }
            for (std::size_t r = 0; r < dim; ++r) {
                ComplexT acc = 0.0;
                for (std::size_t c = 0; c < dim; ++c) {
                    acc += u.matrix[r * dim + c] * in[c];
                }
                amps_[base | offsets[r]] = acc;
            }
        }
    }

    void applyGate(const Gate &gate, std::span<const double> params) {
        std::visit(
            [&](const auto &g) {
                using T = std::decay_t<decltype(g)>;
                if constexpr (std::is_same_v<T, Rotation>) {
                    applyPauliRotation(g.generator, params[g.param]);
                } else if constexpr (std::is_same_v<T, FixedRotation>) {
                    applyPauliRotation(g.generator, g.angle);
                } else if constexpr (std::is_same_v<T, Cnot>) {
                    applyCnot(g.control, g.target);
                } else if constexpr (std::is_same_v<T, Hadamard>) {
                    applyHadamard(g.wire);
                } else {
                    applyDense(g);
                }
            },
            gate);
    }

  private:
    [[nodiscard]] std::uint64_t bit(std::size_t wire) const {
        return std::uint64_t{1} << (num_wires_ - 1 - wire);
    }

    std::size_t num_wires_;
    std::vector<ComplexT> amps_;
};

} // namespace vqderiv
