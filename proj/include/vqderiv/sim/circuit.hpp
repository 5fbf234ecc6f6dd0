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
 * Gates and circuits with one rotation-like gate per trainable parameter.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "vqderiv/error.hpp"
#include "vqderiv/sim/pauli.hpp"

namespace vqderiv {

inline constexpr std::size_t kMaxWires = 12;

/// exp(-i theta H / 2) with theta = params[param].
struct Rotation {
    PauliString generator;
    std::size_t param = 0;
    friend bool operator==(const Rotation &, const Rotation &) = default;
};

/// exp(-i angle H / 2) with a fixed angle.
struct FixedRotation {
    PauliString generator;
    double angle = 0.0;
    friend bool operator==(const FixedRotation &,
                           const FixedRotation &) = default;
};

struct Cnot {
    std::size_t control = 0;
    std::size_t target = 0;
    friend bool operator==(const Cnot &, const Cnot &) = default;
};

struct Hadamard {
    std::size_t wire = 0;
    friend bool operator==(const Hadamard &, const Hadamard &) = default;
};

/// Row-major 2^k x 2^k unitary acting on `wires` (wires[0] is the most
/// significant local bit).
struct DenseUnitary {
    std::vector<std::complex<double>> matrix;
    std::vector<std::size_t> wires;
    friend bool operator==(const DenseUnitary &,
                           const DenseUnitary &) = default;
};

using Gate = std::variant<Rotation, FixedRotation, Cnot, Hadamard, DenseUnitary>;

/// Max-abs deviation of M^dagger M from the identity.
inline double unitarityError(std::span<const std::complex<double>> m,
                             std::size_t dim) {
    double err = 0.0;
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            std::complex<double> acc = 0.0;
            for (std::size_t k = 0; k < dim; ++k) {
                acc += std::conj(m[k * dim + r]) * m[k * dim + c];
            }
            acc -= (r == c) ? 1.0 : 0.0;
            err = std::max(err, std::abs(acc));
        }
    }
    return err;
}

class Circuit {
  public:
    Circuit() = default;

    Circuit(std::size_t num_wires, std::vector<Gate> gates)
        : num_wires_(num_wires), gates_(std::move(gates)) {
        validate();
    }

    [[nodiscard]] std::size_t numWires() const { return num_wires_; }
    [[nodiscard]] std::size_t numParams() const { return num_params_; }
    [[nodiscard]] const std::vector<Gate> &gates() const { return gates_; }

    void checkParams(std::span<const double> params) const {
        if (params.size() != num_params_) {
            throw Error(ErrorKind::ParameterCount,
                        "expected " + std::to_string(num_params_) +
                            " parameters, got " +
                            std::to_string(params.size()));
        }
    }

    /// Parameter-free copy with every Rotation replaced by its bound angle.
    [[nodiscard]] Circuit bind(std::span<const double> params) const {
        checkParams(params);
        std::vector<Gate> out;
        out.reserve(gates_.size());
        for (const auto &g : gates_) {
            if (const auto *rot = std::get_if<Rotation>(&g)) {
                out.emplace_back(
                    FixedRotation{rot->generator, params[rot->param]});
            } else {
                out.push_back(g);
            }
        }
        return Circuit(num_wires_, std::move(out));
    }

    /// Inverse of a parameter-free circuit.
    [[nodiscard]] Circuit inverse() const {
        if (num_params_ != 0) {
            throw Error(ErrorKind::InvalidCircuit,
                        "inverse() needs a bound (parameter-free) circuit");
        }
        std::vector<Gate> out;
        out.reserve(gates_.size());
        for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
            if (const auto *fr = std::get_if<FixedRotation>(&*it)) {
                out.emplace_back(FixedRotation{fr->generator, -fr->angle});
            } else if (const auto *du = std::get_if<DenseUnitary>(&*it)) {
                const std::size_t dim = std::size_t{1} << du->wires.size();
                DenseUnitary adj{std::vector<std::complex<double>>(dim * dim),
                                 du->wires};
                for (std::size_t r = 0; r < dim; ++r) {
                    for (std::size_t c = 0; c < dim; ++c) {
                        adj.matrix[r * dim + c] =
                            std::conj(du->matrix[c * dim + r]);
                    }
                }
                out.emplace_back(std::move(adj));
            } else {
                out.push_back(*it);
            }
        }
        return Circuit(num_wires_, std::move(out));
    }

    /// Gates of `other` appended after this circuit's gates. Both must be
    /// parameter-free.
    [[nodiscard]] Circuit then(const Circuit &other) const {
        if (num_params_ != 0 || other.num_params_ != 0 ||
            num_wires_ != other.num_wires_) {
            throw Error(ErrorKind::InvalidCircuit,
                        "then() needs two bound circuits of equal width");
        }
        std::vector<Gate> out = gates_;
        out.insert(out.end(), other.gates_.begin(), other.gates_.end());
        return Circuit(num_wires_, std::move(out));
    }

    friend bool operator==(const Circuit &, const Circuit &) = default;

  private:
    void checkWire(std::size_t w) const {
        if (w >= num_wires_) {
            throw Error(ErrorKind::InvalidCircuit,
                        "wire " + std::to_string(w) + " out of range");
        }
    }

    void checkGenerator(const PauliString &p) const {
        if (p.numWires() != num_wires_) {
            throw Error(ErrorKind::InvalidCircuit,
                        "generator width does not match circuit width");
        }
        if (p.isIdentity()) {
            throw Error(ErrorKind::InvalidCircuit,
                        "rotation generator must not be the identity");
        }
    }

    void validate() {
        if (num_wires_ < 1 || num_wires_ > kMaxWires) {
            throw Error(ErrorKind::InvalidCircuit,
                        "wire count must lie in [1, 12]");
        }
        std::vector<std::size_t> params;
        for (const auto &g : gates_) {
            std::visit(
                [&](const auto &gate) {
                    using T = std::decay_t<decltype(gate)>;
                    if constexpr (std::is_same_v<T, Rotation>) {
                        checkGenerator(gate.generator);
                        params.push_back(gate.param);
                    } else if constexpr (std::is_same_v<T, FixedRotation>) {
                        checkGenerator(gate.generator);
                    } else if constexpr (std::is_same_v<T, Cnot>) {
                        checkWire(gate.control);
                        checkWire(gate.target);
                        if (gate.control == gate.target) {
                            throw Error(ErrorKind::InvalidCircuit,
                                        "CNOT control equals target");
                        }
                    } else if constexpr (std::is_same_v<T, Hadamard>) {
                        checkWire(gate.wire);
                    } else {
                        validateDense(gate);
                    }
                },
                g);
        }
        num_params_ = params.size();
        std::vector<bool> seen(num_params_, false);
        for (auto p : params) {
            if (p >= num_params_ || seen[p]) {
                throw Error(ErrorKind::InvalidCircuit,
                            "parameter indices must be 0..m-1, each used by "
                            "exactly one rotation");
            }
            seen[p] = true;
        }
    }

    void validateDense(const DenseUnitary &g) const {
        if (g.wires.empty()) {
            throw Error(ErrorKind::InvalidCircuit, "unitary without wires");
        }
        for (std::size_t i = 0; i < g.wires.size(); ++i) {
            checkWire(g.wires[i]);
            for (std::size_t k = 0; k < i; ++k) {
                if (g.wires[k] == g.wires[i]) {
                    throw Error(ErrorKind::InvalidCircuit,
                                "repeated wire in unitary");
                }
            }
        }
        const std::size_t dim = std::size_t{1} << g.wires.size();
        if (g.matrix.size() != dim * dim) {
            throw Error(ErrorKind::InvalidCircuit,
                        "unitary matrix size does not match its wires");
        }
        if (unitarityError(g.matrix, dim) > 1e-10) {
            throw Error(ErrorKind::InvalidCircuit, "matrix is not unitary");
        }
    }

    std::size_t num_wires_ = 1;
    std::size_t num_params_ = 0;
    std::vector<Gate> gates_;
};

} // namespace vqderiv
