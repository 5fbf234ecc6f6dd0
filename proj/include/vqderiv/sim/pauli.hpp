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
 * Dense Pauli strings over n wires.
 *
 * Bit convention used throughout the simulator: wire 0 is the most
 * significant bit of a basis-state index, so |q0 q1 ... q_{n-1}> has index
 * sum_w q_w 2^{n-1-w}.
 */
#pragma once

#include <bit>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "vqderiv/error.hpp"

namespace vqderiv {

enum class Pauli : char { I = 'I', X = 'X', Y = 'Y', Z = 'Z' };

class PauliString {
  public:
    PauliString() = default;

    explicit PauliString(std::vector<Pauli> letters)
        : letters_(std::move(letters)) {
        if (letters_.empty()) {
            throw Error(ErrorKind::InvalidArgument,
                        "Pauli string needs at least one wire");
        }
    }

    /// Parses a string such as "XIZ"; the length fixes the wire count.
    static PauliString parse(std::string_view text) {
        std::vector<Pauli> letters;
        letters.reserve(text.size());
        for (char c : text) {
            switch (c) {
            case 'I':
            case 'X':
            case 'Y':
            case 'Z':
                letters.push_back(static_cast<Pauli>(c));
                break;
            default:
                throw Error(ErrorKind::Parse,
                            std::string("bad Pauli letter '") + c + "'");
            }
        }
        return PauliString(std::move(letters));
    }

    /// Single non-identity letter on `wire` of an n-wire register.
    static PauliString single(std::size_t num_wires, std::size_t wire,
                              Pauli letter) {
        if (wire >= num_wires) {
            throw Error(ErrorKind::InvalidCircuit, "wire index out of range");
        }
        std::vector<Pauli> letters(num_wires, Pauli::I);
        letters[wire] = letter;
        return PauliString(std::move(letters));
    }

    [[nodiscard]] std::size_t numWires() const { return letters_.size(); }
    [[nodiscard]] const std::vector<Pauli> &letters() const { return letters_; }
    [[nodiscard]] Pauli at(std::size_t wire) const { return letters_.at(wire); }

    [[nodiscard]] bool isIdentity() const {
        for (auto p : letters_) {
            if (p != Pauli::I) {
                return false;
            }
        }
        return true;
    }

    [[nodiscard]] std::string str() const {
        std::string out;
        for (auto p : letters_) {
            out.push_back(static_cast<char>(p));
        }
        return out;
    }

    /// Bits flipped by the string (X and Y wires).
    [[nodiscard]] std::uint64_t xMask() const { return mask(true); }
    /// Bits that pick up a sign (Y and Z wires).
    [[nodiscard]] std::uint64_t zMask() const { return mask(false); }

    [[nodiscard]] std::size_t countY() const {
        std::size_t n = 0;
        for (auto p : letters_) {
            n += (p == Pauli::Y) ? 1 : 0;
        }
        return n;
    }

    /// Coefficient c and image index k with P|index> = c |k>.
    [[nodiscard]] std::pair<std::complex<double>, std::uint64_t>
    actOnBasis(std::uint64_t index) const {
        static constexpr std::complex<double> i_pow[4] = {
            {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        std::complex<double> c = i_pow[countY() % 4];
        if (std::popcount(index & zMask()) % 2 == 1) {
            c = -c;
        }
        return {c, index ^ xMask()};
    }

    /// Dense 2^n x 2^n matrix, row-major; only meant for small checks.
    [[nodiscard]] std::vector<std::complex<double>> denseMatrix() const {
        const std::uint64_t dim = std::uint64_t{1} << numWires();
        std::vector<std::complex<double>> m(dim * dim);
        for (std::uint64_t col = 0; col < dim; ++col) {
            auto [c, row] = actOnBasis(col);
            m[row * dim + col] = c;
        }
        return m;
    }

    friend bool operator==(const PauliString &, const PauliString &) = default;

  private:
    [[nodiscard]] std::uint64_t mask(bool x_part) const {
        const std::size_t n = letters_.size();
        std::uint64_t m = 0;
        for (std::size_t w = 0; w < n; ++w) {
            const Pauli p = letters_[w];
            const bool hit = x_part ? (p == Pauli::X || p == Pauli::Y)
                                    : (p == Pauli::Z || p == Pauli::Y);
            if (hit) {
                m |= std::uint64_t{1} << (n - 1 - w);
            }
        }
        return m;
    }

    std::vector<Pauli> letters_;
};

} // namespace vqderiv
