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
 * Exact trigonometric reconstruction of f from 3^m evaluations.
 *
 * f is a linear combination of prod_j b_j(theta_j) with
 * b_j in {1, cos, sin}. Sampling f on the grid {0, +pi/2, -pi/2}^m gives a
 * Kronecker-structured linear system whose per-parameter factor
 *
 *     [[1, 1,  0],
 *      [1, 0,  1],
 *      [1, 0, -1]]
 *
 * is inverted exactly and applied one axis at a time.
 */
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "vqderiv/deriv/param_shift.hpp"

namespace vqderiv {

inline constexpr std::size_t kMaxSurrogateParams = 8;

class TrigSurrogate {
  public:
    TrigSurrogate(std::size_t num_params, std::vector<double> coefficients)
        : m_(num_params), coeffs_(std::move(coefficients)) {
        if (coeffs_.size() != pow3(m_)) {
            throw Error(ErrorKind::Size, "coefficient count must be 3^m");
        }
    }

    [[nodiscard]] std::size_t numParams() const { return m_; }

    /// Coefficients, parameter 0 slowest; per-parameter basis order
    /// (1, cos, sin).
    [[nodiscard]] const std::vector<double> &coefficients() const {
        return coeffs_;
    }

    [[nodiscard]] double operator()(std::span<const double> theta) const {
        return contract(theta, m_);
    }

    /// Analytic d f / d theta_j of the surrogate.
    [[nodiscard]] double derivative(std::span<const double> theta,
                                    std::size_t j) const {
        return contract(theta, j);
    }

    static std::size_t pow3(std::size_t m) {
        std::size_t p = 1;
        for (std::size_t i = 0; i < m; ++i) {
            p *= 3;
        }
        return p;
    }

  private:
    /// Contracts the coefficient tensor with per-axis basis vectors; the
    /// axis `diff_axis` (if < m) uses the derivative basis.
    [[nodiscard]] double contract(std::span<const double> theta,
                                  std::size_t diff_axis) const {
        if (theta.size() != m_) {
            throw Error(ErrorKind::ParameterCount, "surrogate parameter count");
        }
        std::vector<double> work = coeffs_;
        std::size_t len = work.size();
        for (std::size_t axis = m_; axis-- > 0;) {
            const double c = std::cos(theta[axis]);
            const double s = std::sin(theta[axis]);
            const std::array<double, 3> basis =
                axis == diff_axis ? std::array<double, 3>{0.0, -s, c}
                                  : std::array<double, 3>{1.0, c, s};
            len /= 3;
            for (std::size_t i = 0; i < len; ++i) {
                work[i] = basis[0] * work[3 * i] + basis[1] * work[3 * i + 1] +
                          basis[2] * work[3 * i + 2];
            }
        }
        return work[0];
    }

    std::size_t m_;
    std::vector<double> coeffs_;
};

/// Grid shift of digit 0, 1, 2.
inline constexpr std::array<double, 3> kTrigGrid = {0.0, kHalfPi, -kHalfPi};

/// Evaluates f on {0, +pi/2, -pi/2}^m (3^m calls, parameter 0 slowest) and
/// solves for the surrogate coefficients.
template <ExpectationFunction E>
TrigSurrogate trigReconstruct(E &ev, std::size_t m) {
    if (m > kMaxSurrogateParams) {
        throw Error(ErrorKind::Size, "reconstruction supports m <= 8");
    }
    if (m == 0) {
        throw Error(ErrorKind::Size, "reconstruction needs m >= 1");
    }
    const std::size_t total = TrigSurrogate::pow3(m);
    std::vector<double> values(total);
    std::vector<double> theta(m);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rest = flat;
        for (std::size_t axis = m; axis-- > 0;) {
            theta[axis] = kTrigGrid[rest % 3];
            rest /= 3;
        }
        values[flat] = ev(std::span<const double>(theta));
    }
    // Inverse of the per-parameter basis matrix.
    static constexpr double kInv[3][3] = {
        {0.0, 0.5, 0.5}, {1.0, -0.5, -0.5}, {0.0, 0.5, -0.5}};
    std::size_t stride = 1;
    for (std::size_t axis = m; axis-- > 0;) {
        const std::size_t block = stride * 3;
        for (std::size_t outer = 0; outer < total; outer += block) {
            for (std::size_t inner = 0; inner < stride; ++inner) {
                const std::size_t base = outer + inner;
                const double v0 = values[base];
                const double v1 = values[base + stride];
                const double v2 = values[base + 2 * stride];
                for (std::size_t r = 0; r < 3; ++r) {
                    values[base + r * stride] =
                        kInv[r][0] * v0 + kInv[r][1] * v1 + kInv[r][2] * v2;
                }
            }
        }
        stride = block;
    }
    return TrigSurrogate(m, std::move(values));
}

} // namespace vqderiv
