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
 * Central and forward finite-difference stencils.
 */
#pragma once

#include <vector>

#include "vqderiv/deriv/shift_set.hpp"

namespace vqderiv {

enum class FdScheme { Central, Forward };

/// Central: sum_k P(k) f(theta + k) / (2h)^d over the shift set with step h
/// (d = 1, 2). Forward: [f(theta + h e_j) - f(theta)] / h (d = 1).
inline ShiftPlan fdPlan(std::span<const std::size_t> indices, std::size_t m,
                        double h, FdScheme scheme) {
    checkIndices(indices, m);
    if (!(h > 0.0)) {
        throw Error(ErrorKind::InvalidStep, "step h must be > 0");
    }
    const std::size_t d = indices.size();
    PlanBuilder b;
    if (scheme == FdScheme::Forward) {
        if (d != 1) {
            throw Error(ErrorKind::UnsupportedScheme,
                        "forward differences are defined for d = 1 only");
        }
        std::vector<double> plus(m, 0.0);
        plus[indices[0]] = h;
        b.add(std::move(plus), 1.0 / h);
        b.add(std::vector<double>(m, 0.0), -1.0 / h);
        return b.build();
    }
    if (d > 2) {
        throw Error(ErrorKind::UnsupportedScheme,
                    "central differences are defined for d = 1, 2");
    }
    const double norm = std::pow(2.0 * h, static_cast<double>(d));
    for (const auto &v : shiftSet(indices, m, h).vectors) {
        b.add(v.shift, v.parity / norm);
    }
    return b.build();
}

template <ExpectationFunction E>
double fdTensor(E &ev, std::span<const double> theta,
                std::span<const std::size_t> indices, double h,
                FdScheme scheme) {
    return applyPlan(ev, theta, fdPlan(indices, theta.size(), h, scheme));
}

} // namespace vqderiv
