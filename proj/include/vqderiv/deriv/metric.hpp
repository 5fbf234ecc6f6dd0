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
 * Fubini-Study metric tensor from overlap (survival) probabilities.
 *
 * F is -1/2 times the Hessian of |<psi(theta')|psi(theta)>|^2 in theta at
 * theta' = theta, so the pi/2 Hessian shift rule applies with the overlap
 * as the expectation value.
 */
#pragma once

#include <numbers>
#include <optional>

#include "vqderiv/deriv/tensor.hpp"

namespace vqderiv {

enum class MetricDiag {
    PiShift,     ///< F_jj = [1 - |<psi|psi(theta + pi e_j)>|^2] / 4  (default)
    HalfPiShift, ///< F_jj = [1 - |<psi|psi(theta + pi/2 e_j)>|^2] / 2
};

/// Evaluation plan for one metric entry, expressed on the overlap function.
/// The returned plan evaluates sum_k w_k ov(theta + k); the constant term
/// (the self-overlap 1) is returned separately.
struct MetricEntryPlan {
    ShiftPlan plan;
    double constant = 0.0;
};

inline MetricEntryPlan metricEntryPlan(std::size_t j1, std::size_t j2,
                                       std::size_t m, MetricDiag diag) {
    if (j1 != j2) {
        const std::size_t idx[2] = {j1, j2};
        ShiftPlan p = psPlan(idx, m, kHalfPi);
        for (auto &w : p.weights) {
            w *= -0.5;
        }
        return {std::move(p), 0.0};
    }
    if (j1 >= m) {
        throw Error(ErrorKind::InvalidArgument, "index out of range");
    }
    std::vector<double> shift(m, 0.0);
    if (diag == MetricDiag::PiShift) {
        shift[j1] = std::numbers::pi;
        return {ShiftPlan{{shift}, {-0.25}}, 0.25};
    }
    shift[j1] = kHalfPi;
    return {ShiftPlan{{shift}, {-0.5}}, 0.5};
}

/// Metric tensor with exact overlaps, or with overlaps estimated from the
/// all-zeros frequency of `shots` when given.
inline DerivativeTensor metricTensor(const Circuit &circuit,
                                     std::span<const double> theta,
                                     std::optional<ShotModel> shots = {},
                                     MetricDiag diag = MetricDiag::PiShift,
                                     std::size_t *evaluations = nullptr) {
    circuit.checkParams(theta);
    Evaluator ov = Evaluator::overlap(circuit, theta);
    if (shots) {
        ov = ov.sampled(*shots);
    }
    const std::size_t m = theta.size();
    DerivativeTensor t(2, m);
    EvaluationCache<Evaluator> cache(ov);
    for (const auto &key : t.keys()) {
        const MetricEntryPlan p = metricEntryPlan(key[0], key[1], m, diag);
        t.at(key) = p.constant + applyPlan(cache, theta, p.plan);
    }
    if (evaluations != nullptr) {
        *evaluations = cache.distinctEvaluations();
    }
    return t;
}

} // namespace vqderiv
