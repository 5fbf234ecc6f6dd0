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
 * Multi-parameter shift vectors and weighted evaluation plans.
 */
#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <numbers>
#include <span>
#include <vector>

#include "vqderiv/deriv/evaluator.hpp"
#include "vqderiv/error.hpp"

namespace vqderiv {

struct ShiftVector {
    std::vector<double> shift;
    int parity = 1;
};

struct ShiftSet {
    std::vector<std::size_t> indices;
    std::vector<ShiftVector> vectors;
};

inline void checkIndices(std::span<const std::size_t> indices, std::size_t m) {
    if (indices.empty()) {
        throw Error(ErrorKind::InvalidArgument, "derivative needs >= 1 index");
    }
    for (auto j : indices) {
        if (j >= m) {
            throw Error(ErrorKind::InvalidArgument,
                        "derivative index out of range");
        }
    }
}

/// All 2^d sign choices of sum_i +-step e_{j_i}. Sign choice bit (d-1-i) of
/// the enumeration counter is the sign of index i, so the first vector is
/// all-plus and the last all-minus. Repeated indices accumulate.
inline ShiftSet shiftSet(std::span<const std::size_t> indices, std::size_t m,
                         double step = std::numbers::pi / 2) {
    checkIndices(indices, m);
    const std::size_t d = indices.size();
    ShiftSet set{{indices.begin(), indices.end()}, {}};
    set.vectors.reserve(std::size_t{1} << d);
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
        ShiftVector v{std::vector<double>(m, 0.0), 1};
        for (std::size_t i = 0; i < d; ++i) {
            const bool negative = (mask >> (d - 1 - i)) & 1U;
            v.shift[indices[i]] += negative ? -step : step;
            v.parity *= negative ? -1 : 1;
        }
        set.vectors.push_back(std::move(v));
    }
    return set;
}

/// A linear functional sum_k weight_k * f(theta + shift_k) with distinct
/// shifts.
struct ShiftPlan {
    std::vector<std::vector<double>> shifts;
    std::vector<double> weights;

    [[nodiscard]] std::size_t evaluations() const { return shifts.size(); }
};

/// Merges identical shifts and drops terms whose weights cancel exactly.
class PlanBuilder {
  public:
    void add(std::vector<double> shift, double weight) {
        terms_[std::move(shift)] += weight;
    }

    [[nodiscard]] ShiftPlan build() const {
        ShiftPlan plan;
        for (const auto &[shift, weight] : terms_) {
            if (weight != 0.0) {
                plan.shifts.push_back(shift);
                plan.weights.push_back(weight);
            }
        }
        return plan;
    }

  private:
    std::map<std::vector<double>, double> terms_;
};

template <ExpectationFunction E>
double applyPlan(E &ev, std::span<const double> theta, const ShiftPlan &plan) {
    std::vector<double> point(theta.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < plan.shifts.size(); ++k) {
        for (std::size_t i = 0; i < theta.size(); ++i) {
            point[i] = theta[i] + plan.shifts[k][i];
        }
        acc += plan.weights[k] * ev(std::span<const double>(point));
    }
    return acc;
}

} // namespace vqderiv
