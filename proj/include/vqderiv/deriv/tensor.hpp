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
 * Symmetric derivative tensors stored once per sorted index multiset.
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "vqderiv/deriv/param_shift.hpp"

namespace vqderiv {

/// Non-decreasing index tuples of length d over [0, m), lexicographic. This
/// is the canonical entry ordering used for tensor builds and for stream-id
/// assignment in sampled builds.
inline std::vector<std::vector<std::size_t>> multisets(std::size_t m,
                                                       std::size_t d) {
    std::vector<std::vector<std::size_t>> out;
    if (m == 0 || d == 0) {
        return out;
    }
    std::vector<std::size_t> cur(d, 0);
    while (true) {
        out.push_back(cur);
        std::size_t pos = d;
        while (pos > 0 && cur[pos - 1] == m - 1) {
            --pos;
        }
        if (pos == 0) {
            break;
        }
        const std::size_t v = cur[pos - 1] + 1;
        for (std::size_t i = pos - 1; i < d; ++i) {
            cur[i] = v;
        }
    }
    return out;
}

class DerivativeTensor {
  public:
    DerivativeTensor(std::size_t order, std::size_t num_params)
        : order_(order), m_(num_params), keys_(multisets(num_params, order)),
          values_(keys_.size(), 0.0) {
        for (std::size_t i = 0; i < keys_.size(); ++i) {
            position_.emplace(keys_[i], i);
        }
    }

    [[nodiscard]] std::size_t order() const { return order_; }
    [[nodiscard]] std::size_t numParams() const { return m_; }
    [[nodiscard]] std::size_t numEntries() const { return keys_.size(); }
    [[nodiscard]] const std::vector<std::vector<std::size_t>> &keys() const {
        return keys_;
    }
    [[nodiscard]] std::span<const double> values() const { return values_; }

    [[nodiscard]] double operator()(std::span<const std::size_t> idx) const {
        return values_[locate(idx)];
    }
    double &at(std::span<const std::size_t> idx) { return values_[locate(idx)]; }

    double operator()(std::size_t i, std::size_t j) const {
        const std::size_t idx[2] = {i, j};
        return (*this)(std::span<const std::size_t>(idx));
    }

    /// Row-major m x m matrix (order 2 only).
    [[nodiscard]] std::vector<double> toMatrix() const {
        if (order_ != 2) {
            throw Error(ErrorKind::InvalidArgument, "toMatrix needs order 2");
        }
        std::vector<double> out(m_ * m_);
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j < m_; ++j) {
                out[i * m_ + j] = (*this)(i, j);
            }
        }
        return out;
    }

  private:
    [[nodiscard]] std::size_t locate(std::span<const std::size_t> idx) const {
        if (idx.size() != order_) {
            throw Error(ErrorKind::InvalidArgument, "wrong number of indices");
        }
        std::vector<std::size_t> key(idx.begin(), idx.end());
        std::sort(key.begin(), key.end());
        auto it = position_.find(key);
        if (it == position_.end()) {
            throw Error(ErrorKind::InvalidArgument, "index out of range");
        }
        return it->second;
    }

    std::size_t order_;
    std::size_t m_;
    std::vector<std::vector<std::size_t>> keys_;
    std::vector<double> values_;
    std::map<std::vector<std::size_t>, std::size_t> position_;
};

/// Fills every entry of an order-d tensor from `entry_plan(indices)`,
/// sharing evaluations at identical points across entries.
template <ExpectationFunction E, class PlanFn>
DerivativeTensor buildTensor(E &ev, std::span<const double> theta,
                             std::size_t order, PlanFn &&entry_plan,
                             std::size_t *evaluations = nullptr) {
    DerivativeTensor t(order, theta.size());
    EvaluationCache<E> cache(ev);
    for (const auto &key : t.keys()) {
        t.at(key) = applyPlan(cache, theta, entry_plan(std::span(key)));
    }
    if (evaluations != nullptr) {
        *evaluations = cache.distinctEvaluations();
    }
    return t;
}

/// Parameter-shift derivative tensor of the given order.
template <ExpectationFunction E>
DerivativeTensor psDerivativeTensor(E &ev, std::span<const double> theta,
                                    std::size_t order, double s = kHalfPi,
                                    std::size_t *evaluations = nullptr) {
    const std::size_t m = theta.size();
    return buildTensor(
        ev, theta, order,
        [&](std::span<const std::size_t> idx) { return psPlan(idx, m, s); },
        evaluations);
}

} // namespace vqderiv
