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
 * Derivative estimators built from finite-shot expectation values.
 */
#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <variant>
#include <vector>

#include "vqderiv/deriv/finite_diff.hpp"
#include "vqderiv/deriv/tensor.hpp"

namespace vqderiv {

struct ParamShift {
    double s = kHalfPi;
};

/// lambda * ParamShift(s). A non-empty `per_entry` overrides `lambda` entry
/// by entry (canonical entry order).
struct ScaledParamShift {
    double s = kHalfPi;
    double lambda = 1.0;
    std::vector<double> per_entry;
};

struct CentralDiff {
    double h = 1e-2;
};

struct ForwardDiff {
    double h = 1e-2;
};

using EstimatorKind =
    std::variant<ParamShift, ScaledParamShift, CentralDiff, ForwardDiff>;

struct EstimatorSpec {
    EstimatorKind kind = ParamShift{};
    std::size_t order = 1;

    void validate() const {
        if (order != 1 && order != 2) {
            throw Error(ErrorKind::InvalidArgument,
                        "estimator order must be 1 or 2");
        }
        auto check_s = [](double s) {
            if (std::abs(std::sin(s)) < 1e-12) {
                throw Error(ErrorKind::SingularShift,
                            "shift is a multiple of pi");
            }
        };
        std::visit(
            [&](const auto &k) {
                using T = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<T, ParamShift>) {
                    check_s(k.s);
                } else if constexpr (std::is_same_v<T, ScaledParamShift>) {
                    check_s(k.s);
                    auto check_l = [](double l) {
                        if (!(l >= 0.0 && l <= 1.0)) {
                            throw Error(ErrorKind::InvalidArgument,
                                        "lambda must lie in [0, 1]");
                        }
                    };
                    check_l(k.lambda);
                    for (double l : k.per_entry) {
                        check_l(l);
                    }
                } else {
                    if (!(k.h > 0.0)) {
                        throw Error(ErrorKind::InvalidStep,
                                    "step h must be > 0");
                    }
                    if constexpr (std::is_same_v<T, ForwardDiff>) {
                        if (order != 1) {
                            throw Error(ErrorKind::UnsupportedScheme,
                                        "forward differences need order 1");
                        }
                    }
                }
            },
            kind);
    }

    [[nodiscard]] std::string name() const {
        return std::visit(
            [](const auto &k) -> std::string {
                using T = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<T, ParamShift>) {
                    return "param-shift";
                } else if constexpr (std::is_same_v<T, ScaledParamShift>) {
                    return "scaled-param-shift";
                } else if constexpr (std::is_same_v<T, CentralDiff>) {
                    return "central-diff";
                } else {
                    return "forward-diff";
                }
            },
            kind);
    }

    /// s for shift rules, h for finite differences.
    [[nodiscard]] double step() const {
        return std::visit(
            [](const auto &k) -> double {
                using T = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<T, ParamShift> ||
                              std::is_same_v<T, ScaledParamShift>) {
                    return k.s;
                } else {
                    return k.h;
                }
            },
            kind);
    }
};

/// Canonical entries of an order-d estimate and how many ordered index
/// tuples each one stands for (used for the full-tensor total error).
struct EntryLayout {
    std::vector<std::vector<std::size_t>> keys;
    std::vector<double> multiplicity;
};

inline EntryLayout entryLayout(std::size_t m, std::size_t order) {
    EntryLayout layout{multisets(m, order), {}};
    for (const auto &k : layout.keys) {
        // Number of distinct permutations of the multiset.
        double perms = std::tgamma(static_cast<double>(order) + 1.0);
        std::size_t run = 1;
        for (std::size_t i = 1; i <= k.size(); ++i) {
            if (i < k.size() && k[i] == k[i - 1]) {
                ++run;
            } else {
                perms /= std::tgamma(static_cast<double>(run) + 1.0);
                run = 1;
            }
        }
        layout.multiplicity.push_back(perms);
    }
    return layout;
}

/// Weighted evaluation plan of `spec` for one tensor entry.
inline ShiftPlan estimatorPlan(const EstimatorSpec &spec,
                               std::span<const std::size_t> indices,
                               std::size_t m, std::size_t entry = 0) {
    return std::visit(
        [&](const auto &k) -> ShiftPlan {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, ParamShift>) {
                return psPlan(indices, m, k.s);
            } else if constexpr (std::is_same_v<T, ScaledParamShift>) {
                ShiftPlan p = psPlan(indices, m, k.s);
                const double l =
                    k.per_entry.empty() ? k.lambda : k.per_entry.at(entry);
                for (auto &w : p.weights) {
                    w *= l;
                }
                return p;
            } else if constexpr (std::is_same_v<T, CentralDiff>) {
                return fdPlan(indices, m, k.h, FdScheme::Central);
            } else {
                return fdPlan(indices, m, k.h, FdScheme::Forward);
            }
        },
        spec.kind);
}

/// Plans of every canonical entry, in canonical order.
inline std::vector<ShiftPlan> estimatorPlans(const EstimatorSpec &spec,
                                             std::size_t m) {
    spec.validate();
    const auto keys = multisets(m, spec.order);
    std::vector<ShiftPlan> plans;
    plans.reserve(keys.size());
    for (std::size_t e = 0; e < keys.size(); ++e) {
        plans.push_back(estimatorPlan(spec, keys[e], m, e));
    }
    return plans;
}

/// One realisation of the estimator for every entry. Identical points
/// inside the estimate share one sample; distinct points get independent
/// samples.
template <ExpectationFunction E>
std::vector<double> estimateWithPlans(std::span<const ShiftPlan> plans, E &ev,
                                      std::span<const double> theta,
                                      std::size_t *evaluations = nullptr) {
    EvaluationCache<E> cache(ev);
    std::vector<double> out;
    out.reserve(plans.size());
    for (const auto &plan : plans) {
        out.push_back(applyPlan(cache, theta, plan));
    }
    if (evaluations != nullptr) {
        *evaluations = cache.distinctEvaluations();
    }
    return out;
}

template <ExpectationFunction E>
std::vector<double> estimateEntries(const EstimatorSpec &spec, E &ev,
                                    std::span<const double> theta,
                                    std::size_t *evaluations = nullptr) {
    const auto plans = estimatorPlans(spec, theta.size());
    return estimateWithPlans(std::span<const ShiftPlan>(plans), ev, theta,
                             evaluations);
}

/// Sampled gradient estimate with `shots` (order-1 specs only).
inline std::vector<double> estimateGradient(const EstimatorSpec &spec,
                                            const Circuit &circuit,
                                            std::span<const double> theta,
                                            const Observable &obs,
                                            const ShotModel &shots) {
    if (spec.order != 1) {
        throw Error(ErrorKind::InvalidArgument,
                    "estimateGradient needs an order-1 spec");
    }
    Evaluator ev = Evaluator::exact(circuit, obs).sampled(shots);
    return estimateEntries(spec, ev, theta);
}

} // namespace vqderiv
