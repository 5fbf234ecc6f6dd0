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
 * Gradient descent, Newton, diagonal Newton and quantum natural gradient.
 *
 * Every method updates theta <- theta - eta A^{-1} grad over the trainable
 * parameters, with A = I (GD), the regularised Hessian (Newton), its
 * regularised diagonal (DiagNewton) or the regularised metric tensor (QNG).
 *
 * Evaluation accounting per step, with k trainable parameters and s = pi/2:
 *   GD          2k                 (+-pi/2 pairs)
 *   DiagNewton  2k + 1             (pairs reused, plus f(theta))
 *   Newton      2k + 1 + 4 C(k,2)  (off-diagonal 4-point shifts)
 *   QNG         2k + k + 4 C(k,2)  (gradient, then overlap probabilities)
 * which gives 4 / 5 / 9 for k = 2. Identical points inside one step share
 * one expectation value; the monitoring cost sample is not counted.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vqderiv/deriv/metric.hpp"
#include "vqderiv/opt/regularize.hpp"
#include "vqderiv/stats/estimator.hpp"

namespace vqderiv {

enum class Method { GD, Newton, DiagNewton, QNG };

inline const char *toString(Method m) {
    switch (m) {
    case Method::GD:
        return "gd";
    case Method::Newton:
        return "newton";
    case Method::DiagNewton:
        return "diag-newton";
    case Method::QNG:
        return "qng";
    }
    return "?";
}

inline Method parseMethod(const std::string &name) {
    if (name == "gd") {
        return Method::GD;
    }
    if (name == "newton") {
        return Method::Newton;
    }
    if (name == "diag-newton") {
        return Method::DiagNewton;
    }
    if (name == "qng") {
        return Method::QNG;
    }
    throw Error(ErrorKind::Parse, "unknown optimizer '" + name + "'");
}

struct OptimizerConfig {
    Method method = Method::GD;
    double eta = 0.4;
    Regularizer regularizer = Regularizer::Clamp;
    double epsilon = 1e-3;
    EstimatorSpec gradient{ParamShift{kHalfPi}, 1};
    /// Shots per expectation value; empty means exact expectation values.
    std::optional<std::uint64_t> shots;
    std::uint64_t seed = 0;
    std::size_t max_iterations = 100;
    /// Trainable parameter indices; empty means all.
    std::vector<std::size_t> trainable;

    void validate(std::size_t m) const {
        if (!(eta >= 0.0)) {
            throw Error(ErrorKind::InvalidArgument, "learning rate must be >= 0");
        }
        if (regularizer != Regularizer::MaxEig && !(epsilon > 0.0)) {
            throw Error(ErrorKind::InvalidArgument, "epsilon must be > 0");
        }
        if (gradient.order != 1) {
            throw Error(ErrorKind::InvalidArgument,
                        "gradient estimator must have order 1");
        }
        gradient.validate();
        if (shots && *shots == 0) {
            throw Error(ErrorKind::InvalidShotCount, "shot count must be >= 1");
        }
        for (auto j : trainable) {
            if (j >= m) {
                throw Error(ErrorKind::InvalidArgument,
                            "trainable index out of range");
            }
        }
    }

    [[nodiscard]] std::vector<std::size_t> activeIndices(std::size_t m) const {
        if (!trainable.empty()) {
            return trainable;
        }
        std::vector<std::size_t> all(m);
        for (std::size_t i = 0; i < m; ++i) {
            all[i] = i;
        }
        return all;
    }
};

/// Derivative information over the trainable parameters for one step.
struct StepDerivatives {
    Eigen::VectorXd gradient;
    /// Regularised curvature matrix (Newton, QNG) or diagonal (DiagNewton,
    /// stored as a diagonal matrix). Unused by GD.
    std::optional<Eigen::MatrixXd> matrix;
};

/// theta' = theta - eta A^{-1} g over `active`; other entries unchanged.
inline std::vector<double> step(const OptimizerConfig &config,
                                std::span<const double> theta,
                                std::span<const std::size_t> active,
                                const StepDerivatives &d) {
    const auto k = static_cast<Eigen::Index>(active.size());
    if (d.gradient.size() != k) {
        throw Error(ErrorKind::InvalidArgument, "gradient size mismatch");
    }
    Eigen::VectorXd direction = d.gradient;
    if (config.method != Method::GD) {
        if (!d.matrix || d.matrix->rows() != k || d.matrix->cols() != k) {
            throw Error(ErrorKind::InvalidArgument,
                        "curvature matrix missing or mis-sized");
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(*d.matrix);
        if (!lu.isInvertible()) {
            throw Error(ErrorKind::SingularMatrix,
                        "regularised matrix is singular");
        }
        direction = lu.solve(d.gradient);
    }
    std::vector<double> out(theta.begin(), theta.end());
    for (Eigen::Index i = 0; i < k; ++i) {
        out[active[static_cast<std::size_t>(i)]] -= config.eta * direction(i);
    }
    return out;
}

struct TraceRecord {
    std::size_t iteration = 0;
    std::vector<double> theta;
    double estimated_cost = 0.0;
    double exact_cost = 0.0;
    std::uint64_t evaluations = 0; ///< cumulative
    std::uint64_t step_evaluations = 0;
    std::vector<double> gradient; ///< estimate used to reach this record
    std::optional<Eigen::MatrixXd> matrix;
};

struct OptimizerTrace {
    OptimizerConfig config;
    std::vector<TraceRecord> records;

    /// Cumulative evaluations at the first record with exact cost below
    /// `threshold`, if any.
    [[nodiscard]] std::optional<std::uint64_t>
    evaluationsToReach(double threshold) const {
        for (const auto &r : records) {
            if (r.exact_cost < threshold) {
                return r.evaluations;
            }
        }
        return std::nullopt;
    }
};

inline constexpr std::uint64_t kMonitorStreamBit = std::uint64_t{1} << 63;
inline constexpr std::uint64_t kMetricStreamBit = std::uint64_t{1} << 62;

inline OptimizerTrace optimize(const OptimizerConfig &config,
                               const Circuit &circuit, const Observable &obs,
                               std::span<const double> theta0) {
    circuit.checkParams(theta0);
    const std::size_t m = circuit.numParams();
    config.validate(m);
    const auto active = config.activeIndices(m);
    const std::size_t k = active.size();

    const Evaluator exact = Evaluator::exact(circuit, obs);
    auto sampledAt = [&](std::uint64_t stream) {
        return config.shots
                   ? exact.sampled(ShotModel{*config.shots, config.seed, stream})
                   : exact.exactView();
    };

    OptimizerTrace trace{config, {}};
    std::vector<double> theta(theta0.begin(), theta0.end());
    std::uint64_t total = 0;
    {
        Evaluator monitor = sampledAt(kMonitorStreamBit);
        TraceRecord r0;
        r0.theta = theta;
        r0.exact_cost = exact.exactValue(theta);
        r0.estimated_cost = monitor(theta);
        trace.records.push_back(std::move(r0));
    }

    for (std::size_t it = 1; it <= config.max_iterations; ++it) {
        Evaluator ev = sampledAt(it);
        EvaluationCache<Evaluator> cache(ev);
        StepDerivatives d;
        d.gradient.resize(static_cast<Eigen::Index>(k));
        for (std::size_t a = 0; a < k; ++a) {
            const std::size_t idx[1] = {active[a]};
            d.gradient(static_cast<Eigen::Index>(a)) = applyPlan(
                cache, theta, estimatorPlan(config.gradient, idx, m));
        }
        std::uint64_t used = 0;
        if (config.method == Method::Newton ||
            config.method == Method::DiagNewton) {
            Eigen::MatrixXd h = Eigen::MatrixXd::Zero(
                static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
            for (std::size_t a = 0; a < k; ++a) {
                for (std::size_t b = a; b < k; ++b) {
                    if (config.method == Method::DiagNewton && a != b) {
                        continue;
                    }
                    const std::size_t idx[2] = {active[a], active[b]};
                    const double v = applyPlan(cache, theta, psPlan(idx, m));
                    h(static_cast<Eigen::Index>(a),
                      static_cast<Eigen::Index>(b)) = v;
                    h(static_cast<Eigen::Index>(b),
                      static_cast<Eigen::Index>(a)) = v;
                }
            }
            if (config.method == Method::DiagNewton) {
                // Regularise the diagonal approximation as a matrix of its
                // own; off-diagonal couplings never enter.
                Eigen::MatrixXd diag = h.diagonal().asDiagonal();
                d.matrix = regularize(diag, config.regularizer, config.epsilon);
            } else {
                d.matrix = regularize(h, config.regularizer, config.epsilon);
            }
        } else if (config.method == Method::QNG) {
            Evaluator ov = Evaluator::overlap(circuit, theta);
            if (config.shots) {
                ov = ov.sampled(ShotModel{*config.shots, config.seed,
                                          kMetricStreamBit | it});
            }
            EvaluationCache<Evaluator> ov_cache(ov);
            Eigen::MatrixXd f = Eigen::MatrixXd::Zero(
                static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
            for (std::size_t a = 0; a < k; ++a) {
                for (std::size_t b = a; b < k; ++b) {
                    const MetricEntryPlan p = metricEntryPlan(
                        active[a], active[b], m, MetricDiag::PiShift);
                    const double v =
                        p.constant + applyPlan(ov_cache, theta, p.plan);
                    f(static_cast<Eigen::Index>(a),
                      static_cast<Eigen::Index>(b)) = v;
                    f(static_cast<Eigen::Index>(b),
                      static_cast<Eigen::Index>(a)) = v;
                }
            }
            used += ov_cache.distinctEvaluations();
            d.matrix = regularize(f, config.regularizer, config.epsilon);
        }
        used += cache.distinctEvaluations();
        total += used;

        theta = step(config, theta, active, d);

        Evaluator monitor = sampledAt(kMonitorStreamBit | it);
        TraceRecord r;
        r.iteration = it;
        r.theta = theta;
        r.exact_cost = exact.exactValue(theta);
        r.estimated_cost = monitor(theta);
        r.evaluations = total;
        r.step_evaluations = used;
        r.gradient.assign(d.gradient.data(), d.gradient.data() + d.gradient.size());
        r.matrix = d.matrix;
        trace.records.push_back(std::move(r));
    }
    return trace;
}

} // namespace vqderiv
