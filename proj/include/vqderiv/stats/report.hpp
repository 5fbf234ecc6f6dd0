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
 * Empirical bias / variance / MSE of an estimator over repeated finite-shot
 * realisations, against the exact parameter-shift tensor as ground truth.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "vqderiv/stats/theory.hpp"

namespace vqderiv {

inline constexpr std::size_t kErrorBatches = 10;

struct EstimatorReport {
    EstimatorSpec spec;
    std::uint64_t shots = 0;
    std::size_t repetitions = 0;
    std::uint64_t seed = 0;
    std::uint64_t stream_base = 0;

    EntryLayout layout;
    std::vector<double> truth;
    std::vector<double> mean;
    std::vector<double> bias;
    std::vector<double> variance; ///< 1/R normalisation
    std::vector<double> mse;

    double total_mse = 0.0;
    double total_variance = 0.0;
    double total_bias_sq = 0.0;
    /// Standard error of total_mse from kErrorBatches batch means.
    double total_mse_stderr = 0.0;

    /// Exact finite-shot MSE: exact bias plus independent-sample variance
    /// sum_k w_k^2 sigma0^2(x_k) / N.
    double predicted_mse = 0.0;
    /// Closed-form MSE (order 1 only, NaN otherwise).
    double theory_mse = std::numeric_limits<double>::quiet_NaN();
    double assumption1_spread = 0.0;
    bool assumption1_ok = true;

    /// Bound on |total_mse - (total_variance + total_bias_sq)|.
    double decomposition_tolerance = 0.0;

    [[nodiscard]] double decompositionGap() const {
        return std::abs(total_mse - (total_variance + total_bias_sq));
    }
};

/// Exact-simulator tensor entries (parameter-shift, s = pi/2) used as truth.
inline std::vector<double> exactEntries(const Evaluator &exact,
                                        std::span<const double> theta,
                                        std::size_t order) {
    Evaluator ev = exact.exactView();
    return estimateEntries(EstimatorSpec{ParamShift{kHalfPi}, order}, ev,
                           theta);
}

/// Exact variance of one realisation of each entry's plan.
inline std::vector<double> exactEntryVariance(const EstimatorSpec &spec,
                                              const Evaluator &exact,
                                              std::span<const double> theta,
                                              std::uint64_t shots) {
    const auto plans = estimatorPlans(spec, theta.size());
    std::vector<double> out;
    std::vector<double> p(theta.size());
    for (const auto &plan : plans) {
        double var = 0.0;
        for (std::size_t k = 0; k < plan.shifts.size(); ++k) {
            for (std::size_t i = 0; i < theta.size(); ++i) {
                p[i] = theta[i] + plan.shifts[k][i];
            }
            var += plan.weights[k] * plan.weights[k] *
                   exact.singleShotVarianceAt(p);
        }
        out.push_back(var / static_cast<double>(shots));
    }
    return out;
}

/// Per-entry lambda* = g^2 / (g^2 + Var) for ParamShift(s) with exact g
/// and exact Var. Entries with g = Var = 0 get lambda* = 1.
inline std::vector<double> lambdaStarEntries(const Evaluator &exact,
                                             std::span<const double> theta,
                                             double s, std::uint64_t shots,
                                             std::size_t order = 1) {
    const auto truth = exactEntries(exact, theta, order);
    const auto var = exactEntryVariance(EstimatorSpec{ParamShift{s}, order},
                                        exact, theta, shots);
    std::vector<double> out;
    for (std::size_t e = 0; e < truth.size(); ++e) {
        out.push_back(truth[e] == 0.0 && var[e] == 0.0
                          ? 1.0
                          : lambdaStar(truth[e], var[e]));
    }
    return out;
}

/// Scaled parameter-shift with s = pi/2 and per-entry lambda*.
inline EstimatorSpec optimalScaledSpec(const Evaluator &exact,
                                       std::span<const double> theta,
                                       std::uint64_t shots, std::size_t order) {
    EstimatorSpec spec{ScaledParamShift{kHalfPi, 1.0, {}}, order};
    std::get<ScaledParamShift>(spec.kind).per_entry =
        lambdaStarEntries(exact, theta, kHalfPi, shots, order);
    return spec;
}

inline EstimatorReport empiricalReport(const EstimatorSpec &spec,
                                       const Evaluator &exact,
                                       std::span<const double> theta,
                                       std::uint64_t shots,
                                       std::size_t repetitions,
                                       std::uint64_t seed,
                                       std::uint64_t stream_base = 0) {
    spec.validate();
    if (repetitions < 2) {
        throw Error(ErrorKind::InvalidArgument, "need >= 2 repetitions");
    }
    if (shots < 1) {
        throw Error(ErrorKind::InvalidShotCount, "shot count must be >= 1");
    }
    const std::size_t m = theta.size();
    EstimatorReport rep;
    rep.spec = spec;
    rep.shots = shots;
    rep.repetitions = repetitions;
    rep.seed = seed;
    rep.stream_base = stream_base;
    rep.layout = entryLayout(m, spec.order);
    rep.truth = exactEntries(exact, theta, spec.order);

    const auto plans = estimatorPlans(spec, m);
    const std::size_t n_entries = plans.size();
    std::vector<double> samples(repetitions * n_entries);
    for (std::size_t r = 0; r < repetitions; ++r) {
        Evaluator ev = exact.sampled(ShotModel{shots, seed, stream_base + r});
        const auto est =
            estimateWithPlans(std::span<const ShiftPlan>(plans), ev, theta);
        std::copy(est.begin(), est.end(), samples.begin() + r * n_entries);
    }

    const double inv_r = 1.0 / static_cast<double>(repetitions);
    rep.mean.assign(n_entries, 0.0);
    rep.variance.assign(n_entries, 0.0);
    rep.mse.assign(n_entries, 0.0);
    rep.bias.assign(n_entries, 0.0);
    for (std::size_t e = 0; e < n_entries; ++e) {
        double sum = 0.0;
        for (std::size_t r = 0; r < repetitions; ++r) {
            sum += samples[r * n_entries + e];
        }
        const double mean = sum * inv_r;
        double var = 0.0;
        double mse = 0.0;
        for (std::size_t r = 0; r < repetitions; ++r) {
            const double x = samples[r * n_entries + e];
            var += (x - mean) * (x - mean);
            mse += (x - rep.truth[e]) * (x - rep.truth[e]);
        }
        rep.mean[e] = mean;
        rep.bias[e] = mean - rep.truth[e];
        rep.variance[e] = var * inv_r;
        rep.mse[e] = mse * inv_r;
        const double w = rep.layout.multiplicity[e];
        rep.total_mse += w * rep.mse[e];
        rep.total_variance += w * rep.variance[e];
        rep.total_bias_sq += w * rep.bias[e] * rep.bias[e];
    }

    const std::size_t batches = std::min(kErrorBatches, repetitions);
    std::vector<double> batch_mse(batches, 0.0);
    std::vector<std::size_t> batch_count(batches, 0);
    for (std::size_t r = 0; r < repetitions; ++r) {
        const std::size_t b = r * batches / repetitions;
        double err = 0.0;
        for (std::size_t e = 0; e < n_entries; ++e) {
            const double d = samples[r * n_entries + e] - rep.truth[e];
            err += rep.layout.multiplicity[e] * d * d;
        }
        batch_mse[b] += err;
        ++batch_count[b];
    }
    double bmean = 0.0;
    for (std::size_t b = 0; b < batches; ++b) {
        batch_mse[b] /= static_cast<double>(batch_count[b]);
        bmean += batch_mse[b];
    }
    bmean /= static_cast<double>(batches);
    double bvar = 0.0;
    for (double v : batch_mse) {
        bvar += (v - bmean) * (v - bmean);
    }
    bvar /= static_cast<double>(batches > 1 ? batches - 1 : 1);
    rep.total_mse_stderr = std::sqrt(bvar / static_cast<double>(batches));

    // Exact finite-shot prediction.
    const auto var_exact = exactEntryVariance(spec, exact, theta, shots);
    Evaluator ex = exact.exactView();
    for (std::size_t e = 0; e < n_entries; ++e) {
        const double mean_exact = applyPlan(ex, theta, plans[e]);
        const double b = mean_exact - rep.truth[e];
        rep.predicted_mse += rep.layout.multiplicity[e] * (var_exact[e] + b * b);
    }

    if (spec.order == 1) {
        double total = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            EstimatorSpec entry_spec = spec;
            if (auto *sc = std::get_if<ScaledParamShift>(&entry_spec.kind);
                sc != nullptr && !sc->per_entry.empty()) {
                sc->lambda = sc->per_entry[j];
                sc->per_entry.clear();
            }
            total +=
                theoryMse(entry_spec, theoryInputs(exact, theta, j, shots));
        }
        rep.theory_mse = total;
        const double xs[1] = {spec.step()};
        rep.assumption1_spread =
            assumption1Spread(exact, theta, std::span<const double>(xs));
        rep.assumption1_ok = rep.assumption1_spread <= kAssumption1Threshold;
    }

    // Population normalisation makes the decomposition an identity; the
    // tolerance bounds accumulated rounding only.
    rep.decomposition_tolerance =
        1e-12 * std::max(1.0, rep.total_mse) *
        static_cast<double>(n_entries);
    return rep;
}

} // namespace vqderiv
