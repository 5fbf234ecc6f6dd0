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
 * Closed-form error model of gradient estimators.
 *
 * All formulas assume the single-shot variance is the same at every
 * shifted point (sigma0^2(theta + x) + sigma0^2(theta - x) ~ 2 sigma0^2).
 * assumption1Spread() quantifies how far a circuit is from that regime.
 */
#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "vqderiv/stats/estimator.hpp"

namespace vqderiv {

struct TheoryInputs {
    double sigma0_sq = 0.0;
    std::uint64_t shots = 1;
    double g = 0.0;  ///< first derivative g_j
    double f2 = 0.0; ///< second derivative g_jj
    double f3 = 0.0; ///< third derivative g_jjj

    void validate() const {
        if (sigma0_sq < 0.0) {
            throw Error(ErrorKind::InvalidArgument, "sigma0^2 must be >= 0");
        }
        if (shots < 1) {
            throw Error(ErrorKind::InvalidShotCount, "shot count must be >= 1");
        }
    }
};

/// Per-element MSE of an order-1 estimator.
///
///   param-shift(s):         sigma0^2 / (2 N sin^2 s)
///   scaled(lambda, s):      lambda^2 Var_s + (1 - lambda)^2 g^2
///   central(h):             sigma0^2 / (2 N h^2) + f3^2 h^4 / 36
///   forward(h):             2 sigma0^2 / (N h^2) + f2^2 h^2 / 4
inline double theoryMse(const EstimatorSpec &spec, const TheoryInputs &in) {
    spec.validate();
    in.validate();
    if (spec.order != 1) {
        throw Error(ErrorKind::UnsupportedScheme,
                    "closed-form MSE is available for gradients only");
    }
    const double n = static_cast<double>(in.shots);
    return std::visit(
        [&](const auto &k) -> double {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, ParamShift>) {
                const double sn = std::sin(k.s);
                return in.sigma0_sq / (2.0 * n * sn * sn);
            } else if constexpr (std::is_same_v<T, ScaledParamShift>) {
                const double sn = std::sin(k.s);
                const double var = in.sigma0_sq / (2.0 * n * sn * sn);
                const double l = k.lambda;
                return l * l * var + (1.0 - l) * (1.0 - l) * in.g * in.g;
            } else if constexpr (std::is_same_v<T, CentralDiff>) {
                const double h2 = k.h * k.h;
                return in.sigma0_sq / (2.0 * n * h2) +
                       in.f3 * in.f3 * h2 * h2 / 36.0;
            } else {
                const double h2 = k.h * k.h;
                return 2.0 * in.sigma0_sq / (n * h2) + in.f2 * in.f2 * h2 / 4.0;
            }
        },
        spec.kind);
}

enum class StepScheme { Central, Forward, ParamShift };

/// Step minimising the per-element closed-form MSE.
inline double optimalStep(StepScheme scheme, const TheoryInputs &in) {
    in.validate();
    const double n = static_cast<double>(in.shots);
    switch (scheme) {
    case StepScheme::ParamShift:
        return kHalfPi;
    case StepScheme::Central:
        if (in.f3 == 0.0) {
            throw Error(ErrorKind::UndefinedOptimum,
                        "third derivative is zero");
        }
        return std::pow(9.0 * in.sigma0_sq / (in.f3 * in.f3 * n), 1.0 / 6.0);
    case StepScheme::Forward:
        if (in.f2 == 0.0) {
            throw Error(ErrorKind::UndefinedOptimum,
                        "second derivative is zero");
        }
        return std::pow(8.0 * in.sigma0_sq / (in.f2 * in.f2 * n), 0.25);
    }
    return kHalfPi;
}

/// Central-difference step minimising the total gradient MSE
/// sum_j [sigma0^2 / (2 N h^2) + f3_j^2 h^4 / 36] with a common sigma0^2.
inline double optimalTotalCentralStep(double sigma0_sq, std::uint64_t shots,
                                      std::span<const double> f3) {
    double sum_sq = 0.0;
    for (double v : f3) {
        sum_sq += v * v;
    }
    if (sum_sq == 0.0) {
        throw Error(ErrorKind::UndefinedOptimum, "all third derivatives zero");
    }
    const double m = static_cast<double>(f3.size());
    return std::pow(
        9.0 * m * sigma0_sq / (static_cast<double>(shots) * sum_sq), 1.0 / 6.0);
}

/// lambda* = g^2 / (g^2 + Var), the scale minimising the scaled-estimator MSE.
inline double lambdaStar(double g, double var) {
    if (var < 0.0) {
        throw Error(ErrorKind::InvalidArgument, "variance must be >= 0");
    }
    if (g == 0.0 && var == 0.0) {
        throw Error(ErrorKind::UndefinedOptimum,
                    "lambda* undefined for g = 0 and Var = 0");
    }
    return g * g / (g * g + var);
}

/// Both closed forms of the MSE at lambda*: lambda* Var and (1 - lambda*) g^2.
inline std::pair<double, double> lambdaStarMse(double g, double var) {
    const double l = lambdaStar(g, var);
    return {l * var, (1.0 - l) * g * g};
}

/// g_jjj from the exact order-3 shift rule.
inline double thirdDerivative(const Circuit &circuit,
                              std::span<const double> theta,
                              const Observable &obs, std::size_t j) {
    Evaluator ev = Evaluator::exact(circuit, obs);
    const std::size_t idx[3] = {j, j, j};
    return psTensor(ev, theta, std::span<const std::size_t>(idx));
}

/// Closed-form inputs for parameter j at theta from the exact simulator.
inline TheoryInputs theoryInputs(const Evaluator &exact,
                                 std::span<const double> theta, std::size_t j,
                                 std::uint64_t shots) {
    Evaluator ev = exact.exactView();
    const std::size_t i1[1] = {j};
    const std::size_t i2[2] = {j, j};
    const std::size_t i3[3] = {j, j, j};
    TheoryInputs in;
    in.sigma0_sq = ev.singleShotVarianceAt(theta);
    in.shots = shots;
    in.g = psTensor(ev, theta, std::span<const std::size_t>(i1));
    in.f2 = psTensor(ev, theta, std::span<const std::size_t>(i2));
    in.f3 = psTensor(ev, theta, std::span<const std::size_t>(i3));
    return in;
}

/// max over j and x of |sigma0^2(theta + x e_j) + sigma0^2(theta - x e_j)
/// - 2 sigma0^2(theta)| / (2 sigma0^2(theta)).
inline double assumption1Spread(const Evaluator &exact,
                                std::span<const double> theta,
                                std::span<const double> xs) {
    const double base = 2.0 * exact.singleShotVarianceAt(theta);
    double worst = 0.0;
    std::vector<double> p(theta.begin(), theta.end());
    for (std::size_t j = 0; j < theta.size(); ++j) {
        for (double x : xs) {
            p[j] = theta[j] + x;
            const double plus = exact.singleShotVarianceAt(p);
            p[j] = theta[j] - x;
            const double minus = exact.singleShotVarianceAt(p);
            p[j] = theta[j];
            const double dev = std::abs(plus + minus - base);
            worst = std::max(worst, base > 0.0 ? dev / base
                                               : (dev > 0.0 ? INFINITY : 0.0));
        }
    }
    return worst;
}

inline constexpr double kAssumption1Threshold = 0.10;

} // namespace vqderiv
