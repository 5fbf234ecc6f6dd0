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
#include <cmath>
#include <numbers>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "vqderiv/bench/reference_circuit.hpp"
#include "vqderiv/stats/report.hpp"

using namespace vqderiv;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kPi = std::numbers::pi;

const std::vector<double> &refTheta() {
    static const std::vector<double> t(bench::kRefTheta.begin(), bench::kRefTheta.end());
    return t;
}

Evaluator refExact() {
    return Evaluator::exact(bench::referenceCircuit(), bench::referenceObservable());
}

Circuit rx() { return Circuit(1, {Rotation{PauliString::parse("X"), 0}}); }

} // namespace

TEST_CASE("Estimator specs validate their fields", "[stats][spec]") {
    CHECK_NOTHROW(EstimatorSpec{ParamShift{0.3}, 2}.validate());
    CHECK_THROWS_AS((EstimatorSpec{ParamShift{kPi}, 1}.validate()), Error);
    CHECK_THROWS_AS((EstimatorSpec{ScaledParamShift{kPi / 2, 1.5, {}}, 1}.validate()),
                    Error);
    CHECK_THROWS_AS((EstimatorSpec{CentralDiff{0.0}, 1}.validate()), Error);
    CHECK_THROWS_AS((EstimatorSpec{ForwardDiff{0.1}, 2}.validate()), Error);
    CHECK_THROWS_AS((EstimatorSpec{ParamShift{1.0}, 3}.validate()), Error);
    CHECK(EstimatorSpec{ForwardDiff{0.1}, 1}.name() == "forward-diff");
    CHECK(EstimatorSpec{CentralDiff{0.2}, 1}.step() == 0.2);
}

TEST_CASE("Sampled gradient estimates", "[stats][gradient]") {
    const Circuit c = bench::referenceCircuit();
    const Observable obs = bench::referenceObservable();
    const auto exact = exactEntries(refExact(), refTheta(), 1);

    const auto g = estimateGradient({ParamShift{kPi / 2}, 1}, c, refTheta(), obs,
                                    ShotModel{10000000, 3, 0});
    for (std::size_t j = 0; j < 5; ++j) {
        CHECK_THAT(g[j], WithinAbs(exact[j], 2e-3));
    }

    for (std::uint64_t seed : {1ULL, 2ULL}) {
        const auto zero = estimateGradient({ScaledParamShift{kPi / 2, 0.0, {}}, 1}, c,
                                           refTheta(), obs, ShotModel{100, seed, 0});
        for (double x : zero) {
            CHECK(x == 0.0);
        }
    }

    // Same sample streams: central difference with h equals sin(h) times
    // the shift rule with s = h.
    for (std::uint64_t stream : {0ULL, 5ULL, 11ULL}) {
        const ShotModel sm{1000, 17, stream};
        const auto cd = estimateGradient({CentralDiff{1.0}, 1}, c, refTheta(), obs, sm);
        const auto ps = estimateGradient({ParamShift{1.0}, 1}, c, refTheta(), obs, sm);
        for (std::size_t j = 0; j < 5; ++j) {
            CHECK_THAT(cd[j], WithinAbs(std::sin(1.0) * ps[j], 1e-12));
        }
    }

    CHECK_THROWS_AS(estimateGradient({ParamShift{kPi / 2}, 2}, c, refTheta(), obs,
                                     ShotModel{10, 1, 0}),
                    Error);
}

TEST_CASE("Empirical reports", "[stats][report]") {
    const Evaluator ex = refExact();
    const auto ps = empiricalReport({ParamShift{kPi / 2}, 1}, ex, refTheta(), 1000, 1000, 7);
    CHECK_THAT(ps.total_mse, WithinRel(ps.predicted_mse, 0.25));
    CHECK(ps.repetitions == 1000);
    CHECK(ps.truth.size() == 5);

    // Exact variance at the shifted points, summed over elements.
    double predicted = 0.0;
    for (std::size_t j = 0; j < 5; ++j) {
        auto p = refTheta();
        p[j] += kPi / 2;
        const double sp = ex.singleShotVarianceAt(p);
        p[j] -= kPi;
        const double sm = ex.singleShotVarianceAt(p);
        predicted += (sp + sm) / (4.0 * 1000);
    }
    CHECK_THAT(ps.predicted_mse, WithinRel(predicted, 1e-12));

    const auto cd = empiricalReport({CentralDiff{1e-3}, 1}, ex, refTheta(), 1000, 1000, 7);
    const double sigma0_sq = ex.singleShotVarianceAt(refTheta());
    CHECK_THAT(cd.total_mse / 5, WithinRel(sigma0_sq / (2 * 1000 * 1e-6), 0.2));
    CHECK(cd.total_mse / ps.total_mse > 1e5);

    const auto scaled = empiricalReport(
        optimalScaledSpec(ex, refTheta(), 1000, 1), ex, refTheta(), 1000, 1000, 7);
    CHECK(scaled.total_mse <= ps.total_mse + 2 * std::hypot(scaled.total_mse_stderr,
                                                           ps.total_mse_stderr));

    CHECK_THROWS_AS(empiricalReport({ParamShift{kPi / 2}, 1}, ex, refTheta(), 1000, 1, 7),
                    Error);

    // Deterministic per seed.
    const auto again =
        empiricalReport({ParamShift{kPi / 2}, 1}, ex, refTheta(), 1000, 1000, 7);
    CHECK(again.total_mse == ps.total_mse);
    CHECK(again.mean == ps.mean);
}

TEST_CASE("Bias-variance decomposition holds for every estimator", "[stats][report]") {
    const Evaluator ex = refExact();
    const std::vector<EstimatorSpec> specs{
        {ParamShift{kPi / 2}, 1},  {ParamShift{0.4}, 1},     {CentralDiff{0.3}, 1},
        {ForwardDiff{0.2}, 1},     {ScaledParamShift{kPi / 2, 0.6, {}}, 1},
        {ParamShift{kPi / 2}, 2},  {ParamShift{0.9}, 2},     {CentralDiff{0.5}, 2}};
    for (const auto &spec : specs) {
        const auto r = empiricalReport(spec, ex, refTheta(), 500, 200, 3);
        CAPTURE(spec.name(), spec.order);
        CHECK(r.decompositionGap() <= r.decomposition_tolerance);
        for (std::size_t e = 0; e < r.mse.size(); ++e) {
            CHECK_THAT(r.mse[e], WithinAbs(r.variance[e] + r.bias[e] * r.bias[e],
                                           1e-12 * std::max(1.0, r.mse[e])));
        }
        if (spec.order == 2) {
            CHECK(r.mse.size() == 15);
            CHECK(std::isnan(r.theory_mse));
        }
    }
}

TEST_CASE("Parameter-shift estimators are unbiased", "[stats][report]") {
    const Evaluator ex = refExact();
    for (double s : {0.3, 1.0, kPi / 2}) {
        for (std::uint64_t n : {10ULL, 1000ULL}) {
            const auto r = empiricalReport({ParamShift{s}, 1}, ex, refTheta(), n, 2000, 11);
            for (std::size_t j = 0; j < 5; ++j) {
                CAPTURE(s, n, j);
                CHECK(std::abs(r.bias[j]) <= 4 * std::sqrt(r.variance[j] / 2000) + 1e-15);
            }
        }
    }
}

TEST_CASE("Closed-form MSE", "[stats][theory]") {
    TheoryInputs in;
    in.sigma0_sq = 0.3696;
    in.shots = 1000;
    CHECK_THAT(theoryMse({ParamShift{kPi / 2}, 1}, in), WithinRel(1.848e-4, 1e-12));
    in.g = 0.3;
    CHECK(theoryMse({ScaledParamShift{kPi / 2, 1.0, {}}, 1}, in) ==
          theoryMse({ParamShift{kPi / 2}, 1}, in));
    CHECK_THAT(theoryMse({ScaledParamShift{kPi / 2, 0.0, {}}, 1}, in),
               WithinAbs(0.09, 1e-15));

    TheoryInputs bias;
    bias.sigma0_sq = 0.0;
    bias.f3 = 1.0;
    CHECK_THAT(theoryMse({CentralDiff{0.1}, 1}, bias),
               WithinRel(std::pow(0.01 / 6, 2), 1e-12));
    CHECK_THAT(theoryMse({CentralDiff{0.1}, 1}, bias), WithinAbs(2.78e-6, 1e-8));

    TheoryInputs fwd;
    fwd.sigma0_sq = 0.5;
    fwd.shots = 100;
    fwd.f2 = 0.8;
    CHECK_THAT(theoryMse({ForwardDiff{0.2}, 1}, fwd),
               WithinRel(2 * 0.5 / (100 * 0.04) + 0.64 * 0.04 / 4, 1e-12));

    CHECK_THROWS_AS(theoryMse({ParamShift{kPi / 2}, 2}, in), Error);
    TheoryInputs bad;
    bad.shots = 0;
    CHECK_THROWS_AS(theoryMse({ParamShift{kPi / 2}, 1}, bad), Error);
}

TEST_CASE("Forward-difference variance matches independent samples", "[stats][theory]") {
    const Evaluator ex = refExact();
    const std::size_t j = 1;
    const auto in = theoryInputs(ex, refTheta(), j, 100000);
    const double h = 0.05;
    const auto r = empiricalReport({ForwardDiff{h}, 1}, ex, refTheta(), 100000, 4000, 21);
    // Variance of [f(theta + h) - f(theta)] / h with independent samples.
    CHECK_THAT(r.variance[j], WithinRel(2 * in.sigma0_sq / (100000 * h * h), 0.1));
}

TEST_CASE("Optimal steps", "[stats][theory]") {
    TheoryInputs in;
    in.sigma0_sq = 0.3696;
    in.shots = 1000;
    in.f3 = 0.338;
    CHECK(optimalStep(StepScheme::ParamShift, in) == kPi / 2);
    CHECK_THAT(optimalStep(StepScheme::Central, in), WithinAbs(0.555, 1e-3));
    TheoryInputs one = in;
    one.shots = 1;
    TheoryInputs million = in;
    million.shots = 1000000;
    CHECK_THAT(optimalStep(StepScheme::Central, million) /
                   optimalStep(StepScheme::Central, one),
               WithinRel(0.1, 1e-12));
    in.f2 = 0.794;
    CHECK_THAT(optimalStep(StepScheme::Forward, in),
               WithinRel(std::pow(8 * 0.3696 / (0.794 * 0.794 * 1000), 0.25), 1e-12));
    TheoryInputs flat = in;
    flat.f3 = 0.0;
    flat.f2 = 0.0;
    CHECK_THROWS_AS(optimalStep(StepScheme::Central, flat), Error);
    CHECK_THROWS_AS(optimalStep(StepScheme::Forward, flat), Error);

    // Optimum of the total gradient MSE on the reference circuit.
    const Evaluator ex = refExact();
    std::vector<double> f3;
    for (std::size_t j = 0; j < 5; ++j) {
        f3.push_back(theoryInputs(ex, refTheta(), j, 1000).f3);
    }
    const double total =
        optimalTotalCentralStep(ex.singleShotVarianceAt(refTheta()), 1000, f3);
    CHECK_THAT(total, WithinAbs(0.613, 1e-3));
}

TEST_CASE("Optimal scale of the shift rule", "[stats][lambda]") {
    CHECK(lambdaStar(0.3, 0.0) == 1.0);
    CHECK_THAT(lambdaStar(0.3, 0.09), WithinAbs(0.5, 1e-15));
    const auto [a, b] = lambdaStarMse(0.3, 0.09);
    CHECK_THAT(a, WithinAbs(0.045, 1e-15));
    CHECK_THAT(b, WithinAbs(0.045, 1e-15));
    const double tiny = lambdaStar(1e-4, 1.0);
    CHECK_THAT(tiny, WithinRel(1e-8, 1e-6));
    CHECK_THROWS_AS(lambdaStar(0.0, 0.0), Error);
    CHECK_THROWS_AS(lambdaStar(0.1, -1.0), Error);
    for (double g : {0.01, 0.2, 0.9}) {
        for (double v : {1e-4, 0.05, 2.0}) {
            const auto [x, y] = lambdaStarMse(g, v);
            CHECK_THAT(x, WithinRel(y, 1e-12));
            CHECK(x <= v);
        }
    }
}

TEST_CASE("Third derivatives", "[stats][theory]") {
    const std::vector<double> one{1.0};
    const Observable z = SinglePauli{PauliString::parse("Z")};
    CHECK_THAT(thirdDerivative(rx(), one, z, 0), WithinAbs(std::sin(1.0), 1e-14));
    const Circuit c = bench::referenceCircuit();
    const Observable obs = bench::referenceObservable();
    CHECK_THAT(thirdDerivative(c, refTheta(), obs, 0), WithinAbs(0.338, 1e-3));
    CHECK_THAT(thirdDerivative(c, refTheta(), obs, 4), WithinAbs(0.0, 1e-14));
    for (std::size_t j = 0; j < 4; ++j) {
        const std::size_t idx[3] = {j, j, j};
        CHECK_THAT(thirdDerivative(c, refTheta(), obs, j),
                   WithinAbs(oracle::ProductCos::partial(refTheta(), idx), 1e-12));
    }
}

TEST_CASE("Constant-variance diagnostic", "[stats][theory]") {
    const Evaluator ex = refExact();
    const double xs[1] = {kPi / 2};
    const double spread = assumption1Spread(ex, refTheta(), xs);
    CHECK(spread > kAssumption1Threshold);
    const auto r = empiricalReport({ParamShift{kPi / 2}, 1}, ex, refTheta(), 100, 50, 1);
    CHECK_FALSE(r.assumption1_ok);
    CHECK(r.assumption1_spread == spread);

    // Small shifts around f = 0.
    const double tiny[1] = {1e-4};
    const Evaluator flat = Evaluator::exact(rx(), SinglePauli{PauliString::parse("Z")});
    const std::vector<double> at{kPi / 2};
    CHECK(assumption1Spread(flat, at, tiny) < 1e-6);
}
