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
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "vqderiv/bench/config.hpp"
#include "vqderiv/bench/experiments.hpp"
#include "vqderiv/bench/reference_circuit.hpp"
#include "vqderiv/deriv/trig_surrogate.hpp"

using namespace vqderiv;
using namespace vqderiv::bench;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string &what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
    void note(const std::string &what) {
        detail += (detail.empty() ? "" : "; ") + what;
    }
};

std::string fmt(const char *f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string fmt(const char *f, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

std::string example(const std::string &name) {
    return std::string(VQDERIV_EXAMPLES_DIR) + "/" + name;
}

std::vector<double> randomTheta(std::mt19937_64 &rng, std::size_t m) {
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    std::vector<double> t(m);
    for (auto &x : t) {
        x = angle(rng);
    }
    return t;
}

struct RandomCase {
    Circuit circuit;
    std::string observable;
    std::vector<double> theta;
};

std::vector<RandomCase> randomCases(std::size_t count) {
    std::mt19937_64 rng(20260101);
    std::vector<RandomCase> out;
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t n = 1 + rng() % 5;
        const std::size_t m = 1 + rng() % 6;
        Circuit c = oracle::randomCircuit(rng, n, m);
        auto obs = oracle::randomObservable(rng, n);
        out.push_back({std::move(c), std::move(obs), randomTheta(rng, m)});
    }
    return out;
}

Outcome shiftRuleExactness(const std::vector<RandomCase> &cases) {
    Outcome o;
    double worst_fd = 0.0;
    double worst_s = 0.0;
    for (const auto &rc : cases) {
        Evaluator ev = Evaluator::exact(rc.circuit, SinglePauli{PauliString::parse(rc.observable)});
        const oracle::Fn f = [&](std::span<const double> x) {
            return oracle::expectation(rc.circuit, x, rc.observable);
        };
        for (std::size_t order : {1U, 2U}) {
            const auto t = psDerivativeTensor(ev, rc.theta, order);
            for (const auto &key : t.keys()) {
                const double v = t(std::span<const std::size_t>(key));
                worst_fd = std::max(worst_fd, std::abs(v - oracle::centralFd(f, rc.theta, key, 1e-5)));
                for (double s : {0.3, 1.0, kPi / 2}) {
                    worst_s = std::max(
                        worst_s, std::abs(psTensor(ev, rc.theta, key, s) - v));
                }
            }
        }
    }
    o.require(worst_fd <= 1e-5, "finite-difference gap above 1e-5");
    o.require(worst_s <= 1e-9, "shift dependence above 1e-9");
    o.detail = fmt("max |PS - FD| = %.2e, max shift spread = %.2e", worst_fd, worst_s) +
               (o.pass ? "" : " (" + o.detail + ")");
    return o;
}

Outcome piShiftIdentity(const std::vector<RandomCase> &cases) {
    Outcome o;
    double worst = 0.0;
    std::size_t checks = 0;
    auto run = [&](Evaluator &ev, std::span<const double> theta) {
        for (std::size_t j = 0; j < theta.size(); ++j) {
            const auto [lhs, rhs] = piShiftIdentityCheck(ev, theta, j);
            worst = std::max(worst, std::abs(lhs - rhs));
            ++checks;
        }
    };
    for (const auto &rc : cases) {
        Evaluator ev = Evaluator::exact(rc.circuit, SinglePauli{PauliString::parse(rc.observable)});
        run(ev, rc.theta);
    }
    Evaluator ref = Evaluator::exact(referenceCircuit(), referenceObservable());
    run(ref, kRefTheta);
    o.require(worst <= 1e-10, "identity gap above 1e-10");
    o.detail = fmt("%.0f checks, max gap = %.2e", static_cast<double>(checks), worst);
    return o;
}

Outcome reconstruction() {
    Outcome o;
    const auto out = runReconstruct(loadConfig(example("reconstruct.json")));
    o.require(out.max_error <= 1e-9, "surrogate error above 1e-9");
    o.require(out.evaluations == 243, "expected 243 evaluations");
    o.require(out.table.numRows() == 100, "expected 100 samples");
    o.detail = fmt("max error = %.2e over %.0f points", out.max_error,
                   static_cast<double>(out.table.numRows())) +
               fmt(", %.0f evaluations", static_cast<double>(out.evaluations));
    return o;
}

Outcome goldens() {
    Outcome o;
    const auto &cal = calibration();
    const Circuit c = referenceCircuit();
    const auto v = referenceValues(c);
    if (cal.met) {
        o.require(referenceDeviation(v) <= kRefTolerance, "tabulated values not met");
        o.detail = "calibration met (" + cal.candidate.label() + "), max deviation = " +
                   fmt("%.2e", referenceDeviation(v));
        return o;
    }
    // Pinned-circuit goldens from the dense-matrix simulator.
    const std::vector<double> theta(kRefTheta.begin(), kRefTheta.end());
    const std::string z = "IZIII";
    const oracle::Fn f = [&](std::span<const double> x) {
        return oracle::expectation(c, x, z);
    };
    double dev = std::abs(v.cost - f(theta));
    for (std::size_t i = 0; i < kRefWires; ++i) {
        const std::size_t gi[1] = {i};
        dev = std::max(dev, std::abs(v.gradient[i] - oracle::centralFd(f, theta, gi, 1e-5)));
    }
    o.require(dev <= 1e-9, "pinned goldens differ");
    o.detail = "calibration-unmet: pinned goldens enforced, deviation " + fmt("%.2e", dev);
    return o;
}

const ScalingFit *findFit(const ScalingSweepResult &r, const std::string &est,
                          std::size_t order, const std::string &q) {
    for (const auto &f : r.fits) {
        if (f.estimator == est && f.order == order && f.quantity == q) {
            return &f;
        }
    }
    return nullptr;
}

Outcome checkExponent(Outcome o, const ScalingSweepResult &r, const std::string &est,
                      std::size_t order, const std::string &q, double target, double tol,
                      const std::string &label) {
    const ScalingFit *f = findFit(r, est, order, q);
    if (f == nullptr) {
        o.require(false, "missing fit " + label);
        return o;
    }
    const bool ok = std::abs(f->fit.exponent - target) <= tol;
    o.require(ok, label + " out of band");
    o.note(label + fmt(" %.3f (target %.3f", f->fit.exponent, target) + fmt(" +- %.2f)", tol));
    return o;
}

Outcome gradientScaling(const ScalingSweepResult &r, double seconds) {
    Outcome o;
    o = checkExponent(o, r, "central-diff", 1, "mse", -2.0 / 3.0, 0.07, "central");
    o = checkExponent(o, r, "forward-diff", 1, "mse", -0.5, 0.07, "forward");
    o = checkExponent(o, r, "param-shift", 1, "mse", -1.0, 0.05, "param-shift");
    o = checkExponent(o, r, "central-diff", 1, "step", -1.0 / 6.0, 0.05, "optimal h");
    o.require(seconds < 15 * 60, "runtime above 15 min");
    return o;
}

Outcome hessianScaling(const ScalingSweepResult &r, double seconds) {
    Outcome o;
    o = checkExponent(o, r, "central-diff", 2, "mse", -0.5, 0.05, "finite-difference");
    o = checkExponent(o, r, "param-shift", 2, "mse", -1.0, 0.05, "param-shift");
    o.require(seconds < 20 * 60, "runtime above 20 min");
    return o;
}

double combinedSe(double a, double b) { return std::sqrt(a * a + b * b); }

Outcome curveShape(const MseSweepResult &r) {
    Outcome o;
    std::vector<const EstimatorReport *> cd;
    std::vector<const EstimatorReport *> ps;
    for (const auto &cell : r.cells) {
        if (cell.report.shots != 1000) {
            continue;
        }
        const auto name = cell.report.spec.name();
        if (name == "central-diff") {
            cd.push_back(&cell.report);
        } else if (name == "param-shift") {
            ps.push_back(&cell.report);
        }
    }
    if (cd.size() < 3 || ps.size() < 2) {
        o.require(false, "N = 1000 curves missing");
        return o;
    }
    auto best = std::min_element(cd.begin(), cd.end(), [](auto *a, auto *b) {
        return a->total_mse < b->total_mse;
    });
    const double h = (*best)->spec.step();
    const bool interior = best != cd.begin() && best != cd.end() - 1;
    o.require(interior, "central-diff minimum on the grid edge");
    o.require(h >= 0.4 && h <= 0.9, "central-diff minimum outside [0.4, 0.9]");
    std::size_t violations = 0;
    for (std::size_t k = 0; k + 1 < ps.size(); ++k) {
        const double band = 2.0 * combinedSe(ps[k]->total_mse_stderr, ps[k + 1]->total_mse_stderr);
        violations += ps[k + 1]->total_mse > ps[k]->total_mse + band ? 1 : 0;
    }
    o.require(violations == 0, "param-shift curve rises beyond 2 SE");
    o.detail = fmt("central-diff minimum at h = %.3f, param-shift rises beyond 2 SE %.0f times",
                   h, static_cast<double>(violations)) +
               (o.pass ? "" : " (" + o.detail + ")");
    return o;
}

Outcome dominance(const MseSweepResult &r) {
    Outcome o;
    std::size_t compared = 0;
    std::size_t violations = 0;
    double worst_margin = -INFINITY;
    std::vector<std::uint64_t> shots;
    for (const auto &cell : r.cells) {
        if (cell.optimal_lambda) {
            shots.push_back(cell.report.shots);
        }
    }
    for (std::uint64_t n : shots) {
        const EstimatorReport *scaled = nullptr;
        for (const auto &cell : r.cells) {
            if (cell.optimal_lambda && cell.report.shots == n) {
                scaled = &cell.report;
            }
        }
        for (const auto &cell : r.cells) {
            const auto &rep = cell.report;
            const auto name = rep.spec.name();
            if (rep.shots != n || (name != "param-shift" && name != "central-diff")) {
                continue;
            }
            ++compared;
            const double band = 2.0 * combinedSe(scaled->total_mse_stderr, rep.total_mse_stderr);
            const double margin = (scaled->total_mse - rep.total_mse) / std::max(band, 1e-300);
            worst_margin = std::max(worst_margin, margin);
            violations += scaled->total_mse > rep.total_mse + band ? 1 : 0;
        }
    }
    o.require(!shots.empty(), "no optimal-lambda rows");
    o.require(violations == 0, "scaled estimator loses beyond 2 SE");
    o.detail = fmt("%.0f comparisons over %.0f shot counts", static_cast<double>(compared),
                   static_cast<double>(shots.size())) +
               fmt(", %.0f violations, worst (scaled - other) / 2SE = %.2f",
                   static_cast<double>(violations), worst_margin);
    return o;
}

Outcome decomposition(const std::vector<const std::vector<SweepCell> *> &sets) {
    Outcome o;
    std::size_t count = 0;
    double worst = 0.0;
    for (const auto *cells : sets) {
        for (const auto &cell : *cells) {
            const auto &r = cell.report;
            ++count;
            worst = std::max(worst, r.decompositionGap() / std::max(1.0, r.total_mse));
            o.require(r.decompositionGap() <= r.decomposition_tolerance,
                      r.spec.name() + " report outside tolerance");
            for (std::size_t e = 0; e < r.mse.size(); ++e) {
                const double gap = std::abs(r.mse[e] - (r.variance[e] + r.bias[e] * r.bias[e]));
                o.require(gap <= 1e-12 * std::max(1.0, r.mse[e]), "entry outside tolerance");
            }
        }
    }
    o.detail = fmt("%.0f reports, max relative |MSE - Var - Bias^2| = %.2e", static_cast<double>(count),
                   worst) +
               (o.pass ? "" : " (" + o.detail + ")");
    return o;
}

Outcome optimizerRace() {
    Outcome o;
    const auto cfg = loadConfig(example("optimize_race.json"));
    const auto out = runOptimize(cfg);
    const double target = kRefMinimum + 1e-2;
    std::optional<std::uint64_t> gd_evals;
    const std::uint64_t expected_step[] = {4, 9, 5};
    for (std::size_t k = 0; k < out.traces.size(); ++k) {
        const auto &t = out.traces[k];
        const std::string name = toString(t.config.method);
        const auto evals = t.evaluationsToReach(target);
        const auto &last = t.records.back();
        o.require(evals.has_value(), name + " never reaches -0.874 + 1e-2");
        o.require(std::abs(last.exact_cost - kRefMinimum) <= 1e-2,
                  name + " final cost off the minimum");
        const double a = std::remainder(last.theta[0], 2 * kPi);
        const double b = std::remainder(last.theta[1], 2 * kPi);
        const bool at_limit = std::abs(a) <= 1e-2 && std::abs(std::abs(b) - kPi) <= 1e-2;
        o.require(at_limit, name + fmt(" limit (%.3f, %.3f) mod 2pi is not (0, pi)", a, b));
        for (std::size_t r = 1; r < t.records.size(); ++r) {
            if (t.records[r].step_evaluations != expected_step[k]) {
                o.require(false, name + " per-step count differs");
                break;
            }
        }
        if (t.config.method == Method::GD) {
            gd_evals = evals;
        } else if (evals && gd_evals) {
            o.require(*evals < *gd_evals, name + " not cheaper than gd");
        }
        o.note(name + fmt(": %.0f evaluations to threshold", evals ? double(*evals) : NAN) +
               fmt(", step count %.0f", static_cast<double>(t.records.back().step_evaluations)));
    }
    return o;
}

Outcome determinism(const std::vector<std::pair<std::string, std::function<std::string()>>> &runs) {
    Outcome o;
    for (const auto &[name, run] : runs) {
        const std::string a = run();
        const std::string b = run();
        o.require(a == b, name + " differs between runs");
        o.require(parseCsv(a).str() == a, name + " does not parse back");
    }
    o.detail = fmt("%.0f experiments run twice, byte-identical and re-parsed",
                   static_cast<double>(runs.size())) +
               (o.pass ? "" : " (" + o.detail + ")");
    return o;
}

template <class F> auto timed(F &&f, double &seconds) {
    const auto t0 = std::chrono::steady_clock::now();
    auto out = f();
    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

} // namespace

int main() {
    int failures = 0;
    auto report = [&](int id, const std::string &title, const Outcome &o, double seconds) {
        std::printf("%s %2d %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", id, title.c_str(),
                    o.detail.c_str(), seconds);
        std::fflush(stdout);
        failures += o.pass ? 0 : 1;
    };
    try {
        double sec = 0.0;
        const auto cases = randomCases(50);

        auto o1 = timed([&] { return shiftRuleExactness(cases); }, sec);
        o1.require(sec < 60, "runtime above 1 min");
        report(1, "shift-rule exactness", o1, sec);

        const auto o2 = timed([&] { return piShiftIdentity(cases); }, sec);
        report(2, "pi-shift identity", o2, sec);

        auto o3 = timed(reconstruction, sec);
        o3.require(sec < 10, "runtime above 10 s");
        report(3, "trigonometric reconstruction", o3, sec);

        const auto o4 = timed(goldens, sec);
        report(4, "reference goldens", o4, sec);

        auto scalingConfig = [](int order) {
            return parseConfig(
                R"({"experiment": "scaling-sweep", "seed": 2021,
                    "shots": [100, 1000, 10000, 100000, 1000000], "fit_min_shots": 100,
                    "repetitions": 1000, "hessian_repetitions": 100,
                    "estimators": ["central-diff", "forward-diff", "param-shift"],
                    "orders": [)" + std::to_string(order) + "]}");
        };
        const auto scaling_cfg = scalingConfig(1);
        double grad_sec = 0.0;
        const auto grad = timed([&] { return runScalingSweep(scaling_cfg); }, grad_sec);
        report(5, "gradient MSE scaling", gradientScaling(grad, grad_sec), grad_sec);

        const auto hess_cfg = scalingConfig(2);
        double hess_sec = 0.0;
        const auto hess = timed([&] { return runScalingSweep(hess_cfg); }, hess_sec);
        report(6, "Hessian MSE scaling", hessianScaling(hess, hess_sec), hess_sec);

        const auto shape_cfg = loadConfig(example("mse_sweep.json"));
        const auto shape = timed([&] { return runMseSweep(shape_cfg); }, sec);
        report(7, "step-size curve shape", curveShape(shape), sec);

        const auto dom_cfg = parseConfig(
            R"({"experiment": "mse-sweep", "seed": 2021,
                "shots": [100, 1000, 10000, 100000, 1000000], "repetitions": 1000,
                "estimators": ["central-diff", "param-shift", "scaled-param-shift"],
                "lambdas": [], "scaled_optimal": true})");
        const auto dom = timed([&] { return runMseSweep(dom_cfg); }, sec);
        report(8, "scaled-estimator dominance", dominance(dom), sec);

        const auto hessian_exp = runHessian(loadConfig(example("hessian.json")));
        const auto o9 = timed(
            [&] {
                return decomposition(
                    {&grad.cells, &hess.cells, &shape.cells, &dom.cells, &hessian_exp.cells});
            },
            sec);
        report(9, "bias-variance decomposition", o9, sec);

        const auto o10 = timed(optimizerRace, sec);
        report(10, "optimizer race", o10, sec);

        const std::vector<std::pair<std::string, std::function<std::string()>>> runs = {
            {"mse-sweep", [] { return runMseSweep(loadConfig(example("mse_sweep.json"))).table.str(); }},
            {"scaling-sweep", [] {
                 return runScalingSweep(loadConfig(example("scaling_sweep.json"))).table.str();
             }},
            {"hessian", [] { return runHessian(loadConfig(example("hessian.json"))).table.str(); }},
            {"metric", [] { return runMetric(loadConfig(example("metric.json"))).table.str(); }},
            {"optimize", [] {
                 return runOptimize(loadConfig(example("optimize_shots.json"))).table.str();
             }},
            {"reconstruct", [] {
                 return runReconstruct(loadConfig(example("reconstruct.json"))).table.str();
             }},
        };
        const auto o11 = timed([&] { return determinism(runs); }, sec);
        report(11, "determinism", o11, sec);
    } catch (const std::exception &e) {
        std::printf("FAIL    acceptance aborted: %s\n", e.what());
        return 1;
    }
    std::printf("%d of 11 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
