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
 * End-to-end experiments behind the command-line harness. Each experiment
 * returns structured results plus a Table in its fixed CSV schema.
 *
 * Random streams: sweep cell c with repetition r draws from stream
 * cellStream(hash, c) + r, where the low 32 bits of cellStream are zero.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "vqderiv/bench/config.hpp"
#include "vqderiv/bench/csv.hpp"
#include "vqderiv/bench/power_law.hpp"
#include "vqderiv/deriv/trig_surrogate.hpp"
#include "vqderiv/stats/report.hpp"

namespace vqderiv::bench {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t cellStream(std::uint64_t config_hash, std::uint64_t cell) {
    return splitmix64(config_hash ^ splitmix64(cell)) & 0xFFFFFFFF00000000ULL;
}

inline std::int64_t asColumn(std::uint64_t v) {
    return static_cast<std::int64_t>(v);
}

inline std::string hashText(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline EstimatorSpec makeSpec(const std::string &name, double step,
                              std::size_t order, double lambda = 1.0) {
    if (name == "param-shift") {
        return {ParamShift{step}, order};
    }
    if (name == "scaled-param-shift") {
        return {ScaledParamShift{step, lambda, {}}, order};
    }
    if (name == "central-diff") {
        return {CentralDiff{step}, order};
    }
    if (name == "forward-diff") {
        return {ForwardDiff{step}, order};
    }
    throw Error(ErrorKind::Parse, "unknown estimator '" + name + "'");
}

struct SweepCell {
    EstimatorReport report;
    bool optimal_lambda = false;
};

// ---------------------------------------------------------------- mse-sweep

inline std::vector<std::string> mseSweepColumns() {
    return {"estimator",       "order",         "step",
            "lambda",          "lambda_mode",   "shots",
            "repetitions",     "mse_per_element", "total_mse",
            "total_mse_stderr", "total_variance", "total_bias_sq",
            "predicted_mse",   "theory_mse",    "assumption1_spread",
            "seed",            "stream",        "config_hash"};
}

inline void addSweepRow(Table &t, const SweepCell &cell, std::uint64_t hash) {
    const auto &r = cell.report;
    double lambda = 1.0;
    if (const auto *sc = std::get_if<ScaledParamShift>(&r.spec.kind)) {
        lambda = cell.optimal_lambda ? std::nan("") : sc->lambda;
    }
    const double m = static_cast<double>(r.layout.keys.size());
    t.addRow({r.spec.name(), asColumn(r.spec.order), r.spec.step(), lambda,
              std::string(cell.optimal_lambda ? "optimal" : "fixed"),
              asColumn(r.shots), asColumn(r.repetitions), r.total_mse / m,
              r.total_mse, r.total_mse_stderr, r.total_variance, r.total_bias_sq,
              r.predicted_mse, r.theory_mse, r.assumption1_spread,
              asColumn(r.seed), asColumn(r.stream_base), hashText(hash)});
}

struct MseSweepResult {
    std::vector<SweepCell> cells;
    Table table{mseSweepColumns()};
};

inline MseSweepResult runMseSweep(const ExperimentConfig &c) {
    const auto [circuit, obs] = configCircuit(c);
    circuit.checkParams(c.theta);
    const Evaluator exact = Evaluator::exact(circuit, obs);
    MseSweepResult out;
    std::uint64_t cell = 0;
    auto run = [&](const EstimatorSpec &spec, std::uint64_t n, bool optimal) {
        const std::uint64_t stream = cellStream(c.hash, cell++);
        out.cells.push_back(
            {empiricalReport(spec, exact, c.theta, n, c.repetitions, c.seed, stream),
             optimal});
        addSweepRow(out.table, out.cells.back(), c.hash);
    };
    for (std::uint64_t n : c.shots) {
        for (const auto &name : c.estimators) {
            if (name != "scaled-param-shift") {
                for (double step : c.steps) {
                    run(makeSpec(name, step, 1), n, false);
                }
                continue;
            }
            for (double l : c.lambdas) {
                run(makeSpec(name, kHalfPi, 1, l), n, false);
            }
            if (c.scaled_optimal) {
                run(optimalScaledSpec(exact, c.theta, n, 1), n, true);
            }
        }
    }
    return out;
}

// ------------------------------------------------------------ scaling-sweep

struct Optimum {
    std::string estimator;
    std::size_t order = 1;
    std::uint64_t shots = 0;
    double step = 0.0;
    double mse = 0.0;
    double stderr_ = 0.0;
    std::uint64_t stream = 0;
};

struct ScalingFit {
    std::string estimator;
    std::size_t order = 1;
    std::string quantity; ///< "mse" or "step"
    PowerLawFit fit;
};

struct Crossover {
    std::size_t order = 1;
    std::string estimator; ///< finite-difference estimator compared with param-shift
    double shots = std::nan(""); ///< NaN when the curves do not cross
};

struct ScalingSweepResult {
    std::vector<SweepCell> cells;
    std::vector<Optimum> optima;
    std::vector<ScalingFit> fits;
    std::vector<Crossover> crossovers;
    Table table{{"record", "estimator", "order", "quantity", "shots", "step",
                 "value", "stderr", "exponent", "prefactor", "r_squared",
                 "seed", "stream", "config_hash"}};

    [[nodiscard]] const ScalingFit &fit(const std::string &est, std::size_t order,
                                        const std::string &quantity) const {
        for (const auto &f : fits) {
            if (f.estimator == est && f.order == order && f.quantity == quantity) {
                return f;
            }
        }
        throw Error(ErrorKind::InvalidArgument,
                    "no fit for " + est + "/" + quantity);
    }
};

/// First crossing of two curves sampled on a common increasing grid,
/// interpolated linearly in log N.
inline double crossingPoint(const std::vector<std::uint64_t> &n,
                            const std::vector<double> &a,
                            const std::vector<double> &b) {
    for (std::size_t k = 0; k + 1 < n.size(); ++k) {
        const double d0 = std::log(a[k] / b[k]);
        const double d1 = std::log(a[k + 1] / b[k + 1]);
        if (d0 == 0.0) {
            return static_cast<double>(n[k]);
        }
        if ((d0 < 0.0) != (d1 < 0.0)) {
            const double t = d0 / (d0 - d1);
            const double l0 = std::log(static_cast<double>(n[k]));
            const double l1 = std::log(static_cast<double>(n[k + 1]));
            return std::exp(l0 + t * (l1 - l0));
        }
    }
    return std::nan("");
}

inline ScalingSweepResult runScalingSweep(const ExperimentConfig &c) {
    const auto [circuit, obs] = configCircuit(c);
    circuit.checkParams(c.theta);
    const Evaluator exact = Evaluator::exact(circuit, obs);
    std::vector<std::uint64_t> shots = c.shots;
    std::sort(shots.begin(), shots.end());
    std::size_t fit_points = 0;
    for (auto n : shots) {
        fit_points += n >= c.fit_min_shots ? 1 : 0;
    }
    if (fit_points < 3) {
        throw Error(ErrorKind::InvalidArgument,
                    "scaling sweep needs >= 3 shot counts at or above fit_min_shots");
    }

    ScalingSweepResult out;
    const auto hash = hashText(c.hash);
    const double nan = std::nan("");
    std::uint64_t cell = 0;
    for (std::size_t order : c.orders) {
        const std::size_t reps = order == 1 ? c.repetitions : c.hessian_repetitions;
        std::map<std::string, std::vector<double>> best_mse;
        for (const auto &name : c.estimators) {
            if (name == "scaled-param-shift" || (name == "forward-diff" && order != 1)) {
                continue;
            }
            const std::vector<double> ps_step{kHalfPi};
            const auto &steps = name == "param-shift" ? ps_step : c.steps;
            std::vector<std::pair<double, double>> mse_pts;
            std::vector<std::pair<double, double>> step_pts;
            for (std::uint64_t n : shots) {
                Optimum best;
                best.mse = std::numeric_limits<double>::infinity();
                for (double step : steps) {
                    const std::uint64_t stream = cellStream(c.hash, cell++);
                    out.cells.push_back(
                        {empiricalReport(makeSpec(name, step, order), exact, c.theta,
                                         n, reps, c.seed, stream),
                         false});
                    const auto &r = out.cells.back().report;
                    out.table.addRow({std::string("point"), name, asColumn(order),
                                      std::string("mse"), asColumn(n), step,
                                      r.total_mse, r.total_mse_stderr, nan, nan,
                                      nan, asColumn(c.seed), asColumn(stream),
                                      hash});
                    if (r.total_mse < best.mse) {
                        best = {name, order, n, step, r.total_mse,
                                r.total_mse_stderr, stream};
                    }
                }
                out.optima.push_back(best);
                out.table.addRow({std::string("optimum"), name, asColumn(order),
                                  std::string("mse"), asColumn(n), best.step,
                                  best.mse, best.stderr_, nan, nan, nan,
                                  asColumn(c.seed), asColumn(best.stream), hash});
                best_mse[name].push_back(best.mse);
                if (n >= c.fit_min_shots) {
                    mse_pts.emplace_back(static_cast<double>(n), best.mse);
                    step_pts.emplace_back(static_cast<double>(n), best.step);
                }
            }
            auto add_fit = [&](const std::string &quantity,
                               const std::vector<std::pair<double, double>> &pts) {
                const PowerLawFit f = powerLawFit(pts);
                out.fits.push_back({name, order, quantity, f});
                out.table.addRow({std::string("fit"), name, asColumn(order),
                                  quantity, asColumn(0), nan, nan, nan, f.exponent,
                                  f.prefactor, f.r_squared, asColumn(c.seed),
                                  asColumn(0), hash});
            };
            add_fit("mse", mse_pts);
            if (name != "param-shift") {
                add_fit("step", step_pts);
            }
        }
        if (best_mse.count("central-diff") != 0 && best_mse.count("param-shift") != 0) {
            Crossover x{order, "central-diff",
                        crossingPoint(shots, best_mse["central-diff"],
                                      best_mse["param-shift"])};
            out.crossovers.push_back(x);
            out.table.addRow({std::string("crossover"), x.estimator, asColumn(order),
                              std::string("shots"), asColumn(0), nan, x.shots, nan,
                              nan, nan, nan, asColumn(c.seed), asColumn(0), hash});
        }
    }
    return out;
}

// ------------------------------------------------------------------ hessian

struct HessianResult {
    std::vector<SweepCell> cells;
    Table table{{"estimator", "step", "shots", "repetitions", "i", "j", "exact",
                 "mean", "variance", "bias", "mse", "seed", "stream",
                 "config_hash"}};
};

inline HessianResult runHessian(const ExperimentConfig &c) {
    const auto [circuit, obs] = configCircuit(c);
    circuit.checkParams(c.theta);
    const Evaluator exact = Evaluator::exact(circuit, obs);
    HessianResult out;
    std::uint64_t cell = 0;
    for (std::uint64_t n : c.shots) {
        for (const auto &name : c.estimators) {
            if (name != "param-shift" && name != "central-diff") {
                throw Error(ErrorKind::UnsupportedScheme,
                            "hessian supports param-shift and central-diff");
            }
            const std::vector<double> ps_step{kHalfPi};
            for (double step : name == "param-shift" ? ps_step : c.steps) {
                const std::uint64_t stream = cellStream(c.hash, cell++);
                out.cells.push_back({empiricalReport(makeSpec(name, step, 2), exact,
                                                     c.theta, n,
                                                     c.hessian_repetitions, c.seed,
                                                     stream),
                                     false});
                const auto &r = out.cells.back().report;
                for (std::size_t e = 0; e < r.layout.keys.size(); ++e) {
                    out.table.addRow(
                        {name, step, asColumn(n), asColumn(r.repetitions),
                         asColumn(r.layout.keys[e][0]), asColumn(r.layout.keys[e][1]),
                         r.truth[e], r.mean[e], r.variance[e], r.bias[e], r.mse[e],
                         asColumn(c.seed), asColumn(stream), hashText(c.hash)});
                }
            }
        }
    }
    return out;
}

// ------------------------------------------------------------------- metric

struct MetricResult {
    Table table{{"mode", "shots", "i", "j", "value", "evaluations", "seed",
                 "stream", "config_hash"}};
};

inline MetricResult runMetric(const ExperimentConfig &c) {
    const auto [circuit, obs] = configCircuit(c);
    MetricResult out;
    auto emit = [&](const std::string &mode, std::uint64_t n, std::uint64_t stream,
                    const DerivativeTensor &t, std::size_t evals) {
        for (const auto &key : t.keys()) {
            out.table.addRow({mode, asColumn(n), asColumn(key[0]), asColumn(key[1]),
                              t(std::span<const std::size_t>(key)),
                              asColumn(evals), asColumn(c.seed), asColumn(stream),
                              hashText(c.hash)});
        }
    };
    std::size_t evals = 0;
    const DerivativeTensor exact =
        metricTensor(circuit, c.theta, std::nullopt, c.metric_diagonal, &evals);
    emit("exact", 0, 0, exact, evals);
    std::uint64_t cell = 0;
    for (std::uint64_t n : c.shots) {
        const std::uint64_t stream = cellStream(c.hash, cell++);
        const DerivativeTensor sampled = metricTensor(
            circuit, c.theta, ShotModel{n, c.seed, stream}, c.metric_diagonal, &evals);
        emit("sampled", n, stream, sampled, evals);
    }
    return out;
}

// ----------------------------------------------------------------- optimize

struct OptimizeResult {
    std::vector<OptimizerTrace> traces;
    Table table{{"run", "method", "regularizer", "epsilon", "eta", "shots",
                 "iteration", "theta", "estimated_cost", "exact_cost",
                 "evaluations", "step_evaluations", "gradient", "matrix", "seed",
                 "stream", "config_hash"}};
};

inline OptimizeResult runOptimize(const ExperimentConfig &c) {
    const auto [circuit, obs] = configCircuit(c);
    if (c.runs.empty()) {
        throw Error(ErrorKind::InvalidArgument, "optimize needs at least one run");
    }
    OptimizeResult out;
    for (std::size_t k = 0; k < c.runs.size(); ++k) {
        const auto &run = c.runs[k];
        out.traces.push_back(optimize(run.config, circuit, obs, run.theta0));
        for (const auto &r : out.traces.back().records) {
            RealList matrix;
            if (r.matrix) {
                matrix.assign(r.matrix->data(), r.matrix->data() + r.matrix->size());
            }
            out.table.addRow(
                {asColumn(k), std::string(toString(run.config.method)),
                 std::string(toString(run.config.regularizer)), run.config.epsilon,
                 run.config.eta, asColumn(run.config.shots.value_or(0)),
                 asColumn(r.iteration), RealList(r.theta), r.estimated_cost,
                 r.exact_cost, asColumn(r.evaluations), asColumn(r.step_evaluations),
                 RealList(r.gradient), matrix, asColumn(c.seed),
                 asColumn(r.iteration), hashText(c.hash)});
        }
    }
    return out;
}

// -------------------------------------------------------------- reconstruct

struct ReconstructResult {
    double max_error = 0.0;
    std::size_t evaluations = 0;
    Table table{{"sample", "theta", "exact", "surrogate", "abs_error",
                 "evaluations", "seed", "stream", "config_hash"}};
};

inline ReconstructResult runReconstruct(const ExperimentConfig &c) {
    const auto [circuit, obs] = configCircuit(c);
    Evaluator ev = Evaluator::exact(circuit, obs);
    ReconstructResult out;
    const TrigSurrogate s = trigReconstruct(ev, circuit.numParams());
    out.evaluations = static_cast<std::size_t>(ev.calls());
    const std::uint64_t stream = cellStream(c.hash, 0);
    Philox4x32 rng(c.seed, stream);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    std::vector<double> theta(circuit.numParams());
    for (std::size_t k = 0; k < c.samples; ++k) {
        for (auto &t : theta) {
            t = angle(rng);
        }
        const double f = ev.exactValue(theta);
        const double g = s(theta);
        out.max_error = std::max(out.max_error, std::abs(f - g));
        out.table.addRow({asColumn(k), RealList(theta), f, g, std::abs(f - g),
                          asColumn(out.evaluations), asColumn(c.seed),
                          asColumn(stream), hashText(c.hash)});
    }
    return out;
}

} // namespace vqderiv::bench
