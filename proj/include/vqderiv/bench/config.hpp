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
 * JSON experiment configuration.
 *
 * {
 *   "experiment": "mse-sweep" | "scaling-sweep" | "hessian" | "metric"
 *                 | "optimize" | "reconstruct",
 *   "seed": 7,
 *   "circuit": "reference" | "<path to circuit JSON>",
 *   "observable": "IZIII" | "zero",   (file circuits only)
 *   "theta": [...],
 *   "shots": [1000, ...],
 *   "repetitions": 1000,
 *   "hessian_repetitions": 100,
 *   "steps": [...] | {"min": 1e-3, "max": 1.5707963267948966, "count": 31},
 *   "estimators": ["central-diff", "forward-diff", "param-shift",
 *                  "scaled-param-shift"],
 *   "lambdas": [0.0, 0.5, 1.0],
 *   "scaled_optimal": true,
 *   "orders": [1, 2],
 *   "fit_min_shots": 100,
 *   "samples": 100,
 *   "metric_diagonal": "pi" | "half-pi",
 *   "runs": [{"method": "gd", "eta": 0.4, "regularizer": "clamp",
 *             "epsilon": 1e-3, "shots": null, "iterations": 100,
 *             "trainable": [1, 2], "theta0": [...]}]
 * }
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vqderiv/bench/reference_circuit.hpp"
#include "vqderiv/opt/optimizer.hpp"
#include "vqderiv/sim/circuit_io.hpp"

namespace vqderiv::bench {

inline std::uint64_t fnv1a64(const std::string &text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// `count` points log-spaced over [lo, hi], endpoints included.
inline std::vector<double> logSpace(double lo, double hi, std::size_t count) {
    if (!(lo > 0.0) || !(hi >= lo) || count == 0) {
        throw Error(ErrorKind::InvalidArgument, "invalid log-spaced grid");
    }
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double t = count == 1 ? 0.0
                                    : static_cast<double>(i) /
                                          static_cast<double>(count - 1);
        out[i] = std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)));
    }
    out.back() = hi;
    return out;
}

struct OptimizerRun {
    OptimizerConfig config;
    std::vector<double> theta0;
};

struct ExperimentConfig {
    std::string experiment;
    std::uint64_t seed = 0;
    std::string circuit = "reference";
    std::string observable;
    std::vector<double> theta;
    std::vector<std::uint64_t> shots;
    std::size_t repetitions = 1000;
    std::size_t hessian_repetitions = 100;
    std::vector<double> steps;
    std::vector<std::string> estimators;
    std::vector<double> lambdas;
    bool scaled_optimal = true;
    std::vector<std::size_t> orders;
    std::uint64_t fit_min_shots = 100;
    std::size_t samples = 100;
    MetricDiag metric_diagonal = MetricDiag::PiShift;
    std::vector<OptimizerRun> runs;
    /// FNV-1a 64 of the canonical configuration text with the seed applied.
    std::uint64_t hash = 0;

    [[nodiscard]] bool usesReference() const { return circuit == "reference"; }
};

namespace detail {

inline const nlohmann::json *field(const nlohmann::json &j, const char *key) {
    auto it = j.find(key);
    return it == j.end() || it->is_null() ? nullptr : &*it;
}

template <class T> T get(const nlohmann::json &j, const char *key, T fallback) {
    const auto *f = field(j, key);
    if (f == nullptr) {
        return fallback;
    }
    try {
        return f->get<T>();
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorKind::Parse, std::string("config field '") + key +
                                          "': " + e.what());
    }
}

inline void checkKeys(const nlohmann::json &j,
                      std::initializer_list<const char *> allowed,
                      const std::string &where) {
    if (!j.is_object()) {
        throw Error(ErrorKind::Parse, where + " must be a JSON object");
    }
    for (const auto &[k, v] : j.items()) {
        bool ok = false;
        for (const char *a : allowed) {
            ok = ok || k == a;
        }
        if (!ok) {
            throw Error(ErrorKind::Parse, where + ": unknown key '" + k + "'");
        }
    }
}

inline std::vector<double> parseSteps(const nlohmann::json &j) {
    const auto *f = field(j, "steps");
    if (f == nullptr) {
        return logSpace(1e-3, std::numbers::pi / 2, 31);
    }
    if (f->is_array()) {
        return f->get<std::vector<double>>();
    }
    checkKeys(*f, {"min", "max", "count"}, "steps");
    return logSpace(get<double>(*f, "min", 1e-3),
                    get<double>(*f, "max", std::numbers::pi / 2),
                    get<std::size_t>(*f, "count", 31));
}

inline OptimizerRun parseRun(const nlohmann::json &r, std::uint64_t seed,
                             const std::vector<double> &theta) {
    checkKeys(r,
              {"method", "eta", "regularizer", "epsilon", "shots", "iterations",
               "trainable", "theta0"},
              "runs[]");
    OptimizerRun run;
    auto &c = run.config;
    c.method = parseMethod(get<std::string>(r, "method", "gd"));
    c.eta = get<double>(r, "eta", 0.4);
    c.regularizer = parseRegularizer(get<std::string>(r, "regularizer", "clamp"));
    c.epsilon = get<double>(r, "epsilon", 1e-3);
    if (const auto *s = field(r, "shots")) {
        c.shots = s->get<std::uint64_t>();
    }
    c.max_iterations = get<std::size_t>(r, "iterations", 100);
    c.trainable = get<std::vector<std::size_t>>(r, "trainable", {});
    c.seed = seed;
    run.theta0 = theta;
    if (const auto *t0 = field(r, "theta0")) {
        const auto v = t0->get<std::vector<double>>();
        if (!c.trainable.empty() && v.size() == c.trainable.size()) {
            for (std::size_t i = 0; i < v.size(); ++i) {
                run.theta0.at(c.trainable[i]) = v[i];
            }
        } else {
            run.theta0 = v;
        }
    }
    return run;
}

} // namespace detail

inline ExperimentConfig parseConfig(const std::string &text,
                                    std::optional<std::uint64_t> seed_override = {},
                                    const std::filesystem::path &base_dir = {}) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw Error(ErrorKind::Parse, std::string("config: ") + e.what());
    }
    detail::checkKeys(j,
                      {"experiment", "seed", "circuit", "observable", "theta",
                       "shots", "repetitions", "hessian_repetitions", "steps",
                       "estimators", "lambdas", "scaled_optimal", "orders",
                       "fit_min_shots", "samples", "metric_diagonal", "runs"},
                      "config");
    using detail::get;
    ExperimentConfig c;
    c.experiment = get<std::string>(j, "experiment", "");
    if (seed_override) {
        j["seed"] = *seed_override;
    }
    if (detail::field(j, "seed") == nullptr) {
        throw Error(ErrorKind::Parse, "config: seed is required");
    }
    c.seed = get<std::uint64_t>(j, "seed", 0);
    c.circuit = get<std::string>(j, "circuit", "reference");
    if (!c.usesReference() && !base_dir.empty() &&
        std::filesystem::path(c.circuit).is_relative()) {
        c.circuit = (base_dir / c.circuit).string();
    }
    c.observable = get<std::string>(j, "observable", "");
    c.theta = get<std::vector<double>>(
        j, "theta", std::vector<double>(kRefTheta.begin(), kRefTheta.end()));
    c.shots = get<std::vector<std::uint64_t>>(j, "shots", {1000});
    c.repetitions = get<std::size_t>(j, "repetitions", 1000);
    c.hessian_repetitions = get<std::size_t>(j, "hessian_repetitions", 100);
    c.steps = detail::parseSteps(j);
    c.estimators = get<std::vector<std::string>>(
        j, "estimators",
        {"central-diff", "forward-diff", "param-shift", "scaled-param-shift"});
    c.lambdas = get<std::vector<double>>(j, "lambdas", {});
    c.scaled_optimal = get<bool>(j, "scaled_optimal", true);
    c.orders = get<std::vector<std::size_t>>(j, "orders", {1, 2});
    c.fit_min_shots = get<std::uint64_t>(j, "fit_min_shots", 100);
    c.samples = get<std::size_t>(j, "samples", 100);
    const auto diag = get<std::string>(j, "metric_diagonal", "pi");
    if (diag == "pi") {
        c.metric_diagonal = MetricDiag::PiShift;
    } else if (diag == "half-pi") {
        c.metric_diagonal = MetricDiag::HalfPiShift;
    } else {
        throw Error(ErrorKind::Parse, "config: unknown metric_diagonal '" + diag + "'");
    }
    if (const auto *runs = detail::field(j, "runs")) {
        for (const auto &r : *runs) {
            c.runs.push_back(detail::parseRun(r, c.seed, c.theta));
        }
    }
    if (c.shots.empty() || c.steps.empty() || c.estimators.empty() ||
        c.orders.empty()) {
        throw Error(ErrorKind::InvalidArgument, "config: grids must be non-empty");
    }
    c.hash = fnv1a64(j.dump());
    return c;
}

inline ExperimentConfig loadConfig(const std::string &path,
                                   std::optional<std::uint64_t> seed_override = {}) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::Io, "cannot open config '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parseConfig(ss.str(), seed_override,
                       std::filesystem::path(path).parent_path());
}

/// Circuit and observable selected by the configuration.
inline std::pair<Circuit, Observable> configCircuit(const ExperimentConfig &c) {
    if (c.usesReference()) {
        return {referenceCircuit(), referenceObservable()};
    }
    Circuit circ = loadCircuitFile(c.circuit);
    if (c.observable.empty()) {
        throw Error(ErrorKind::Parse, "config: file circuits need an observable");
    }
    if (c.observable == "zero") {
        return {std::move(circ), ZeroProjector{}};
    }
    auto p = PauliString::parse(c.observable);
    if (p.numWires() != circ.numWires()) {
        throw Error(ErrorKind::InvalidCircuit, "observable width mismatch");
    }
    return {std::move(circ), SinglePauli{p}};
}

} // namespace vqderiv::bench
