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
#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "vqderiv/bench/experiments.hpp"

namespace {

using namespace vqderiv;
using namespace vqderiv::bench;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitCalibrationUnmet = 2;

std::string runExperiment(const std::string &command, const ExperimentConfig &c) {
    if (command == "mse-sweep") {
        return runMseSweep(c).table.str();
    }
    if (command == "scaling-sweep") {
        return runScalingSweep(c).table.str();
    }
    if (command == "hessian") {
        return runHessian(c).table.str();
    }
    if (command == "metric") {
        return runMetric(c).table.str();
    }
    if (command == "optimize") {
        return runOptimize(c).table.str();
    }
    return runReconstruct(c).table.str();
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Derivative-estimation experiments for variational circuits"};
    app.require_subcommand(1);

    std::string config_path;
    std::uint64_t seed = 0;
    std::string out_path;
    const std::pair<const char *, const char *> commands[] = {
        {"mse-sweep", "gradient MSE over a step grid at fixed shot counts"},
        {"scaling-sweep", "optimal-step MSE against shot count with power-law fits"},
        {"hessian", "per-entry Hessian estimator statistics"},
        {"metric", "exact and sampled metric tensor"},
        {"optimize", "optimizer traces"},
        {"reconstruct", "trigonometric surrogate against the exact cost"},
    };
    for (const auto &[name, help] : commands) {
        auto *sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "experiment configuration (JSON)")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--seed", seed, "random seed")->required();
        sub->add_option("--out", out_path, "output CSV path")->required();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitError;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        const ExperimentConfig c = loadConfig(config_path, seed);
        if (!c.experiment.empty() && c.experiment != command) {
            throw Error(ErrorKind::InvalidArgument,
                        "config is for '" + c.experiment + "', not '" + command + "'");
        }
        writeTextFile(out_path, runExperiment(command, c));
        if (c.usesReference() && !calibration().met) {
            std::cerr << "vqbench: calibration-unmet: reference circuit deviates by "
                      << calibration().deviation << " from tabulated values\n";
            return kExitCalibrationUnmet;
        }
    } catch (const std::exception &e) {
        std::cerr << "vqbench: " << command << ": " << e.what() << '\n';
        return kExitError;
    }
    return kExitOk;
}
