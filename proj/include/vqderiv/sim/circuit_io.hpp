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
 * JSON circuit description files.
 *
 * Schema:
 *
 *     {
 *       "wires": <int 1..12>,
 *       "gates": [
 *         {"kind": "rot",     "generator": "XIZ", "param": <int>},
 *         {"kind": "rot",     "generator": "YII", "angle": <real>},
 *         {"kind": "cnot",    "wires": [control, target]},
 *         {"kind": "h",       "wires": [w]},
 *         {"kind": "unitary", "wires": [w0, ...],
 *                             "matrix": [[re, im], ...]}   // row-major
 *       ]
 *     }
 *
 * Angles and matrix entries are written with shortest round-trip precision
 * so write -> read reproduces the circuit exactly.
 */
#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "vqderiv/error.hpp"
#include "vqderiv/sim/circuit.hpp"

namespace vqderiv {

inline nlohmann::json circuitToJson(const Circuit &circuit) {
    nlohmann::json gates = nlohmann::json::array();
    for (const auto &g : circuit.gates()) {
        nlohmann::json e;
        std::visit(
            [&](const auto &gate) {
                using T = std::decay_t<decltype(gate)>;
                if constexpr (std::is_same_v<T, Rotation>) {
                    e = {{"kind", "rot"},
                         {"generator", gate.generator.str()},
                         {"param", gate.param}};
                } else if constexpr (std::is_same_v<T, FixedRotation>) {
                    e = {{"kind", "rot"},
                         {"generator", gate.generator.str()},
                         {"angle", gate.angle}};
                } else if constexpr (std::is_same_v<T, Cnot>) {
                    e = {{"kind", "cnot"},
                         {"wires", {gate.control, gate.target}}};
                } else if constexpr (std::is_same_v<T, Hadamard>) {
                    e = {{"kind", "h"}, {"wires", {gate.wire}}};
                } else {
                    nlohmann::json m = nlohmann::json::array();
                    for (const auto &z : gate.matrix) {
                        m.push_back({z.real(), z.imag()});
                    }
                    e = {{"kind", "unitary"},
                         {"wires", gate.wires},
                         {"matrix", std::move(m)}};
                }
            },
            g);
        gates.push_back(std::move(e));
    }
    return {{"wires", circuit.numWires()}, {"gates", std::move(gates)}};
}

inline Circuit circuitFromJson(const nlohmann::json &j) {
    try {
        const auto n = j.at("wires").get<std::size_t>();
        std::vector<Gate> gates;
        for (const auto &e : j.at("gates")) {
            const auto kind = e.at("kind").get<std::string>();
            if (kind == "rot") {
                auto gen =
                    PauliString::parse(e.at("generator").get<std::string>());
                if (e.contains("param")) {
                    gates.emplace_back(
                        Rotation{std::move(gen), e["param"].get<std::size_t>()});
                } else {
                    gates.emplace_back(FixedRotation{
                        std::move(gen), e.at("angle").get<double>()});
                }
            } else if (kind == "cnot") {
                const auto w = e.at("wires").get<std::vector<std::size_t>>();
                if (w.size() != 2) {
                    throw Error(ErrorKind::Parse, "cnot needs two wires");
                }
                gates.emplace_back(Cnot{w[0], w[1]});
            } else if (kind == "h") {
                const auto w = e.at("wires").get<std::vector<std::size_t>>();
                if (w.size() != 1) {
                    throw Error(ErrorKind::Parse, "h needs one wire");
                }
                gates.emplace_back(Hadamard{w[0]});
            } else if (kind == "unitary") {
                DenseUnitary u;
                u.wires = e.at("wires").get<std::vector<std::size_t>>();
                for (const auto &z : e.at("matrix")) {
                    u.matrix.emplace_back(z.at(0).get<double>(),
                                          z.at(1).get<double>());
                }
                gates.emplace_back(std::move(u));
            } else {
                throw Error(ErrorKind::Parse, "unknown gate kind '" + kind + "'");
            }
        }
        return Circuit(n, std::move(gates));
    } catch (const nlohmann::json::exception &ex) {
        throw Error(ErrorKind::Parse, ex.what());
    }
}

inline std::string writeCircuit(const Circuit &circuit) {
    return circuitToJson(circuit).dump(2) + "\n";
}

inline Circuit readCircuit(const std::string &text) {
    try {
        return circuitFromJson(nlohmann::json::parse(text));
    } catch (const nlohmann::json::parse_error &ex) {
        throw Error(ErrorKind::Parse, ex.what());
    }
}

inline Circuit loadCircuitFile(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::Io, "cannot open circuit file '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return readCircuit(ss.str());
}

} // namespace vqderiv
