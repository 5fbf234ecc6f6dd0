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
 * Exact expectation values, overlaps and the finite-shot sampling model.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <span>
#include <variant>

#include "vqderiv/error.hpp"
#include "vqderiv/sim/circuit.hpp"
#include "vqderiv/sim/observable.hpp"
#include "vqderiv/sim/philox.hpp"
#include "vqderiv/sim/statevector.hpp"

namespace vqderiv {

/// U(params)|0...0>.
inline StateVector runCircuit(const Circuit &circuit,
                              std::span<const double> params) {
    circuit.checkParams(params);
    StateVector psi(circuit.numWires());
    for (const auto &g : circuit.gates()) {
        psi.applyGate(g, params);
    }
    return psi;
}

inline double expectation(const StateVector &psi, const Observable &obs) {
    if (const auto *sp = std::get_if<SinglePauli>(&obs)) {
        if (sp->pauli.numWires() != psi.numWires()) {
            throw Error(ErrorKind::InvalidArgument,
                        "observable width does not match the state");
        }
        StateVector image = psi;
        image.applyPauli(sp->pauli);
        return psi.inner(image).real();
    }
    return std::norm(psi[0]);
}

inline double expectation(const Circuit &circuit,
                          std::span<const double> params,
                          const Observable &obs) {
    return expectation(runCircuit(circuit, params), obs);
}

/// |<psi(params2)|psi(params)>|^2.
inline double overlapProbability(const Circuit &circuit,
                                 std::span<const double> params,
                                 std::span<const double> params2) {
    circuit.checkParams(params2);
    const StateVector a = runCircuit(circuit, params);
    const StateVector b = runCircuit(circuit, params2);
    return std::norm(b.inner(a));
}

/// Parameter-free circuit U(params2)^dagger U(params); measuring the
/// all-zeros string on it gives the overlap probability.
inline Circuit overlapCircuit(const Circuit &circuit,
                              std::span<const double> params,
                              std::span<const double> params2) {
    return circuit.bind(params).then(circuit.bind(params2).inverse());
}

/// sigma_0^2 = <M^2> - <M>^2 for an exact expectation value `f`.
inline double singleShotVariance(double f, const Observable &obs) {
    if (std::holds_alternative<SinglePauli>(obs)) {
        return std::max(0.0, 1.0 - f * f);
    }
    return std::max(0.0, f * (1.0 - f));
}

inline double singleShotVariance(const Circuit &circuit,
                                 std::span<const double> params,
                                 const Observable &obs) {
    return singleShotVariance(expectation(circuit, params, obs), obs);
}

/// Mean of `shots.shots` eigenvalue outcomes of an observable whose exact
/// expectation is `f`. The count of +1 (or 1) outcomes is drawn from the
/// exact binomial law, which matches N independent single-shot draws.
inline double sampleMean(double f, const Observable &obs,
                         const ShotModel &shots,
                         std::uint32_t substream = 0) {
    if (shots.shots == 0) {
        throw Error(ErrorKind::InvalidShotCount, "shot count must be >= 1");
    }
    const bool pauli = std::holds_alternative<SinglePauli>(obs);
    const double p = std::clamp(pauli ? (1.0 + f) / 2.0 : f, 0.0, 1.0);
    const auto n = static_cast<std::int64_t>(shots.shots);
    std::int64_t hits = 0;
    if (p >= 1.0) {
        hits = n;
    } else if (p > 0.0) {
        Philox4x32 engine(shots.seed, shots.stream, substream);
        std::binomial_distribution<std::int64_t> dist(n, p);
        hits = dist(engine);
    }
    const double frac = static_cast<double>(hits) / static_cast<double>(n);
    return pauli ? 2.0 * frac - 1.0 : frac;
}

inline double sampleExpectation(const Circuit &circuit,
                                std::span<const double> params,
                                const Observable &obs, const ShotModel &shots) {
    if (shots.shots == 0) {
        throw Error(ErrorKind::InvalidShotCount, "shot count must be >= 1");
    }
    return sampleMean(expectation(circuit, params, obs), obs, shots);
}

} // namespace vqderiv
