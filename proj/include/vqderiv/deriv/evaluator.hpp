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
 * Expectation-value oracles consumed by the derivative rules.
 *
 * An evaluator maps a parameter vector to f(theta) (exact) or to a
 * finite-shot estimate of it (sampled). All derivative rules are templates
 * over anything satisfying ExpectationFunction, so tests can pass plain
 * lambdas.
 */
#pragma once

#include <concepts>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "vqderiv/error.hpp"
#include "vqderiv/sim/simulator.hpp"

namespace vqderiv {

template <class E>
concept ExpectationFunction = requires(E &e, std::span<const double> theta) {
    { e(theta) } -> std::convertible_to<double>;
};

/// Exact-value memo shared between an exact evaluator and the sampled
/// evaluators derived from it. Sampling noise is never memoised.
class ExactMemo {
  public:
    template <class F> double get(std::span<const double> theta, F &&compute) {
        std::vector<double> key(theta.begin(), theta.end());
        {
            std::lock_guard lock(mutex_);
            if (auto it = values_.find(key); it != values_.end()) {
                return it->second;
            }
        }
        const double v = compute();
        std::lock_guard lock(mutex_);
        if (values_.size() >= kMaxEntries) {
            values_.clear();
        }
        values_.emplace(std::move(key), v);
        return v;
    }

  private:
    static constexpr std::size_t kMaxEntries = std::size_t{1} << 16;
    std::mutex mutex_;
    std::map<std::vector<double>, double> values_;
};

class Evaluator {
  public:
    /// f(theta) = <psi(theta)|M|psi(theta)>.
    static Evaluator exact(Circuit circuit, Observable obs) {
        Evaluator ev;
        ev.circuit_ = std::make_shared<const Circuit>(std::move(circuit));
        ev.obs_ = std::move(obs);
        ev.memo_ = std::make_shared<ExactMemo>();
        return ev;
    }

    /// f(theta) = |<psi(reference)|psi(theta)>|^2, measured as the
    /// all-zeros probability of U(reference)^dagger U(theta).
    static Evaluator overlap(Circuit circuit, std::span<const double> reference) {
        Evaluator ev;
        ev.reference_ = std::make_shared<const StateVector>(
            runCircuit(circuit, reference));
        ev.circuit_ = std::make_shared<const Circuit>(std::move(circuit));
        ev.obs_ = ZeroProjector{};
        ev.memo_ = std::make_shared<ExactMemo>();
        return ev;
    }

    /// Finite-shot version sharing this evaluator's exact memo. Call k
    /// draws from substream k of `shots`, so repeated calls are
    /// independent and the whole call sequence is reproducible.
    [[nodiscard]] Evaluator sampled(ShotModel shots) const {
        if (shots.shots == 0) {
            throw Error(ErrorKind::InvalidShotCount, "shot count must be >= 1");
        }
        Evaluator ev = *this;
        ev.shots_ = shots;
        ev.calls_ = 0;
        return ev;
    }

    [[nodiscard]] Evaluator exactView() const {
        Evaluator ev = *this;
        ev.shots_.reset();
        ev.calls_ = 0;
        return ev;
    }

    double operator()(std::span<const double> theta) {
        const double f = exactValue(theta);
        ++calls_;
        if (!shots_) {
            return f;
        }
        return sampleMean(f, obs_, *shots_,
                          static_cast<std::uint32_t>(calls_ - 1));
    }

    [[nodiscard]] double exactValue(std::span<const double> theta) const {
        circuit_->checkParams(theta);
        return memo_->get(theta, [&] {
            const StateVector psi = runCircuit(*circuit_, theta);
            if (reference_) {
                return std::norm(reference_->inner(psi));
            }
            return expectation(psi, obs_);
        });
    }

    [[nodiscard]] double singleShotVarianceAt(std::span<const double> theta) const {
        return singleShotVariance(exactValue(theta), obs_);
    }

    [[nodiscard]] bool isExact() const { return !shots_.has_value(); }
    [[nodiscard]] const std::optional<ShotModel> &shots() const { return shots_; }
    [[nodiscard]] std::uint64_t calls() const { return calls_; }
    [[nodiscard]] std::size_t numParams() const { return circuit_->numParams(); }
    [[nodiscard]] const Circuit &circuit() const { return *circuit_; }
    [[nodiscard]] const Observable &observable() const { return obs_; }

  private:
    Evaluator() = default;

    std::shared_ptr<const Circuit> circuit_;
    std::shared_ptr<const StateVector> reference_;
    Observable obs_;
    std::shared_ptr<ExactMemo> memo_;
    std::optional<ShotModel> shots_;
    std::uint64_t calls_ = 0;
};

/// Reuses the value at an identical parameter vector within one estimator
/// or tensor build; counts distinct evaluations.
template <ExpectationFunction E> class EvaluationCache {
  public:
    explicit EvaluationCache(E &inner) : inner_(inner) {}

    double operator()(std::span<const double> theta) {
        std::vector<double> key(theta.begin(), theta.end());
        if (auto it = values_.find(key); it != values_.end()) {
            return it->second;
        }
        const double v = inner_(theta);
        values_.emplace(std::move(key), v);
        return v;
    }

    [[nodiscard]] std::size_t distinctEvaluations() const {
        return values_.size();
    }

  private:
    E &inner_;
    std::map<std::vector<double>, double> values_;
};

} // namespace vqderiv
