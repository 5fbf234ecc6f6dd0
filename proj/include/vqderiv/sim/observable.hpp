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
#pragma once

#include <cstdint>
#include <variant>

#include "vqderiv/sim/pauli.hpp"

namespace vqderiv {

/// A single Pauli string; eigenvalues +-1.
struct SinglePauli {
    PauliString pauli;
    friend bool operator==(const SinglePauli &, const SinglePauli &) = default;
};

/// |0...0><0...0|; eigenvalues {0, 1}.
struct ZeroProjector {
    friend bool operator==(const ZeroProjector &,
                           const ZeroProjector &) = default;
};

using Observable = std::variant<SinglePauli, ZeroProjector>;

/// Finite-shot measurement settings. (seed, stream) picks the random
/// sequence; equal models reproduce equal samples.
struct ShotModel {
    std::uint64_t shots = 1;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

} // namespace vqderiv
