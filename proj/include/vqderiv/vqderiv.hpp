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

#include "vqderiv/error.hpp"
#include "vqderiv/sim/circuit.hpp"
#include "vqderiv/sim/circuit_io.hpp"
#include "vqderiv/sim/observable.hpp"
#include "vqderiv/sim/pauli.hpp"
#include "vqderiv/sim/philox.hpp"
#include "vqderiv/sim/simulator.hpp"
#include "vqderiv/sim/statevector.hpp"

#include "vqderiv/deriv/evaluator.hpp"
#include "vqderiv/deriv/finite_diff.hpp"
#include "vqderiv/deriv/metric.hpp"
#include "vqderiv/deriv/param_shift.hpp"
#include "vqderiv/deriv/shift_set.hpp"
#include "vqderiv/deriv/tensor.hpp"
#include "vqderiv/deriv/trig_surrogate.hpp"

#include "vqderiv/stats/estimator.hpp"
#include "vqderiv/stats/report.hpp"
#include "vqderiv/stats/theory.hpp"

#include "vqderiv/opt/optimizer.hpp"
#include "vqderiv/opt/regularize.hpp"
