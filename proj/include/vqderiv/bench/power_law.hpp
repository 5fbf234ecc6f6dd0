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

#include <cmath>
#include <span>
#include <utility>

#include "vqderiv/error.hpp"

namespace vqderiv::bench {

/// value ~ prefactor * x^exponent, fitted by least squares in log-log space.
struct PowerLawFit {
    double exponent = 0.0;
    double prefactor = 0.0;
    double r_squared = 0.0;
    std::size_t points = 0;
};

inline PowerLawFit powerLawFit(std::span<const std::pair<double, double>> points) {
    if (points.size() < 3) {
        throw Error(ErrorKind::InvalidArgument, "power-law fit needs >= 3 points");
    }
    double sx = 0.0;
    double sy = 0.0;
    for (const auto &[x, y] : points) {
        if (!(x > 0.0) || !(y > 0.0)) {
            throw Error(ErrorKind::InvalidArgument,
                        "power-law fit needs positive coordinates");
        }
        sx += std::log(x);
        sy += std::log(y);
    }
    const double n = static_cast<double>(points.size());
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (const auto &[x, y] : points) {
        const double dx = std::log(x) - mx;
        const double dy = std::log(y) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) {
        throw Error(ErrorKind::InvalidArgument,
                    "power-law fit needs distinct abscissae");
    }
    PowerLawFit fit;
    fit.exponent = sxy / sxx;
    fit.prefactor = std::exp(my - fit.exponent * mx);
    double ss_res = 0.0;
    for (const auto &[x, y] : points) {
        const double r = std::log(y) - (std::log(fit.prefactor) +
                                        fit.exponent * std::log(x));
        ss_res += r * r;
    }
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    fit.points = points.size();
    return fit;
}

} // namespace vqderiv::bench
