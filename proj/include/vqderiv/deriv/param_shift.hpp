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
 * Parameter-shift rules of arbitrary order for rotation-like gates.
 *
 * For gates exp(-i theta H / 2) with H^2 = I, f is a trigonometric
 * polynomial of degree one in every parameter, so
 *
 *     d^d f / d theta_{j1}..d theta_{jd}
 *         = sum_k P(k) f(theta + k) / (2 sin s)^d,
 *
 * where k runs over the 2^d shift vectors sum_i +-s e_{ji} and P(k) is the
 * sign parity. The identity is exact for any s != 0 mod pi.
 *
 * With s = pi/2 a parameter shifted twice sits at 0 or +-pi, and
 * f(theta +- pi e_j) = f(theta + pi/2 e_j) + f(theta - pi/2 e_j) - f(theta),
 * so every tensor of any order reduces to the grid {0, +-pi/2}^m.
 */
#pragma once

#include <cmath>
#include <algorithm>
#include <cstdint>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include "vqderiv/deriv/shift_set.hpp"

namespace vqderiv {

inline constexpr double kHalfPi = std::numbers::pi / 2;

inline bool isHalfPi(double s) { return std::abs(s - kHalfPi) <= 1e-12; }

namespace detail {

/// Grid code in {-1, 0, 1, 2} (units of pi/2, mod 2pi) of a shift that is a
/// multiple of pi/2.
inline int quarterTurns(double shift) {
    const auto q = static_cast<long long>(std::llround(shift / kHalfPi));
    int r = static_cast<int>(((q % 4) + 4) % 4);
    return r == 3 ? -1 : r;
}

/// Expands every pi shift through the pi-shift identity and accumulates
/// the resulting {0, +-pi/2} grid terms.
inline void addReducedTerm(PlanBuilder &builder, const std::vector<double> &shift,
                           double weight) {
    const std::size_t m = shift.size();
    std::vector<int> codes(m);
    std::vector<std::size_t> pi_coords;
    for (std::size_t i = 0; i < m; ++i) {
        codes[i] = quarterTurns(shift[i]);
        if (codes[i] == 2) {
            pi_coords.push_back(i);
        }
    }
    // Each pi coordinate becomes (+pi/2, +1), (-pi/2, +1), (0, -1).
    static constexpr int kCode[3] = {1, -1, 0};
    static constexpr double kWeight[3] = {1.0, 1.0, -1.0};
    std::size_t combos = 1;
    for (std::size_t p = 0; p < pi_coords.size(); ++p) {
        combos *= 3;
    }
    for (std::size_t c = 0; c < combos; ++c) {
        std::vector<double> grid(m);
        double w = weight;
        std::size_t rest = c;
        for (auto coord : pi_coords) {
            const std::size_t pick = rest % 3;
            rest /= 3;
            codes[coord] = kCode[pick];
            w *= kWeight[pick];
        }
        for (std::size_t i = 0; i < m; ++i) {
            grid[i] = codes[i] * kHalfPi;
        }
        builder.add(std::move(grid), w);
    }
}

} // namespace detail

/// Evaluation plan of the order-d parameter-shift rule with shift s.
inline ShiftPlan psPlan(std::span<const std::size_t> indices, std::size_t m,
                        double s = kHalfPi) {
    checkIndices(indices, m);
    if (std::abs(std::sin(s)) < 1e-12) {
        throw Error(ErrorKind::SingularShift, "shift is a multiple of pi");
    }
    const std::size_t d = indices.size();
    const bool half_pi = isHalfPi(s);
    if (d > 2 && !half_pi) {
        throw Error(ErrorKind::UnsupportedShift,
                    "orders above 2 support only s = pi/2");
    }
    const double norm = std::pow(2.0 * std::sin(s), static_cast<double>(d));
    const ShiftSet set = shiftSet(indices, m, half_pi ? kHalfPi : s);
    PlanBuilder builder;
    for (const auto &v : set.vectors) {
        const double w = v.parity / norm;
        if (half_pi) {
            detail::addReducedTerm(builder, v.shift, w);
        } else {
            builder.add(v.shift, w);
        }
    }
    return builder.build();
}

template <ExpectationFunction E>
double psTensor(E &ev, std::span<const double> theta,
                std::span<const std::size_t> indices, double s = kHalfPi) {
    return applyPlan(ev, theta, psPlan(indices, theta.size(), s));
}

enum class DiagVariant {
    TwoEval,   ///< [f(theta + pi e_j) - f(theta)] / 2
    ThreeEval, ///< [f(theta + pi/2 e_j) - 2 f(theta) + f(theta - pi/2 e_j)] / 2
};

inline ShiftPlan hessianDiagPlan(std::size_t j, std::size_t m,
                                 DiagVariant variant) {
    if (j >= m) {
        throw Error(ErrorKind::InvalidArgument, "index out of range");
    }
    PlanBuilder b;
    std::vector<double> zero(m, 0.0);
    if (variant == DiagVariant::TwoEval) {
        auto plus_pi = zero;
        plus_pi[j] = std::numbers::pi;
        b.add(std::move(plus_pi), 0.5);
        b.add(zero, -0.5);
    } else {
        auto plus = zero;
        auto minus = zero;
        plus[j] = kHalfPi;
        minus[j] = -kHalfPi;
        b.add(std::move(plus), 0.5);
        b.add(std::move(minus), 0.5);
        b.add(zero, -1.0);
    }
    return b.build();
}

template <ExpectationFunction E>
double psHessianDiag(E &ev, std::span<const double> theta, std::size_t j,
                     DiagVariant variant) {
    return applyPlan(ev, theta, hessianDiagPlan(j, theta.size(), variant));
}

/// (f(theta + pi e_j), f(theta + pi/2 e_j) + f(theta - pi/2 e_j) - f(theta)).
template <ExpectationFunction E>
std::pair<double, double> piShiftIdentityCheck(E &ev,
                                               std::span<const double> theta,
                                               std::size_t j) {
    if (j >= theta.size()) {
        throw Error(ErrorKind::InvalidArgument, "index out of range");
    }
    std::vector<double> p(theta.begin(), theta.end());
    p[j] = theta[j] + std::numbers::pi;
    const double lhs = ev(std::span<const double>(p));
    p[j] = theta[j] + kHalfPi;
    const double fp = ev(std::span<const double>(p));
    p[j] = theta[j] - kHalfPi;
    const double fm = ev(std::span<const double>(p));
    const double f0 = ev(theta);
    return {lhs, fp + fm - f0};
}

/// min(2^d C(m+d-1, d), 3^m), saturating at UINT64_MAX.
inline std::uint64_t evalCount(std::uint64_t m, std::uint64_t d) {
    if (m < 1 || d < 1) {
        throw Error(ErrorKind::InvalidArgument, "m and d must be >= 1");
    }
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    auto mul = [&](std::uint64_t a, std::uint64_t b) -> std::uint64_t {
        if (a != 0 && b > kMax / a) {
            return kMax;
        }
        return a * b;
    };
    std::uint64_t cap = 1;
    for (std::uint64_t i = 0; i < m && cap != kMax; ++i) {
        cap = mul(cap, 3);
    }
    // C(m+d-1, d) built incrementally; exact while it fits.
    long double binom = 1.0L;
    for (std::uint64_t i = 1; i <= d; ++i) {
        binom = binom * static_cast<long double>(m - 1 + i) /
                static_cast<long double>(i);
    }
    const long double bound = std::ldexp(
        binom, static_cast<int>(std::min<std::uint64_t>(d, 16000)));
    if (bound >= static_cast<long double>(cap)) {
        return cap;
    }
    return static_cast<std::uint64_t>(bound + 0.5L);
}

} // namespace vqderiv
