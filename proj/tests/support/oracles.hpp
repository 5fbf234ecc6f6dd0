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
 * Independent reference implementations used as test oracles: a dense
 * unitary simulator built from Kronecker products, nested finite
 * differences, and closed forms for product-state circuits.
 */
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "vqderiv/sim/circuit.hpp"
#include "vqderiv/sim/observable.hpp"

namespace oracle {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using cd = std::complex<double>;

inline Mat pauliMatrix(char p) {
    Mat m(2, 2);
    switch (p) {
    case 'X':
        m << 0, 1, 1, 0;
        break;
    case 'Y':
        m << 0, cd(0, -1), cd(0, 1), 0;
        break;
    case 'Z':
        m << 1, 0, 0, -1;
        break;
    default:
        m = Mat::Identity(2, 2);
    }
    return m;
}

inline Mat kron(const Mat &a, const Mat &b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// Wire 0 is the leftmost Kronecker factor.
inline Mat pauliString(const std::string &s) {
    Mat out = Mat::Identity(1, 1);
    for (char c : s) {
        out = kron(out, pauliMatrix(c));
    }
    return out;
}

inline Mat embed1(std::size_t n, std::size_t wire, const Mat &g) {
    Mat out = Mat::Identity(1, 1);
    for (std::size_t w = 0; w < n; ++w) {
        out = kron(out, w == wire ? g : Mat::Identity(2, 2));
    }
    return out;
}

inline Mat cnotMatrix(std::size_t n, std::size_t control, std::size_t target) {
    Mat p0(2, 2);
    p0 << 1, 0, 0, 0;
    Mat p1(2, 2);
    p1 << 0, 0, 0, 1;
    Mat a = Mat::Identity(1, 1);
    Mat b = Mat::Identity(1, 1);
    for (std::size_t w = 0; w < n; ++w) {
        a = kron(a, w == control ? p0 : Mat::Identity(2, 2));
        b = kron(b, w == control ? p1 : (w == target ? pauliMatrix('X')
                                                      : Mat::Identity(2, 2)));
    }
    return a + b;
}

/// Matrix exponential exp(-i a P / 2) computed by Eigen's eigensolver.
inline Mat rotation(const Mat &p, double a) {
    Eigen::ComplexEigenSolver<Mat> es(p);
    Vec phases = es.eigenvalues().unaryExpr(
        [a](cd l) { return std::exp(cd(0, -a / 2) * l); });
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().inverse();
}

inline Mat gateMatrix(std::size_t n, const vqderiv::Gate &g,
                      std::span<const double> params) {
    using namespace vqderiv;
    if (const auto *r = std::get_if<Rotation>(&g)) {
        return rotation(pauliString(r->generator.str()), params[r->param]);
    }
    if (const auto *r = std::get_if<FixedRotation>(&g)) {
        return rotation(pauliString(r->generator.str()), r->angle);
    }
    if (const auto *c = std::get_if<Cnot>(&g)) {
        return cnotMatrix(n, c->control, c->target);
    }
    if (const auto *h = std::get_if<Hadamard>(&g)) {
        Mat hm(2, 2);
        hm << 1, 1, 1, -1;
        return embed1(n, h->wire, hm / std::sqrt(2.0));
    }
    const auto &u = std::get<DenseUnitary>(g);
    // Permute the dense block into place through basis states.
    const std::size_t dim = std::size_t{1} << n;
    const std::size_t k = u.wires.size();
    const std::size_t ldim = std::size_t{1} << k;
    Mat out = Mat::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    auto local = [&](std::size_t i) {
        std::size_t l = 0;
        for (std::size_t q = 0; q < k; ++q) {
            l = (l << 1) | ((i >> (n - 1 - u.wires[q])) & 1U);
        }
        return l;
    };
    auto withLocal = [&](std::size_t i, std::size_t l) {
        for (std::size_t q = 0; q < k; ++q) {
            const std::size_t bit = std::size_t{1} << (n - 1 - u.wires[q]);
            i = ((l >> (k - 1 - q)) & 1U) ? (i | bit) : (i & ~bit);
        }
        return i;
    };
    for (std::size_t col = 0; col < dim; ++col) {
        const std::size_t lc = local(col);
        for (std::size_t lr = 0; lr < ldim; ++lr) {
            out(static_cast<Eigen::Index>(withLocal(col, lr)),
                static_cast<Eigen::Index>(col)) = u.matrix[lr * ldim + lc];
        }
    }
    return out;
}

inline Vec state(const vqderiv::Circuit &c, std::span<const double> params) {
    const std::size_t n = c.numWires();
    Vec psi = Vec::Zero(Eigen::Index{1} << n);
    psi(0) = 1.0;
    for (const auto &g : c.gates()) {
        psi = gateMatrix(n, g, params) * psi;
    }
    return psi;
}

inline double expectation(const vqderiv::Circuit &c, std::span<const double> params,
                          const std::string &pauli) {
    const Vec psi = state(c, params);
    return (psi.adjoint() * pauliString(pauli) * psi)(0, 0).real();
}

using Fn = std::function<double(std::span<const double>)>;

/// Central finite difference of any order by nesting, step h per index.
inline double centralFd(const Fn &f, std::vector<double> theta,
                        std::span<const std::size_t> idx, double h) {
    if (idx.empty()) {
        return f(theta);
    }
    const std::size_t j = idx.back();
    const auto rest = idx.first(idx.size() - 1);
    theta[j] += h;
    const double plus = centralFd(f, theta, rest, h);
    theta[j] -= 2 * h;
    const double minus = centralFd(f, theta, rest, h);
    return (plus - minus) / (2 * h);
}

/// f(theta) = prod_{j<4} cos(theta_j) and its derivatives.
struct ProductCos {
    static double f(std::span<const double> t) {
        return std::cos(t[0]) * std::cos(t[1]) * std::cos(t[2]) * std::cos(t[3]);
    }
    /// d/dtheta of cos(theta) raised to the k-th derivative.
    static double dcos(double x, int k) {
        switch (k % 4) {
        case 0:
            return std::cos(x);
        case 1:
            return -std::sin(x);
        case 2:
            return -std::cos(x);
        default:
            return std::sin(x);
        }
    }
    static double partial(std::span<const double> t, std::span<const std::size_t> idx) {
        int count[5] = {0, 0, 0, 0, 0};
        for (auto j : idx) {
            ++count[j];
        }
        if (count[4] > 0) {
            return 0.0;
        }
        double out = 1.0;
        for (std::size_t j = 0; j < 4; ++j) {
            out *= dcos(t[j], count[j]);
        }
        return out;
    }
};

/// Random circuit: Pauli-string rotations on every parameter interleaved
/// with fixed gates.
inline vqderiv::Circuit randomCircuit(std::mt19937_64 &rng, std::size_t n,
                                      std::size_t m) {
    using namespace vqderiv;
    std::uniform_int_distribution<int> letter(0, 3);
    std::uniform_int_distribution<std::size_t> wire(0, n - 1);
    std::uniform_int_distribution<int> kind(0, 3);
    std::uniform_real_distribution<double> angle(-M_PI, M_PI);
    std::vector<std::size_t> order(m);
    for (std::size_t i = 0; i < m; ++i) {
        order[i] = i;
    }
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<Gate> gates;
    for (std::size_t w = 0; w < n; ++w) {
        if (rng() % 2) {
            gates.emplace_back(Hadamard{w});
        }
    }
    for (std::size_t p : order) {
        std::string s(n, 'I');
        while (s == std::string(n, 'I')) {
            for (auto &ch : s) {
                ch = "IXYZ"[letter(rng)];
            }
        }
        gates.emplace_back(Rotation{PauliString::parse(s), p});
        switch (kind(rng)) {
        case 0:
            if (n > 1) {
                std::size_t a = wire(rng);
                std::size_t b = wire(rng);
                while (b == a) {
                    b = wire(rng);
                }
                gates.emplace_back(Cnot{a, b});
            }
            break;
        case 1:
            gates.emplace_back(Hadamard{wire(rng)});
            break;
        case 2: {
            std::string t(n, 'I');
            t[wire(rng)] = "XYZ"[letter(rng) % 3];
            gates.emplace_back(FixedRotation{PauliString::parse(t), angle(rng)});
            break;
        }
        default:
            break;
        }
    }
    return Circuit(n, std::move(gates));
}

inline std::string randomObservable(std::mt19937_64 &rng, std::size_t n) {
    std::string s(n, 'I');
    s[rng() % n] = "XYZ"[rng() % 3];
    return s;
}

} // namespace oracle
