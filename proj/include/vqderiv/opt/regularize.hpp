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
 * Making curvature matrices safely positive before inversion.
 */
#pragma once

#include <algorithm>
#include <string>

#include <Eigen/Dense>

#include "vqderiv/error.hpp"

namespace vqderiv {

enum class Regularizer {
    Shift,  ///< A + eps I
    Clamp,  ///< eigenvalues lambda_k -> max(lambda_k, eps), eigenvectors kept
    MaxEig, ///< max_k(lambda_k) I
};

inline const char *toString(Regularizer r) {
    switch (r) {
    case Regularizer::Shift:
        return "shift";
    case Regularizer::Clamp:
        return "clamp";
    case Regularizer::MaxEig:
        return "max-eig";
    }
    return "?";
}

inline Regularizer parseRegularizer(const std::string &name) {
    if (name == "shift") {
        return Regularizer::Shift;
    }
    if (name == "clamp") {
        return Regularizer::Clamp;
    }
    if (name == "max-eig") {
        return Regularizer::MaxEig;
    }
    throw Error(ErrorKind::Parse, "unknown regularizer '" + name + "'");
}

inline Eigen::MatrixXd regularize(const Eigen::MatrixXd &a, Regularizer method,
                                  double eps) {
    if (a.rows() != a.cols()) {
        throw Error(ErrorKind::InvalidArgument, "matrix must be square");
    }
    if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-8) {
        throw Error(ErrorKind::InvalidArgument, "matrix must be symmetric");
    }
    if (method != Regularizer::MaxEig && !(eps > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "epsilon must be > 0");
    }
    const Eigen::MatrixXd sym = 0.5 * (a + a.transpose());
    const auto n = sym.rows();
    if (method == Regularizer::Shift) {
        return sym + eps * Eigen::MatrixXd::Identity(n, n);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
    const Eigen::VectorXd &lambda = eig.eigenvalues();
    if (method == Regularizer::MaxEig) {
        const double top = lambda.maxCoeff();
        if (!(top > 0.0)) {
            throw Error(ErrorKind::NonPositiveSpectrum,
                        "largest eigenvalue is not positive");
        }
        return top * Eigen::MatrixXd::Identity(n, n);
    }
    if (lambda.minCoeff() >= eps) {
        return sym;
    }
    const Eigen::VectorXd clamped = lambda.cwiseMax(eps);
    return eig.eigenvectors() * clamped.asDiagonal() *
           eig.eigenvectors().transpose();
}

} // namespace vqderiv
