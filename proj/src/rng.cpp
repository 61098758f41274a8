// Copyright 2026 The qthermo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qthermo/rng.hpp"

#include <Eigen/QR>

#include <cmath>

namespace qthermo {

int Rng::uniform_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next_u64() % span);
}

double Rng::normal() {
    // Box-Muller; u1 bounded away from zero.
    double u1 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

ComplexMatrix Rng::ginibre(Eigen::Index rows, Eigen::Index cols) {
    ComplexMatrix g(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            g(i, j) = complex_normal();
        }
    }
    return g;
}

HermitianOperator Rng::random_hermitian(Eigen::Index d, double scale) {
    const ComplexMatrix g = ginibre(d, d);
    return HermitianOperator(scale * 0.5 * (g + g.adjoint()));
}

ComplexMatrix Rng::random_unitary(Eigen::Index d) {
    // QR of a Ginibre matrix, phases fixed so the distribution is Haar.
    const ComplexMatrix g = ginibre(d, d);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < d; ++k) {
        const Complex diag = r(k, k);
        const double a = std::abs(diag);
        q.col(k) *= (a > 0.0 ? diag / a : Complex(1.0, 0.0));
    }
    return q;
}

DensityMatrix Rng::random_density(Eigen::Index d) {
    const ComplexMatrix g = ginibre(d, d);
    ComplexMatrix w = g * g.adjoint();
    w /= w.trace().real();
    return DensityMatrix(std::move(w));
}

DensityMatrix Rng::random_pure(Eigen::Index d) {
    ComplexVector psi(d);
    for (Eigen::Index k = 0; k < d; ++k) psi(k) = complex_normal();
    psi.normalize();
    return DensityMatrix(psi * psi.adjoint());
}

RealVector Rng::random_probabilities(Eigen::Index n) {
    RealVector p(n);
    for (Eigen::Index k = 0; k < n; ++k) p(k) = -std::log(1.0 - uniform());
    p /= p.sum();
    return p;
}

} // namespace qthermo
