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

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "qthermo/errors.hpp"
#include "qthermo/tolerances.hpp"

namespace qthermo {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Throws ValidationError on NaN/Inf entries.
void require_finite(const ComplexMatrix& m, const char* what);

// Max-abs deviation of m from its conjugate transpose.
double hermiticity_deviation(const ComplexMatrix& m);

/// A square operator equal to its conjugate transpose within tolerance.
/// Carries Hamiltonians and work observables.
class HermitianOperator {
public:
    explicit HermitianOperator(ComplexMatrix matrix,
                               const Tolerances& tol = default_tolerances());

    Eigen::Index dim() const { return matrix_.rows(); }
    const ComplexMatrix& matrix() const { return matrix_; }

private:
    ComplexMatrix matrix_;
};

struct EigenSystem {
    RealVector eigenvalues;      // ascending
    ComplexMatrix eigenvectors;  // columns; unitary
};

// A = V diag(lambda) V^dagger with lambda ascending.
EigenSystem eig_hermitian(const HermitianOperator& a);

// V diag(exp(scale * lambda)) V^dagger. Throws NumericalError when
// Re(scale * lambda) exceeds the double exponent range; shift the spectrum
// before exponentiating in that case.
ComplexMatrix expm_hermitian(const HermitianOperator& a, Complex scale);

// Kronecker product, subsystem 1 on the slow index:
// (A (x) B)[(i1*dB+i2),(j1*dB+j2)] = A(i1,j1) * B(i2,j2).
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

// Trace out one factor of a d1*d2 bipartite operator. keep is 1 or 2 and
// follows the tensor() index convention (subsystem 1 = slow index).
ComplexMatrix partial_trace(const ComplexMatrix& rho12, Eigen::Index d1,
                            Eigen::Index d2, int keep);

// 2x2 building blocks used throughout the experiments.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix identity_matrix(Eigen::Index d);

// op acting on `site` of a chain with local dimensions dims.
ComplexMatrix embed_site_operator(const ComplexMatrix& op, std::size_t site,
                                  const std::vector<Eigen::Index>& dims);

} // namespace qthermo
