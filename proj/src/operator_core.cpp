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

#include "qthermo/operator_core.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <sstream>
#include <vector>

namespace qthermo {

void require_finite(const ComplexMatrix& m, const char* what) {
    if (!m.allFinite()) {
        std::ostringstream os;
        os << what << ": matrix has non-finite entries";
        throw ValidationError(os.str());
    }
}

double hermiticity_deviation(const ComplexMatrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianOperator::HermitianOperator(ComplexMatrix matrix, const Tolerances& tol)
    : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols()) {
        std::ostringstream os;
        os << "HermitianOperator: matrix is " << matrix_.rows() << "x"
           << matrix_.cols() << ", expected square";
        throw ValidationError(os.str());
    }
    if (matrix_.rows() == 0) {
        throw ValidationError("HermitianOperator: empty matrix");
    }
    require_finite(matrix_, "HermitianOperator");
    const double dev = hermiticity_deviation(matrix_);
    if (dev > tol.hermiticity) {
        std::ostringstream os;
        os << "HermitianOperator: not Hermitian, max |A - A^dagger| = " << dev
           << " exceeds " << tol.hermiticity;
        throw ValidationError(os.str());
    }
    // Work with the exactly Hermitian part from here on.
    matrix_ = 0.5 * (matrix_ + matrix_.adjoint().eval());
}

EigenSystem eig_hermitian(const HermitianOperator& a) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a.matrix());
    if (solver.info() != Eigen::Success) {
        throw NumericalError("eig_hermitian: eigensolver failed to converge");
    }
    return EigenSystem{solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix expm_hermitian(const HermitianOperator& a, Complex scale) {
    if (!std::isfinite(scale.real()) || !std::isfinite(scale.imag())) {
        throw ValidationError("expm_hermitian: non-finite scale");
    }
    const EigenSystem es = eig_hermitian(a);
    const Eigen::Index d = a.dim();
    double max_re = 0.0;
    for (Eigen::Index k = 0; k < d; ++k) {
        max_re = std::max(max_re, (scale * es.eigenvalues(k)).real());
    }
    if (max_re > 700.0) {
        std::ostringstream os;
        os << "expm_hermitian: Re(scale*lambda) = " << max_re
           << " would overflow; shift the spectrum before exponentiating";
        throw NumericalError(os.str());
    }
    ComplexVector w(d);
    for (Eigen::Index k = 0; k < d; ++k) {
        w(k) = std::exp(scale * es.eigenvalues(k));
    }
    return es.eigenvectors * w.asDiagonal() * es.eigenvectors.adjoint();
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_finite(a, "tensor (left factor)");
    require_finite(b, "tensor (right factor)");
    return Eigen::kroneckerProduct(a, b);
}

ComplexMatrix partial_trace(const ComplexMatrix& rho12, Eigen::Index d1,
                            Eigen::Index d2, int keep) {
    if (d1 <= 0 || d2 <= 0) {
        throw ValidationError("partial_trace: subsystem dimensions must be positive");
    }
    if (rho12.rows() != d1 * d2 || rho12.cols() != d1 * d2) {
        std::ostringstream os;
        os << "partial_trace: matrix is " << rho12.rows() << "x" << rho12.cols()
           << ", expected " << d1 * d2 << "x" << d1 * d2;
        throw ValidationError(os.str());
    }
    if (keep != 1 && keep != 2) {
        throw ValidationError("partial_trace: keep must be 1 or 2");
    }
    require_finite(rho12, "partial_trace");
    if (keep == 1) {
        ComplexMatrix out = ComplexMatrix::Zero(d1, d1);
        for (Eigen::Index i = 0; i < d1; ++i) {
            for (Eigen::Index j = 0; j < d1; ++j) {
                Complex s = 0.0;
                for (Eigen::Index b = 0; b < d2; ++b) {
                    s += rho12(i * d2 + b, j * d2 + b);
                }
                out(i, j) = s;
            }
        }
        return out;
    }
    ComplexMatrix out = ComplexMatrix::Zero(d2, d2);
    for (Eigen::Index a = 0; a < d2; ++a) {
        for (Eigen::Index b = 0; b < d2; ++b) {
            Complex s = 0.0;
            for (Eigen::Index i = 0; i < d1; ++i) {
                s += rho12(i * d2 + a, i * d2 + b);
            }
            out(a, b) = s;
        }
    }
    return out;
}

ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

ComplexMatrix pauli_y() {
    ComplexMatrix m(2, 2);
    m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    return m;
}

ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

ComplexMatrix identity_matrix(Eigen::Index d) {
    return ComplexMatrix::Identity(d, d);
}

ComplexMatrix embed_site_operator(const ComplexMatrix& op, std::size_t site,
                                  const std::vector<Eigen::Index>& dims) {
    if (site >= dims.size()) {
        throw ValidationError("embed_site_operator: site out of range");
    }
    if (op.rows() != dims[site] || op.cols() != dims[site]) {
        throw ValidationError("embed_site_operator: operator does not match site dimension");
    }
    ComplexMatrix out = ComplexMatrix::Identity(1, 1);
    for (std::size_t s = 0; s < dims.size(); ++s) {
        out = tensor(out, s == site ? op : identity_matrix(dims[s]));
    }
    return out;
}

} // namespace qthermo
