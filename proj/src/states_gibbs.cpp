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

#include "qthermo/states_gibbs.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

namespace qthermo {

namespace {

constexpr double kSupportThreshold = 1e-12;

double clamp_population(double p) { return p > 0.0 ? p : 0.0; }

double entropy_of_populations(const RealVector& p) {
    double s = 0.0;
    for (Eigen::Index k = 0; k < p.size(); ++k) {
        const double x = clamp_population(p(k));
        if (x > 0.0) s -= x * std::log(x);
    }
    return s < 0.0 ? 0.0 : s;
}

} // namespace

DensityMatrix::DensityMatrix(ComplexMatrix matrix, const Tolerances& tol)
    : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
        throw ValidationError("DensityMatrix: matrix must be square and non-empty");
    }
    require_finite(matrix_, "DensityMatrix");
    const double dev = hermiticity_deviation(matrix_);
    if (dev > tol.hermiticity) {
        std::ostringstream os;
        os << "DensityMatrix: not Hermitian, max |rho - rho^dagger| = " << dev;
        throw ValidationError(os.str());
    }
    matrix_ = 0.5 * (matrix_ + matrix_.adjoint().eval());
    const double tr_err = std::abs(matrix_.trace().real() - 1.0) +
                          std::abs(matrix_.trace().imag());
    if (tr_err > tol.unit_trace) {
        std::ostringstream os;
        os << "DensityMatrix: trace deviates from 1 by " << tr_err;
        throw ValidationError(os.str());
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(matrix_,
                                                        Eigen::EigenvaluesOnly);
    const double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < tol.psd_floor) {
        std::ostringstream os;
        os << "DensityMatrix: eigenvalue " << min_eig << " below floor "
           << tol.psd_floor;
        throw ValidationError(os.str());
    }
}

GibbsState gibbs_state(const HermitianOperator& h, InverseTemperature beta) {
    const EigenSystem es = eig_hermitian(h);
    const Eigen::Index d = h.dim();
    // Shift so the largest Boltzmann exponent is exactly zero.
    const double ref =
        beta.beta >= 0.0 ? es.eigenvalues.minCoeff() : es.eigenvalues.maxCoeff();
    RealVector w(d);
    for (Eigen::Index k = 0; k < d; ++k) {
        w(k) = std::exp(-beta.beta * (es.eigenvalues(k) - ref));
    }
    const double z_shifted = w.sum();
    const double log_z = std::log(z_shifted) - beta.beta * ref;
    ComplexMatrix rho = es.eigenvectors *
                        (w / z_shifted).cast<Complex>().asDiagonal() *
                        es.eigenvectors.adjoint();
    return GibbsState{DensityMatrix(std::move(rho)), log_z};
}

EntropyValue von_neumann_entropy(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho.matrix(),
                                                        Eigen::EigenvaluesOnly);
    const RealVector& lam = solver.eigenvalues();
    const double floor = default_tolerances().psd_floor;
    if (lam.minCoeff() < floor) {
        std::ostringstream os;
        os << "von_neumann_entropy: eigenvalue " << lam.minCoeff()
           << " below floor " << floor;
        throw ValidationError(os.str());
    }
    return EntropyValue{entropy_of_populations(lam), false};
}

EntropyValue relative_entropy(const DensityMatrix& rho, const DensityMatrix& mu) {
    if (rho.dim() != mu.dim()) {
        std::ostringstream os;
        os << "relative_entropy: dimension mismatch " << rho.dim() << " vs "
           << mu.dim();
        throw ValidationError(os.str());
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> rho_eig(rho.matrix(),
                                                         Eigen::EigenvaluesOnly);
    double tr_rho_ln_rho = 0.0;
    for (Eigen::Index k = 0; k < rho.dim(); ++k) {
        const double p = clamp_population(rho_eig.eigenvalues()(k));
        if (p > 0.0) tr_rho_ln_rho += p * std::log(p);
    }

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> mu_eig(mu.matrix());
    const ComplexMatrix rho_in_mu_basis = mu_eig.eigenvectors().adjoint() *
                                          rho.matrix() * mu_eig.eigenvectors();
    double tr_rho_ln_mu = 0.0;
    double weight_outside_support = 0.0;
    for (Eigen::Index k = 0; k < mu.dim(); ++k) {
        const double q = mu_eig.eigenvalues()(k);
        const double diag = rho_in_mu_basis(k, k).real();
        if (q < kSupportThreshold) {
            weight_outside_support += clamp_population(diag);
        } else {
            tr_rho_ln_mu += diag * std::log(q);
        }
    }
    if (weight_outside_support > kSupportThreshold) {
        return EntropyValue{0.0, true};
    }
    double s = tr_rho_ln_rho - tr_rho_ln_mu;
    if (s < 0.0) s = 0.0;  // exact result is nonnegative
    return EntropyValue{s, false};
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) {
        throw ValidationError("trace_distance: dimension mismatch");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
        rho.matrix() - sigma.matrix(), Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

double gibbs_mean_energy(const HermitianOperator& h, InverseTemperature beta) {
    const EigenSystem es = eig_hermitian(h);
    const Eigen::Index d = h.dim();
    const double ref =
        beta.beta >= 0.0 ? es.eigenvalues.minCoeff() : es.eigenvalues.maxCoeff();
    double z = 0.0;
    double num = 0.0;
    for (Eigen::Index k = 0; k < d; ++k) {
        const double w = std::exp(-beta.beta * (es.eigenvalues(k) - ref));
        z += w;
        num += w * es.eigenvalues(k);
    }
    return num / z;
}

InverseTemperature beta_of_energy(const HermitianOperator& h, double u) {
    const EigenSystem es = eig_hermitian(h);
    const double lo = es.eigenvalues.minCoeff();
    const double hi = es.eigenvalues.maxCoeff();
    const double span = hi - lo;
    if (span <= 0.0) {
        throw DomainError("beta_of_energy: degenerate spectrum, the open energy "
                          "interval is empty");
    }
    if (u <= lo || u >= hi) {
        std::ostringstream os;
        os << "beta_of_energy: u = " << u << " outside (" << lo << ", " << hi
           << ")";
        throw DomainError(os.str());
    }
    const double edge = 1e-12 * std::max(1.0, span);
    if (u - lo < edge || hi - u < edge) {
        std::ostringstream os;
        os << "beta_of_energy: u = " << u
           << " too close to a spectral endpoint, temperature diverges";
        throw DomainError(os.str());
    }

    auto mean_at = [&](double beta) {
        const double ref = beta >= 0.0 ? lo : hi;
        double z = 0.0;
        double num = 0.0;
        for (Eigen::Index k = 0; k < es.eigenvalues.size(); ++k) {
            const double w = std::exp(-beta * (es.eigenvalues(k) - ref));
            z += w;
            num += w * es.eigenvalues(k);
        }
        return num / z;
    };

    // mean_at is strictly decreasing; expand a bracket from beta = 0.
    double b_lo;
    double b_hi;
    const double mean0 = mean_at(0.0);
    if (u < mean0) {
        b_lo = 0.0;
        b_hi = 1.0;
        while (mean_at(b_hi) > u) {
            b_hi *= 2.0;
            if (b_hi > 1e9) {
                throw NumericalError("beta_of_energy: bracket expansion failed");
            }
        }
    } else {
        b_hi = 0.0;
        b_lo = -1.0;
        while (mean_at(b_lo) < u) {
            b_lo *= 2.0;
            if (b_lo < -1e9) {
                throw NumericalError("beta_of_energy: bracket expansion failed");
            }
        }
    }

    const double target_tol = 1e-10 * span;
    double beta = 0.5 * (b_lo + b_hi);
    for (int iter = 0; iter < 400; ++iter) {
        beta = 0.5 * (b_lo + b_hi);
        const double m = mean_at(beta);
        if (std::abs(m - u) <= target_tol &&
            (b_hi - b_lo) <= 1e-13 * std::max(1.0, std::abs(beta))) {
            break;
        }
        if (m > u) {
            b_lo = beta;
        } else {
            b_hi = beta;
        }
    }
    return InverseTemperature{beta};
}

EntropyValue gibbs_entropy_at_energy(const HermitianOperator& h, double e) {
    const InverseTemperature beta = beta_of_energy(h, e);
    return von_neumann_entropy(gibbs_state(h, beta).state);
}

} // namespace qthermo
