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

#include "qthermo/operator_core.hpp"

namespace qthermo {

/// Positive semidefinite, unit-trace state. Validated on construction.
class DensityMatrix {
public:
    explicit DensityMatrix(ComplexMatrix matrix,
                           const Tolerances& tol = default_tolerances());

    Eigen::Index dim() const { return matrix_.rows(); }
    const ComplexMatrix& matrix() const { return matrix_; }

private:
    ComplexMatrix matrix_;
};

// k_B = 1 throughout; beta may be negative (bounded spectra).
struct InverseTemperature {
    double beta = 0.0;
};

// Entropies in nats. is_infinite only arises for relative entropy.
struct EntropyValue {
    double value = 0.0;
    bool is_infinite = false;
};

struct GibbsState {
    DensityMatrix state;
    double log_z;  // ln Tr exp(-beta H)
};

// exp(-beta H)/Z. Internally shifts the spectrum, so any finite beta works.
GibbsState gibbs_state(const HermitianOperator& h, InverseTemperature beta);

// -sum lambda ln lambda with 0 ln 0 := 0. Rejects eigenvalues below the
// PSD floor instead of clipping them.
EntropyValue von_neumann_entropy(const DensityMatrix& rho);

// Tr rho ln rho - Tr rho ln mu, evaluated in mu's eigenbasis. Infinite when
// rho carries weight > 1e-12 outside mu's support (mu-eigenvalues < 1e-12).
EntropyValue relative_entropy(const DensityMatrix& rho, const DensityMatrix& mu);

// (1/2) || rho - sigma ||_1
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// Mean energy of the Gibbs ensemble at beta; strictly decreasing in beta.
double gibbs_mean_energy(const HermitianOperator& h, InverseTemperature beta);

// Inverse of the Gibbs mean-energy map, by bracket-expanding bisection over
// the whole real line. u must lie strictly inside (lambda_min, lambda_max).
InverseTemperature beta_of_energy(const HermitianOperator& h, double u);

// Entropy of the Gibbs state whose mean energy is E. Satisfies dS/dE = beta
// and equals thermodynamic integration anchored at the beta = 0 point, where
// S = ln d.
EntropyValue gibbs_entropy_at_energy(const HermitianOperator& h, double e);

} // namespace qthermo
