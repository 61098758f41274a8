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

#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "qthermo/work_protocols.hpp"

namespace qthermo {

// Heat sign convention: positive heat means energy flowing INTO the bath,
// and the bath entropy change is DeltaS^R = beta_R * DeltaE^R.

struct JumpOperator {
    ComplexMatrix op;
    double rate = 0.0;  // energy units
    // Set by davies_generator: +omega for emission (lowers system energy by
    // omega), -omega for the reversed jump, 0 for pure dephasing. Untagged
    // jumps skip the KMS check.
    std::optional<double> bohr_frequency;
};

/// GKSL generator: -i[H, rho] + sum_j r_j (L rho L^dag - {L^dag L, rho}/2).
class LindbladGenerator {
public:
    LindbladGenerator(HermitianOperator hamiltonian, std::vector<JumpOperator> jumps,
                      InverseTemperature bath_beta);

    Eigen::Index dim() const { return hamiltonian_.dim(); }
    const HermitianOperator& hamiltonian() const { return hamiltonian_; }
    const std::vector<JumpOperator>& jumps() const { return jumps_; }
    InverseTemperature bath_beta() const { return bath_beta_; }

private:
    HermitianOperator hamiltonian_;
    std::vector<JumpOperator> jumps_;
    InverseTemperature bath_beta_;
};

// Weak-coupling-limit generator from a coupling operator: eigenoperators of H
// at each Bohr frequency, rates gamma0*(N+1) down / gamma0*N up with
// N = 1/(e^{beta omega} - 1), plus a gamma0/2 dephasing term at omega = 0.
// Gibbs(beta, H) is stationary. Fails on degenerate Bohr frequencies.
LindbladGenerator davies_generator(const HermitianOperator& h,
                                   const HermitianOperator& coupling,
                                   InverseTemperature beta, double gamma0);

// Dissipator part only, applied to a matrix.
ComplexMatrix apply_dissipator(const LindbladGenerator& gen, const ComplexMatrix& rho);

// Full generator applied to a matrix.
ComplexMatrix apply_generator(const LindbladGenerator& gen, const ComplexMatrix& rho);

// d^2 x d^2 matrix of the generator on column-stacked states.
ComplexMatrix superoperator_matrix(const LindbladGenerator& gen);

struct ScheduleStep {
    // A dissipative bath contact or a closed (Hamiltonian-only) stretch.
    std::variant<LindbladGenerator, HermitianOperator> dynamics;
    double duration = 0.0;
    int bath_id = 0;  // ledger key; meaningful for contact steps only

    static ScheduleStep contact(LindbladGenerator gen, double duration, int bath_id = 0) {
        return ScheduleStep{std::move(gen), duration, bath_id};
    }
    static ScheduleStep unitary(HermitianOperator h, double duration) {
        return ScheduleStep{std::move(h), duration, 0};
    }

    const HermitianOperator& hamiltonian() const {
        if (const auto* gen = std::get_if<LindbladGenerator>(&dynamics)) {
            return gen->hamiltonian();
        }
        return std::get<HermitianOperator>(dynamics);
    }
    bool is_contact() const { return std::holds_alternative<LindbladGenerator>(dynamics); }
};

struct PropagationOptions {
    int substeps = 64;            // heat-quadrature substeps per segment
    bool check_substeps = true;   // re-run at 2x substeps and compare
    bool record_substeps = false; // keep per-substep entropy/heat series
};

struct SubstepRecord {
    double time;
    double entropy;          // S_I of the state
    double heat_cumulative;  // heat into the step's bath since segment start
};

struct OpenTrajectory {
    std::vector<double> times;          // segment boundaries
    std::vector<DensityMatrix> states;  // one per boundary
    std::map<int, double> heat_to_bath; // per bath id
    double work_extracted = 0.0;        // accrued at switches
    bool substep_flagged = false;       // heat changed > 1e-6 on refinement
    std::vector<std::vector<SubstepRecord>> substep_records;  // per contact step

    double total_heat() const {
        double q = 0.0;
        for (const auto& [id, h] : heat_to_bath) q += h;
        return q;
    }
};

// Propagates through the schedule; contact segments use the d^2 superoperator
// exponential, closed segments the spectral exponential. Heat per dissipative
// segment is the midpoint quadrature of -Tr[H D(rho)], work accrues at the
// switches. Throws NumericalError when the trace drifts beyond 1e-6.
OpenTrajectory propagate_lindblad(const std::vector<ScheduleStep>& schedule,
                                  const DensityMatrix& rho0,
                                  const PropagationOptions& options = {});

// Kraus-map application; validates sum K^dag K = I within 1e-9.
DensityMatrix apply_channel(const std::vector<ComplexMatrix>& kraus,
                            const DensityMatrix& rho);

struct DataProcessingResult {
    EntropyValue before;  // S(rho|mu)
    EntropyValue after;   // S(T rho|T mu)
    bool holds;           // after <= before + 1e-9 (infinite before always holds)
};

DataProcessingResult data_processing_check(const std::vector<ComplexMatrix>& kraus,
                                           const DensityMatrix& rho,
                                           const DensityMatrix& mu);

// ---------------------------------------------------------------------------
// Finite-bath experiment: system qubit + explicit small qubit bath, joint
// Gibbs initial state, work cycle applied to the system through the joint
// unitary evolution.

struct FiniteBathSpec {
    int n_qubits = 4;
    // Coupling strength of the nearest-neighbour XX chain; <= 0 means
    // 0.1 * (spectral span of the system Hamiltonian).
    double coupling_strength = -1.0;
    // Bath qubit gaps; empty means a spread over [0.8, 1.2] * system span.
    std::vector<double> gaps;
};

struct FiniteBathReport {
    int bath_size = 0;
    double beta = 0.0;
    double beta_prime = 0.0;
    double work_extracted = 0.0;
    // (a) beta W = -S(rho1|rho0)
    double identity_a_lhs = 0.0, identity_a_rhs = 0.0, identity_a_residual = 0.0;
    // (b) S(rho1'|rho0) + S(rho0|rho1') = (beta' - beta) W
    double identity_b_lhs = 0.0, identity_b_rhs = 0.0, identity_b_residual = 0.0;
    // (c) S(rho1|rho1') = S(rho1') - S(rho1)
    double identity_c_lhs = 0.0, identity_c_rhs = 0.0, identity_c_residual = 0.0;
    // S(rho1|rho0) - S(rho1|rho1') = S(rho1'|rho0); vanishes with bath size
    double limit_gap = 0.0;
    double beta_shift_work = 0.0;  // (beta' - beta) W, the trend quantity
};

FiniteBathReport finite_bath_experiment(const HermitianOperator& system_h,
                                        const FiniteBathSpec& spec,
                                        const WorkCycle& cycle,
                                        const ControlSet& controls,
                                        InverseTemperature beta);

std::vector<FiniteBathReport> finite_bath_sweep(const HermitianOperator& system_h,
                                                const FiniteBathSpec& spec,
                                                const WorkCycle& cycle,
                                                const ControlSet& controls,
                                                InverseTemperature beta,
                                                const std::vector<int>& bath_sizes);

} // namespace qthermo
