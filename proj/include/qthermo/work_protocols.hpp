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

#include <string>
#include <vector>

#include "qthermo/states_gibbs.hpp"

namespace qthermo {

// Sign convention, used everywhere in this module: W is EXTRACTED work,
//   W = Tr[rho (H_heis(s) - H_heis(t))] = -sum_switches Tr[rho dH].
// Positive W means the cycle pulled energy out of the system.

/// The Hamiltonians the experimenter may switch among.
class ControlSet {
public:
    ControlSet(std::vector<HermitianOperator> hamiltonians, std::string name = "");

    std::size_t size() const { return hamiltonians_.size(); }
    Eigen::Index dim() const { return hamiltonians_.front().dim(); }
    const HermitianOperator& operator[](std::size_t i) const;
    const std::string& name() const { return name_; }

private:
    std::vector<HermitianOperator> hamiltonians_;
    std::string name_;
};

struct Segment {
    int control = 0;
    double duration = 0.0;  // units of 1/energy
};

/// Piecewise-constant schedule that starts and ends on its origin Hamiltonian.
class WorkCycle {
public:
    WorkCycle(int origin_index, std::vector<Segment> segments);

    int origin() const { return origin_index_; }
    const std::vector<Segment>& segments() const { return segments_; }
    double total_duration() const;

    // Origin-compatible concatenation; needed for nesting properties.
    static WorkCycle concatenate(const WorkCycle& a, const WorkCycle& b);

private:
    int origin_index_;
    std::vector<Segment> segments_;
};

// Checks both cycle invariants against F and returns the cycle unchanged.
const WorkCycle& validate_cycle(const WorkCycle& cycle, const ControlSet& controls);

struct Trajectory {
    std::vector<double> times;               // switch instants, starting at 0
    std::vector<DensityMatrix> states;       // one per time
    std::vector<ComplexMatrix> segment_propagators;
    ComplexMatrix total_propagator;
};

// Unitary propagation, one exp(-i H tau) per segment.
Trajectory propagate_unitary(const WorkCycle& cycle, const ControlSet& controls,
                             const DensityMatrix& rho0);

// Switch-instant sum: W = -sum_k Tr[rho(t_k) (H_{k+1} - H_k)].
double work_extracted_integral(const WorkCycle& cycle, const ControlSet& controls,
                               const Trajectory& trajectory);

// Two-point form: Tr[rho0 (H - U^dagger H U)], H the origin Hamiltonian.
double work_extracted_two_point(const WorkCycle& cycle, const ControlSet& controls,
                                const DensityMatrix& rho0);

struct RampedWorkResult {
    double work_extracted;
    DensityMatrix final_state;
};

// Smooth-ramp mode: the Hamiltonian ramps linearly across each segment from
// the previous control to the segment's control, and the work integral
// -int Tr[rho dH/du] du is evaluated by midpoint quadrature with at least
// `steps_per_segment` >= 100 steps.
RampedWorkResult work_extracted_ramped(const WorkCycle& cycle,
                                       const ControlSet& controls,
                                       const DensityMatrix& rho0,
                                       int steps_per_segment = 100);

struct WorkIdentity {
    double lhs;  // W(cycle, rho0)
    double rhs;  // beta^{-1} [S(rho_s|gibbs) - S(rho_t|gibbs)]
};

// Both sides of the work/relative-entropy identity, computed independently.
WorkIdentity work_relative_entropy_identity(const WorkCycle& cycle,
                                            const ControlSet& controls,
                                            const DensityMatrix& rho0,
                                            InverseTemperature beta);

// beta^{-1} S(rho | gibbs(beta, H)); upper bound on unitary-cycle work,
// attained iff the Gibbs state is unitarily reachable from rho. Returns
// +infinity when the relative entropy is infinite. Requires beta > 0.
double availability_unitary(const DensityMatrix& rho, const HermitianOperator& h,
                            InverseTemperature beta);

// Spectral passivity criterion: rho commutes with H and its populations do
// not increase with energy.
bool is_passive_spectral(const DensityMatrix& rho, const HermitianOperator& h);

} // namespace qthermo
