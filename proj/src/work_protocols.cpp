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

#include "qthermo/work_protocols.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <sstream>

namespace qthermo {

ControlSet::ControlSet(std::vector<HermitianOperator> hamiltonians, std::string name)
    : hamiltonians_(std::move(hamiltonians)), name_(std::move(name)) {
    if (hamiltonians_.empty()) {
        throw ValidationError("ControlSet: must contain at least one Hamiltonian");
    }
    const Eigen::Index d = hamiltonians_.front().dim();
    for (const auto& h : hamiltonians_) {
        if (h.dim() != d) {
            throw ValidationError("ControlSet: all Hamiltonians must share one dimension");
        }
    }
}

const HermitianOperator& ControlSet::operator[](std::size_t i) const {
    if (i >= hamiltonians_.size()) {
        std::ostringstream os;
        os << "ControlSet: index " << i << " out of range (size "
           << hamiltonians_.size() << ")";
        throw ValidationError(os.str());
    }
    return hamiltonians_[i];
}

WorkCycle::WorkCycle(int origin_index, std::vector<Segment> segments)
    : origin_index_(origin_index), segments_(std::move(segments)) {
    if (segments_.empty()) {
        throw ValidationError("WorkCycle: needs at least one segment");
    }
    for (const auto& seg : segments_) {
        if (!(seg.duration >= 0.0) || !std::isfinite(seg.duration)) {
            throw ValidationError("WorkCycle: durations must be finite and >= 0");
        }
    }
    if (segments_.front().control != origin_index_ ||
        segments_.back().control != origin_index_) {
        std::ostringstream os;
        os << "WorkCycle: not a work cycle, endpoints (" << segments_.front().control
           << ", " << segments_.back().control << ") must equal the origin "
           << origin_index_;
        throw ValidationError(os.str());
    }
}

double WorkCycle::total_duration() const {
    double t = 0.0;
    for (const auto& seg : segments_) t += seg.duration;
    return t;
}

WorkCycle WorkCycle::concatenate(const WorkCycle& a, const WorkCycle& b) {
    if (a.origin() != b.origin()) {
        throw ValidationError("WorkCycle::concatenate: origins differ");
    }
    std::vector<Segment> segs = a.segments();
    segs.insert(segs.end(), b.segments().begin(), b.segments().end());
    return WorkCycle(a.origin(), std::move(segs));
}

const WorkCycle& validate_cycle(const WorkCycle& cycle, const ControlSet& controls) {
    for (const auto& seg : cycle.segments()) {
        if (seg.control < 0 || static_cast<std::size_t>(seg.control) >= controls.size()) {
            std::ostringstream os;
            os << "validate_cycle: control index " << seg.control
               << " out of range for control set of size " << controls.size();
            throw ValidationError(os.str());
        }
    }
    if (cycle.origin() < 0 ||
        static_cast<std::size_t>(cycle.origin()) >= controls.size()) {
        throw ValidationError("validate_cycle: origin index out of range");
    }
    return cycle;
}

Trajectory propagate_unitary(const WorkCycle& cycle, const ControlSet& controls,
                             const DensityMatrix& rho0) {
    validate_cycle(cycle, controls);
    if (rho0.dim() != controls.dim()) {
        throw ValidationError("propagate_unitary: state and controls dimension mismatch");
    }
    Trajectory traj;
    const Eigen::Index d = rho0.dim();
    traj.total_propagator = ComplexMatrix::Identity(d, d);
    traj.times.push_back(0.0);
    traj.states.push_back(rho0);
    double t = 0.0;
    ComplexMatrix rho = rho0.matrix();
    for (const auto& seg : cycle.segments()) {
        const ComplexMatrix u =
            expm_hermitian(controls[seg.control], Complex(0.0, -seg.duration));
        rho = u * rho * u.adjoint();
        rho = 0.5 * (rho + rho.adjoint().eval());
        traj.segment_propagators.push_back(u);
        traj.total_propagator = u * traj.total_propagator;
        t += seg.duration;
        traj.times.push_back(t);
        traj.states.emplace_back(rho);
    }
    return traj;
}

double work_extracted_integral(const WorkCycle& cycle, const ControlSet& controls,
                               const Trajectory& trajectory) {
    const auto& segs = cycle.segments();
    if (trajectory.states.size() != segs.size() + 1) {
        throw ValidationError("work_extracted_integral: trajectory does not match cycle");
    }
    double work_on = 0.0;
    for (std::size_t k = 0; k + 1 < segs.size(); ++k) {
        const ComplexMatrix dh = controls[segs[k + 1].control].matrix() -
                                 controls[segs[k].control].matrix();
        work_on += (trajectory.states[k + 1].matrix() * dh).trace().real();
    }
    return -work_on;
}

double work_extracted_two_point(const WorkCycle& cycle, const ControlSet& controls,
                                const DensityMatrix& rho0) {
    const Trajectory traj = propagate_unitary(cycle, controls, rho0);
    const ComplexMatrix& h = controls[cycle.origin()].matrix();
    const ComplexMatrix& u = traj.total_propagator;
    const ComplexMatrix w_obs = h - u.adjoint() * h * u;
    return (rho0.matrix() * w_obs).trace().real();
}

RampedWorkResult work_extracted_ramped(const WorkCycle& cycle,
                                       const ControlSet& controls,
                                       const DensityMatrix& rho0,
                                       int steps_per_segment) {
    validate_cycle(cycle, controls);
    if (steps_per_segment < 100) steps_per_segment = 100;
    ComplexMatrix rho = rho0.matrix();
    double work_on = 0.0;
    int prev_control = cycle.origin();
    for (const auto& seg : cycle.segments()) {
        const ComplexMatrix& h_from = controls[prev_control].matrix();
        const ComplexMatrix& h_to = controls[seg.control].matrix();
        const ComplexMatrix dh = h_to - h_from;
        if (seg.duration > 0.0) {
            const double dt = seg.duration / steps_per_segment;
            for (int i = 0; i < steps_per_segment; ++i) {
                const double s_mid = (i + 0.5) / steps_per_segment;
                const ComplexMatrix h_mid = h_from + s_mid * dh;
                const ComplexMatrix u_half =
                    expm_hermitian(HermitianOperator(h_mid), Complex(0.0, -0.5 * dt));
                rho = u_half * rho * u_half.adjoint();  // midpoint state
                work_on += (rho * dh).trace().real() / seg.duration * dt;
                rho = u_half * rho * u_half.adjoint();  // end of step
            }
        } else if (dh.cwiseAbs().maxCoeff() > 0.0) {
            // zero-duration ramp degenerates to a quench
            work_on += (rho * dh).trace().real();
        }
        prev_control = seg.control;
    }
    rho = 0.5 * (rho + rho.adjoint().eval());
    return RampedWorkResult{-work_on, DensityMatrix(std::move(rho))};
}

WorkIdentity work_relative_entropy_identity(const WorkCycle& cycle,
                                            const ControlSet& controls,
                                            const DensityMatrix& rho0,
                                            InverseTemperature beta) {
    if (beta.beta == 0.0) {
        throw DomainError("work_relative_entropy_identity: undefined at beta = 0");
    }
    const Trajectory traj = propagate_unitary(cycle, controls, rho0);
    const double lhs = work_extracted_integral(cycle, controls, traj);
    const GibbsState gibbs = gibbs_state(controls[cycle.origin()], beta);
    const EntropyValue s_start = relative_entropy(rho0, gibbs.state);
    const EntropyValue s_end = relative_entropy(traj.states.back(), gibbs.state);
    if (s_start.is_infinite || s_end.is_infinite) {
        throw DomainError("work_relative_entropy_identity: relative entropy infinite");
    }
    const double rhs = (s_start.value - s_end.value) / beta.beta;
    return WorkIdentity{lhs, rhs};
}

double availability_unitary(const DensityMatrix& rho, const HermitianOperator& h,
                            InverseTemperature beta) {
    if (!(beta.beta > 0.0)) {
        throw DomainError("availability_unitary: requires beta > 0");
    }
    const GibbsState gibbs = gibbs_state(h, beta);
    const EntropyValue s = relative_entropy(rho, gibbs.state);
    if (s.is_infinite) return std::numeric_limits<double>::infinity();
    return s.value / beta.beta;
}

bool is_passive_spectral(const DensityMatrix& rho, const HermitianOperator& h) {
    if (rho.dim() != h.dim()) {
        throw ValidationError("is_passive_spectral: dimension mismatch");
    }
    const ComplexMatrix commutator =
        rho.matrix() * h.matrix() - h.matrix() * rho.matrix();
    if (commutator.cwiseAbs().maxCoeff() > 1e-9) return false;

    const EigenSystem es = eig_hermitian(h);
    const Eigen::Index d = h.dim();
    const ComplexMatrix rho_h = es.eigenvectors.adjoint() * rho.matrix() *
                                es.eigenvectors;
    const double span = es.eigenvalues(d - 1) - es.eigenvalues(0);
    const double level_tol = 1e-9 * std::max(1.0, span);

    // Populations per energy level; within a degenerate level the block of
    // rho is diagonalized so ordering freedom inside the block is used up.
    std::vector<double> energies;
    std::vector<double> populations;
    Eigen::Index start = 0;
    while (start < d) {
        Eigen::Index stop = start + 1;
        while (stop < d && es.eigenvalues(stop) - es.eigenvalues(start) <= level_tol) {
            ++stop;
        }
        const Eigen::Index block = stop - start;
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> block_eig(
            rho_h.block(start, start, block, block), Eigen::EigenvaluesOnly);
        for (Eigen::Index k = 0; k < block; ++k) {
            energies.push_back(es.eigenvalues(start));
            populations.push_back(block_eig.eigenvalues()(k));
        }
        start = stop;
    }
    for (std::size_t i = 0; i < energies.size(); ++i) {
        for (std::size_t j = i + 1; j < energies.size(); ++j) {
            if (energies[j] > energies[i] + level_tol &&
                populations[j] > populations[i] + 1e-9) {
                return false;
            }
        }
    }
    return true;
}

} // namespace qthermo
