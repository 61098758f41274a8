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

namespace qthermo {

// Validation thresholds shared by every module. One tuning point.
struct Tolerances {
    double hermiticity = 1e-10;  // max-abs deviation of A from A^dagger
    double unit_trace = 1e-9;    // |Tr(rho) - 1|
    double psd_floor = -1e-10;   // smallest admissible eigenvalue of a state
};

inline const Tolerances& default_tolerances() {
    static const Tolerances tol{};
    return tol;
}

// Looser floors for states produced by long superoperator propagation.
inline const Tolerances& propagation_tolerances() {
    static const Tolerances tol{1e-8, 1e-7, -1e-8};
    return tol;
}

} // namespace qthermo
