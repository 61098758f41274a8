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

#include <cstdint>

#include "qthermo/states_gibbs.hpp"

namespace qthermo {

// splitmix64 step; also used as the counter-based stream splitter so that
// parallel sweeps stay deterministic regardless of evaluation order.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic generator with explicit distributions; identical output on
// every platform for a given seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {
        // decorrelate trivially related seeds
        splitmix64(state_);
    }

    // Derive an independent stream for sweep point `index`.
    static Rng stream(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t s = seed;
        splitmix64(s);
        s ^= 0x7f4a7c15ULL + index * 0x9e3779b97f4a7c15ULL;
        return Rng(s);
    }

    std::uint64_t next_u64() { return splitmix64(state_); }

    // uniform in [0, 1)
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    int uniform_int(int lo, int hi);  // inclusive bounds

    double normal();  // standard normal via Box-Muller

    Complex complex_normal() { return Complex(normal(), normal()); }

    ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols);
    HermitianOperator random_hermitian(Eigen::Index d, double scale = 1.0);
    ComplexMatrix random_unitary(Eigen::Index d);
    DensityMatrix random_density(Eigen::Index d);   // full-rank Wishart
    DensityMatrix random_pure(Eigen::Index d);
    RealVector random_probabilities(Eigen::Index n);

private:
    std::uint64_t state_;
};

} // namespace qthermo
