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

#include <stdexcept>
#include <string>

namespace qthermo {

// Base class for everything thrown by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid inputs: broken invariants, malformed configs, schema violations.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Arguments outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// Overflow, loss of positivity, convergence failures and similar.
class NumericalError : public Error {
public:
    using Error::Error;
};

// No protocol in the search space lands close enough to any Gibbs target.
class GibbsUnreachableError : public Error {
public:
    GibbsUnreachableError(const std::string& msg, double best_distance)
        : Error(msg), best_distance(best_distance) {}
    double best_distance;
};

} // namespace qthermo
