// SPDX-License-Identifier: Apache-2.0
//
// adirs - angle-domain IRS link simulation library
// Copyright (C) 2026 The adirs authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef ADIRS_ERRORS_HPP
#define ADIRS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace adirs
{

// Invalid scenario or parameter set (non-square arrays, negative distances, unknown keys, ...)
class ConfigError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Degenerate geometry, e.g. two coincident positions
class GeometryError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// Argument outside the mathematical domain of an operation
class DomainError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// Caller broke a documented precondition (e.g. non unit-modulus phase vector)
class ContractViolation : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

// The angle estimate left the physical region (|theta|^2 > pi^2); the trial is flagged, not fatal
class EstimationFailure : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Iterative solver did not converge; carries the last Rayleigh quotient
class NumericalError : public std::runtime_error
{
public:
    NumericalError(const std::string &what, double last_value)
        : std::runtime_error(what), last_value_(last_value) {}

    double last_value() const noexcept { return last_value_; }

private:
    double last_value_;
};

} // namespace adirs

#endif
