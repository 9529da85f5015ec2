// SPDX-License-Identifier: Apache-2.0
//
// mmse-lab: achievable sum rate of MIMO linear-MMSE receivers
// Copyright (C) 2026 The mmse-lab authors
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

#ifndef MMSELAB_ERRORS_HPP
#define MMSELAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mmselab
{

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// Eigenvalue-expansion formulas divide by a Vandermonde determinant and are
// undefined when two eigenvalues coincide (relative gap <= 1e-9).
class RepeatedEigenvalues : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// No exact finite-SNR expression exists for the requested channel model.
class NoClosedForm : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Factorization, quadrature or root bracketing failed.
class NumericalError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace mmselab

#endif
