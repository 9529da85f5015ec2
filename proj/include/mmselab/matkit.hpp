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

#ifndef MMSELAB_MATKIT_HPP
#define MMSELAB_MATKIT_HPP

#include <Eigen/Dense>

#include <complex>
#include <limits>

namespace mmselab
{

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Determinant in sign / log-magnitude form. sign == 0 marks an exactly
/// singular matrix, with log_abs = -inf.
struct SignedLogDet
{
    int sign = 0;
    double log_abs = -std::numeric_limits<double>::infinity();

    double value() const;
};

namespace matkit
{

/// Largest supported dimension; everything is dense.
inline constexpr int max_dim = 64;

/// True when |A - A^H| <= tol * max(1, max|A_ij|) entrywise.
bool is_hermitian(const ComplexMatrix& a, double tol = 1e-12);

/// Real eigenvalues of a Hermitian matrix in descending order (ties keep
/// the solver's order). Throws DomainError for non-Hermitian input and
/// NumericalError if the solver fails.
RealVector hermitian_eig_desc(const ComplexMatrix& a);

/// Eigenvectors matching hermitian_eig_desc, one per column.
void hermitian_eig_desc(const ComplexMatrix& a, RealVector& values, ComplexMatrix& vectors);

/// Sign and log|det| of a square real matrix via partially pivoted LU.
SignedLogDet signed_logdet(const RealMatrix& a);

/// Same for a complex matrix whose determinant is real (e.g. Hermitian);
/// throws DomainError if the determinant's phase is not +-1.
SignedLogDet signed_logdet(const ComplexMatrix& a);

/// log det of a Hermitian positive-definite matrix via Cholesky. Throws
/// NumericalError if A is not numerically positive definite.
double log_det_hpd(const ComplexMatrix& a);

/// Diagonal of A^{-1} for Hermitian positive-definite A. Throws
/// NumericalError if A is numerically singular.
RealVector diag_of_inverse(const ComplexMatrix& a);

/// Matrix with column `col` removed.
ComplexMatrix remove_column(const ComplexMatrix& a, int col);

/// (i,i) minor: row and column i removed.
ComplexMatrix principal_minor(const ComplexMatrix& a, int i);

} // namespace matkit

} // namespace mmselab

#endif
