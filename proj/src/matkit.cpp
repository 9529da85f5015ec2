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

#include "mmselab/matkit.hpp"
#include "mmselab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace mmselab
{

double SignedLogDet::value() const
{
    return sign == 0 ? 0.0 : sign * std::exp(log_abs);
}

namespace matkit
{

namespace
{

void check_square(Eigen::Index rows, Eigen::Index cols, const char* who)
{
    if (rows != cols || rows < 1)
        throw DomainError(std::string(who) + ": matrix must be square and non-empty");
    if (rows > max_dim)
        throw DomainError(std::string(who) + ": dimension exceeds " + std::to_string(max_dim));
}

template <typename Matrix>
void check_finite(const Matrix& a, const char* who)
{
    if (!a.allFinite())
        throw DomainError(std::string(who) + ": matrix has non-finite entries");
}

} // namespace

bool is_hermitian(const ComplexMatrix& a, double tol)
{
    if (a.rows() != a.cols())
        return false;
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

void hermitian_eig_desc(const ComplexMatrix& a, RealVector& values, ComplexMatrix& vectors)
{
    check_square(a.rows(), a.cols(), "hermitian_eig_desc");
    check_finite(a, "hermitian_eig_desc");
    if (!is_hermitian(a))
        throw DomainError("hermitian_eig_desc: matrix is not Hermitian");

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a);
    if (solver.info() != Eigen::Success)
        throw NumericalError("hermitian_eig_desc: eigensolver did not converge");

    // Eigen returns ascending order; reverse with a stable sort on value.
    const auto dim = a.rows();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(dim));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    const RealVector& ev = solver.eigenvalues();
    std::stable_sort(order.begin(), order.end(),
                     [&ev](Eigen::Index l, Eigen::Index r) { return ev(l) > ev(r); });

    values.resize(dim);
    vectors.resize(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k)
    {
        values(k) = ev(order[static_cast<std::size_t>(k)]);
        vectors.col(k) = solver.eigenvectors().col(order[static_cast<std::size_t>(k)]);
    }
}

RealVector hermitian_eig_desc(const ComplexMatrix& a)
{
    RealVector values;
    ComplexMatrix vectors;
    hermitian_eig_desc(a, values, vectors);
    return values;
}

SignedLogDet signed_logdet(const RealMatrix& a)
{
    check_square(a.rows(), a.cols(), "signed_logdet");
    check_finite(a, "signed_logdet");

    Eigen::PartialPivLU<RealMatrix> lu(a);
    const RealMatrix& u = lu.matrixLU();
    SignedLogDet out;
    int sign = static_cast<int>(lu.permutationP().determinant());
    double log_abs = 0.0;
    for (Eigen::Index i = 0; i < u.rows(); ++i)
    {
        const double d = u(i, i);
        if (d == 0.0)
            return out;
        if (d < 0.0)
            sign = -sign;
        log_abs += std::log(std::abs(d));
    }
    out.sign = sign;
    out.log_abs = log_abs;
    return out;
}

SignedLogDet signed_logdet(const ComplexMatrix& a)
{
    check_square(a.rows(), a.cols(), "signed_logdet");
    check_finite(a, "signed_logdet");

    Eigen::PartialPivLU<ComplexMatrix> lu(a);
    const ComplexMatrix& u = lu.matrixLU();
    SignedLogDet out;
    std::complex<double> phase(lu.permutationP().determinant(), 0.0);
    double log_abs = 0.0;
    for (Eigen::Index i = 0; i < u.rows(); ++i)
    {
        const double mag = std::abs(u(i, i));
        if (mag == 0.0)
            return out;
        phase *= u(i, i) / mag;
        log_abs += std::log(mag);
    }
    if (std::abs(phase.imag()) > 1e-9)
        throw DomainError("signed_logdet: determinant is not real");
    out.sign = phase.real() > 0.0 ? 1 : -1;
    out.log_abs = log_abs;
    return out;
}

double log_det_hpd(const ComplexMatrix& a)
{
    check_square(a.rows(), a.cols(), "log_det_hpd");
    Eigen::LLT<ComplexMatrix> llt(a);
    if (llt.info() != Eigen::Success)
        throw NumericalError("log_det_hpd: matrix is not positive definite");
    const auto& l = llt.matrixLLT();
    double sum = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        sum += std::log(l(i, i).real());
    return 2.0 * sum;
}

RealVector diag_of_inverse(const ComplexMatrix& a)
{
    check_square(a.rows(), a.cols(), "diag_of_inverse");
    check_finite(a, "diag_of_inverse");
    Eigen::LLT<ComplexMatrix> llt(a);
    if (llt.info() != Eigen::Success)
        throw NumericalError("diag_of_inverse: matrix is not numerically positive definite");

    // [A^{-1}]_ii = || L^{-1} e_i ||^2 with A = L L^H.
    const auto dim = a.rows();
    ComplexMatrix linv = ComplexMatrix::Identity(dim, dim);
    llt.matrixL().solveInPlace(linv);
    RealVector out = linv.colwise().squaredNorm().transpose();
    for (Eigen::Index i = 0; i < dim; ++i)
        if (!(out(i) > 0.0) || !std::isfinite(out(i)))
            throw NumericalError("diag_of_inverse: matrix is numerically singular");
    return out;
}

ComplexMatrix remove_column(const ComplexMatrix& a, int col)
{
    if (col < 0 || col >= a.cols())
        throw DomainError("remove_column: column index out of range");
    ComplexMatrix out(a.rows(), a.cols() - 1);
    out.leftCols(col) = a.leftCols(col);
    out.rightCols(a.cols() - col - 1) = a.rightCols(a.cols() - col - 1);
    return out;
}

ComplexMatrix principal_minor(const ComplexMatrix& a, int i)
{
    if (a.rows() != a.cols() || i < 0 || i >= a.rows())
        throw DomainError("principal_minor: index out of range or matrix not square");
    const auto n = a.rows();
    const auto tail = n - i - 1;
    ComplexMatrix out(n - 1, n - 1);
    out.topLeftCorner(i, i) = a.topLeftCorner(i, i);
    out.topRightCorner(i, tail) = a.topRightCorner(i, tail);
    out.bottomLeftCorner(tail, i) = a.bottomLeftCorner(tail, i);
    out.bottomRightCorner(tail, tail) = a.bottomRightCorner(tail, tail);
    return out;
}

} // namespace matkit

} // namespace mmselab
