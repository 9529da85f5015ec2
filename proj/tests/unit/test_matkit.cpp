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

#include "mmselab/errors.hpp"
#include "mmselab/matkit.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace mmselab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{

ComplexMatrix random_hpd(int n, unsigned seed)
{
    std::srand(seed);
    const ComplexMatrix a = ComplexMatrix::Random(n, n);
    return a * a.adjoint() + ComplexMatrix::Identity(n, n);
}

} // namespace

TEST_CASE("hermitian_eig_desc returns sorted real eigenvalues", "[matkit]")
{
    ComplexMatrix a(2, 2);
    a << 2.0, std::complex<double>(0.0, 1.0), std::complex<double>(0.0, -1.0), 2.0;
    const RealVector ev = matkit::hermitian_eig_desc(a);
    REQUIRE(ev.size() == 2);
    CHECK_THAT(ev(0), WithinRel(3.0, 1e-14));
    CHECK_THAT(ev(1), WithinRel(1.0, 1e-14));

    const ComplexMatrix b = random_hpd(6, 3);
    RealVector values;
    ComplexMatrix vectors;
    matkit::hermitian_eig_desc(b, values, vectors);
    for (int i = 1; i < 6; ++i)
        CHECK(values(i - 1) >= values(i));
    const ComplexMatrix rebuilt = vectors * values.cast<std::complex<double>>().asDiagonal() * vectors.adjoint();
    CHECK((rebuilt - b).norm() < 1e-12 * b.norm());

    ComplexMatrix skew = ComplexMatrix::Zero(2, 2);
    skew(0, 1) = 1.0;
    CHECK_THROWS_AS(matkit::hermitian_eig_desc(skew), DomainError);
}

TEST_CASE("signed_logdet", "[matkit]")
{
    RealMatrix a(2, 2);
    a << 1.0, 2.0, 3.0, 4.0;
    SignedLogDet d = matkit::signed_logdet(a);
    CHECK(d.sign == -1);
    CHECK_THAT(d.log_abs, WithinRel(std::log(2.0), 1e-14));
    CHECK_THAT(d.value(), WithinRel(-2.0, 1e-14));

    RealMatrix singular(2, 2);
    singular << 1.0, 2.0, 2.0, 4.0;
    CHECK(matkit::signed_logdet(singular).sign == 0);
    CHECK(matkit::signed_logdet(singular).value() == 0.0);

    // Wide dynamic range that would overflow a plain product.
    RealMatrix big = RealMatrix::Identity(40, 40) * 1e20;
    CHECK_THAT(matkit::signed_logdet(big).log_abs, WithinRel(40 * std::log(1e20), 1e-14));

    const ComplexMatrix h = random_hpd(5, 7);
    const SignedLogDet hd = matkit::signed_logdet(h);
    CHECK(hd.sign == 1);
    CHECK_THAT(hd.log_abs, WithinRel(matkit::log_det_hpd(h), 1e-12));
}

TEST_CASE("log_det_hpd and diag_of_inverse", "[matkit]")
{
    const ComplexMatrix a = random_hpd(4, 11);
    CHECK_THAT(matkit::log_det_hpd(a), WithinRel(std::log(a.determinant().real()), 1e-12));
    const RealVector d = matkit::diag_of_inverse(a);
    const ComplexMatrix inv = a.inverse();
    for (int i = 0; i < 4; ++i)
        CHECK_THAT(d(i), WithinRel(inv(i, i).real(), 1e-12));

    ComplexMatrix indefinite = ComplexMatrix::Identity(2, 2);
    indefinite(1, 1) = -1.0;
    CHECK_THROWS_AS(matkit::log_det_hpd(indefinite), NumericalError);
}

TEST_CASE("remove_column and principal_minor", "[matkit]")
{
    ComplexMatrix a(3, 3);
    a << 1, 2, 3, 4, 5, 6, 7, 8, 9;
    const ComplexMatrix c = matkit::remove_column(a, 1);
    REQUIRE(c.cols() == 2);
    CHECK(c(2, 1) == std::complex<double>(9.0));
    const ComplexMatrix m = matkit::principal_minor(a, 0);
    REQUIRE(m.rows() == 2);
    CHECK(m(0, 0) == std::complex<double>(5.0));
    CHECK(m(1, 1) == std::complex<double>(9.0));
    CHECK_THROWS_AS(matkit::remove_column(a, 3), DomainError);
}
