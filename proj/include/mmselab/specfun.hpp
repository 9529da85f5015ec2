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

#ifndef MMSELAB_SPECFUN_HPP
#define MMSELAB_SPECFUN_HPP

#include <optional>

namespace mmselab::specfun
{

/// Euler-Mascheroni constant, 20 significant digits.
inline constexpr double euler_gamma = 0.57721566490153286061;

inline constexpr double log2e = 1.4426950408889634074;
inline constexpr double ln2 = 0.69314718055994530942;

/// Scaled exponential integral e^x E_h(x) for order h >= 1 and x > 0.
///
/// The scaled form stays representable where E_h alone under/overflows:
/// it tends to 1/(h-1) as x -> 0+ (h >= 2) and to 1/x as x -> inf.
/// Throws DomainError for h < 1 or x <= 0.
double expint_scaled(int order, double x);

/// Harmonic number H_n = sum_{k=1}^n 1/k, with H_0 = 0.
double harmonic(int n);

/// Digamma at a positive integer: psi(j) = H_{j-1} - gamma.
double digamma_int(int j);

/// ln Gamma(k) for a positive integer k, i.e. ln((k-1)!).
double log_factorial(int k);

/// ln Gamma_n(m) = sum_{i=1}^n ln Gamma(m-i+1) (normalized complex
/// multivariate gamma), for m >= n >= 1.
double log_multivariate_gamma(int n, int m);

/// theta(Nr, Nt, K) = 2F2(1,1; 2, Nr+1; -K Nr Nt).
///
/// Positive, decreasing in K, equal to 1 at K = 0. Uses the alternating power
/// series while it is numerically safe and an integral representation
/// otherwise.
double theta_2f2(int nr, int nt, double k_factor);

namespace detail
{

/// Power series for 2F2(1,1;2,nr+1;-z) with compensated summation. Returns
/// nullopt when z > 30 or the estimated cancellation error exceeds 1e-12
/// relative.
std::optional<double> hyp2f2_series(int nr, double z);

/// (nr/z) * int_0^1 (1-u)^(nr-1) (1 - e^{-zu})/u du, the same function by
/// adaptive Gauss-Kronrod quadrature.
double hyp2f2_quadrature(int nr, double z);

/// The same function as (nr/z) sum_{k>=0} P(k+1, z)/(nr+k), P the regularized
/// lower incomplete gamma, after Kummer's transformation. All terms are
/// positive, so there is no cancellation at any z; used as a reference.
double hyp2f2_poisson_series(int nr, double z);

} // namespace detail

} // namespace mmselab::specfun

#endif
