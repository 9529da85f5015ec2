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

#include "mmselab/specfun.hpp"
#include "mmselab/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mmselab::specfun
{

namespace
{

constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr int max_iterations = 100000;

// e^x E_n(x) for x >= 1: modified Lentz evaluation of the continued fraction
// E_n(x) = e^{-x} (1/(x+n-) 1n/(x+n+2-) 2(n+1)/(x+n+4-) ...).
double expint_scaled_cf(int n, double x)
{
    constexpr double tiny = 1e-300;
    double b = x + n;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= max_iterations; ++i)
    {
        const double an = -static_cast<double>(i) * (n - 1 + i);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) <= eps)
            return h;
    }
    throw NumericalError("expint_scaled: continued fraction did not converge");
}

// e^x E_n(x) for 0 < x < 1 from the power series about the origin.
double expint_scaled_series(int n, double x)
{
    const int nm1 = n - 1;
    double ans = nm1 != 0 ? 1.0 / nm1 : -std::log(x) - euler_gamma;
    double fact = 1.0;
    for (int i = 1; i <= max_iterations; ++i)
    {
        fact *= -x / i;
        double del;
        if (i != nm1)
            del = -fact / (i - nm1);
        else
            del = fact * (-std::log(x) + digamma_int(n));
        ans += del;
        if (std::abs(del) < std::abs(ans) * eps)
            return ans * std::exp(x);
    }
    throw NumericalError("expint_scaled: series did not converge");
}

} // namespace

double expint_scaled(int order, double x)
{
    if (order < 1)
        throw DomainError("expint_scaled: order must be >= 1, got " + std::to_string(order));
    if (!(x > 0.0) || !std::isfinite(x))
        throw DomainError("expint_scaled: argument must be finite and > 0");
    return x >= 1.0 ? expint_scaled_cf(order, x) : expint_scaled_series(order, x);
}

namespace
{

constexpr long double euler_gamma_ld = 0.577215664901532860606512090082402431L;

long double harmonic_ld(int n)
{
    long double sum = 0.0L;
    for (int k = n; k >= 1; --k)
        sum += 1.0L / k;
    return sum;
}

} // namespace

double harmonic(int n)
{
    if (n < 0)
        throw DomainError("harmonic: n must be >= 0");
    return static_cast<double>(harmonic_ld(n));
}

double digamma_int(int j)
{
    if (j < 1)
        throw DomainError("digamma_int: argument must be >= 1, got " + std::to_string(j));
    // Rounded once from extended precision so neighbouring values carry
    // independent half-ulp errors only.
    return static_cast<double>(harmonic_ld(j - 1) - euler_gamma_ld);
}

double log_factorial(int k)
{
    if (k < 1)
        throw DomainError("log_factorial: argument must be >= 1");
    double sum = 0.0;
    for (int i = 2; i < k; ++i)
        sum += std::log(static_cast<double>(i));
    return sum;
}

double log_multivariate_gamma(int n, int m)
{
    if (n < 1 || m < n)
        throw DomainError("log_multivariate_gamma: need m >= n >= 1");
    double sum = 0.0;
    for (int i = 1; i <= n; ++i)
        sum += log_factorial(m - i + 1);
    return sum;
}

namespace detail
{

std::optional<double> hyp2f2_series(int nr, double z)
{
    if (z > 30.0)
        return std::nullopt;

    // Neumaier summation of t_k = (-z)^k / ((k+1) (nr+1)_k).
    double sum = 1.0;
    double comp = 0.0;
    double term = 1.0;
    double peak = 1.0;
    int k = 1;
    for (; k < 2000; ++k)
    {
        term *= -z * k / ((k + 1.0) * (nr + k));
        const double t = sum + term;
        if (std::abs(sum) >= std::abs(term))
            comp += (sum - t) + term;
        else
            comp += (term - t) + sum;
        sum = t;
        peak = std::max(peak, std::abs(term));
        if (k > z && std::abs(term) < 1e-18 * std::abs(sum + comp))
            break;
    }
    const double value = sum + comp;
    // Each term carries ~k rounding errors from its recurrence.
    if (peak * k * eps > 1e-12 * std::abs(value))
        return std::nullopt;
    return value;
}

double hyp2f2_quadrature(int nr, double z)
{
    using boost::math::quadrature::gauss_kronrod;
    auto kernel = [nr, z](double u) {
        if (u <= 0.0)
            return z;
        return std::pow(1.0 - u, nr - 1) * -std::expm1(-z * u) / u;
    };
    // The kernel changes character across u ~ 1/z; integrate the pieces.
    const double knee = std::min(1.0, 1.0 / z);
    const double wide = std::min(1.0, 20.0 / z);
    double total = 0.0;
    double lo = 0.0;
    for (double hi : {knee, wide, 1.0})
    {
        if (hi > lo)
            total += gauss_kronrod<double, 61>::integrate(kernel, lo, hi, 10, 1e-14);
        lo = hi;
    }
    return nr / z * total;
}

double hyp2f2_poisson_series(int nr, double z)
{
    if (nr < 1)
        throw DomainError("hyp2f2_poisson_series: nr must be >= 1");
    if (!(z >= 0.0) || !std::isfinite(z))
        throw DomainError("hyp2f2_poisson_series: z must be finite and >= 0");
    if (z == 0.0)
        return 1.0;
    // P(k+1, z) is a Poisson(z) upper tail; build it from the far tail
    // downwards so every addition is of positive terms.
    const int last = static_cast<int>(std::ceil(z + 12.0 * std::sqrt(z) + 40.0));
    const double log_z = std::log(z);
    double log_pmf = -z + (last + 1) * log_z - log_factorial(last + 2); // Poisson pmf at last+1
    double tail = 0.0;
    double sum = 0.0;
    for (int k = last; k >= 0; --k)
    {
        tail += std::exp(log_pmf);
        sum += tail / (nr + k);
        log_pmf += std::log(k + 1.0) - log_z;
    }
    return nr / z * sum;
}

} // namespace detail

double theta_2f2(int nr, int nt, double k_factor)
{
    if (nr < 1 || nt < 1)
        throw DomainError("theta_2f2: antenna counts must be >= 1");
    if (!(k_factor >= 0.0) || !std::isfinite(k_factor))
        throw DomainError("theta_2f2: K-factor must be finite and >= 0");
    const double z = k_factor * nr * nt;
    if (z == 0.0)
        return 1.0;
    if (auto s = detail::hyp2f2_series(nr, z))
        return *s;
    return detail::hyp2f2_quadrature(nr, z);
}

} // namespace mmselab::specfun
