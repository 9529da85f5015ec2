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

#include "mmselab/rng.hpp"

#include <cmath>
#include <numbers>

namespace mmselab::rng
{

namespace
{

constexpr std::uint32_t mult0 = 0xD2511F53u;
constexpr std::uint32_t mult1 = 0xCD9E8D57u;
constexpr std::uint32_t weyl0 = 0x9E3779B9u;
constexpr std::uint32_t weyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo)
{
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

inline Counter round(const Counter& c, const Key& k)
{
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(mult0, c[0], hi0, lo0);
    mulhilo(mult1, c[2], hi1, lo1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

inline double to_open_unit(std::uint32_t hi, std::uint32_t lo)
{
    const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 32) | lo;
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

} // namespace

Counter philox4x32(Counter ctr, Key key)
{
    for (int r = 0; r < 10; ++r)
    {
        if (r > 0)
        {
            key[0] += weyl0;
            key[1] += weyl1;
        }
        ctr = round(ctr, key);
    }
    return ctr;
}

GaussianStream::GaussianStream(std::uint64_t seed, std::uint32_t stream)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)}, stream_(stream)
{
}

std::array<double, 2> GaussianStream::uniforms(std::uint64_t index) const
{
    const Counter ctr{static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), stream_, 0u};
    const Counter out = philox4x32(ctr, key_);
    return {to_open_unit(out[0], out[1]), to_open_unit(out[2], out[3])};
}

std::complex<double> GaussianStream::complex_normal(std::uint64_t index) const
{
    // Box-Muller; the pair has unit variance per component, scale to 1/2.
    const auto u = uniforms(index);
    const double radius = std::sqrt(-std::log(u[0]));
    const double angle = 2.0 * std::numbers::pi * u[1];
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

} // namespace mmselab::rng
