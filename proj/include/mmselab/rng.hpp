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

#ifndef MMSELAB_RNG_HPP
#define MMSELAB_RNG_HPP

#include <array>
#include <complex>
#include <cstdint>

namespace mmselab::rng
{

using Counter = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds (Salmon et al., Random123). Stateless: the
/// output depends only on (counter, key).
Counter philox4x32(Counter ctr, Key key);

/// Keyed counter-based stream of standard complex normals. Draw `index`
/// is a pure function of (seed, stream, index), so any subset of draws can
/// be produced in any order or on any thread.
class GaussianStream
{
public:
    explicit GaussianStream(std::uint64_t seed, std::uint32_t stream = 0);

    /// Two uniforms in the open interval (0,1) for the given counter.
    std::array<double, 2> uniforms(std::uint64_t index) const;

    /// CN(0,1): independent real and imaginary parts, each N(0, 1/2).
    std::complex<double> complex_normal(std::uint64_t index) const;

private:
    Key key_;
    std::uint32_t stream_;
};

} // namespace mmselab::rng

#endif
