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

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace mmselab;

TEST_CASE("Philox4x32-10 known-answer vectors", "[rng]")
{
    // Reference outputs of the Random123 distribution.
    CHECK(rng::philox4x32({0, 0, 0, 0}, {0, 0}) == rng::Counter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(rng::philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          rng::Counter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(rng::philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          rng::Counter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("GaussianStream is a pure function of its coordinates", "[rng]")
{
    const rng::GaussianStream a(42, 3);
    const rng::GaussianStream b(42, 3);
    const rng::GaussianStream other_seed(43, 3);
    const rng::GaussianStream other_stream(42, 4);
    for (std::uint64_t i : {0ull, 1ull, 1000ull, 1ull << 40})
    {
        CHECK(a.complex_normal(i) == b.complex_normal(i));
        CHECK(a.complex_normal(i) != other_seed.complex_normal(i));
        CHECK(a.complex_normal(i) != other_stream.complex_normal(i));
    }
}

TEST_CASE("complex normals have CN(0,1) moments", "[rng]")
{
    const rng::GaussianStream s(7);
    constexpr int n = 200000;
    double re = 0.0;
    double im = 0.0;
    double power = 0.0;
    double cross = 0.0;
    double fourth = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const auto z = s.complex_normal(i);
        re += z.real();
        im += z.imag();
        power += std::norm(z);
        cross += z.real() * z.imag();
        fourth += std::norm(z) * std::norm(z);
        const auto u = s.uniforms(i);
        REQUIRE(u[0] > 0.0);
        REQUIRE(u[0] < 1.0);
    }
    CHECK(std::abs(re / n) < 0.01);
    CHECK(std::abs(im / n) < 0.01);
    CHECK(std::abs(power / n - 1.0) < 0.01);
    CHECK(std::abs(cross / n) < 0.01);
    CHECK(std::abs(fourth / n - 2.0) < 0.05); // E|z|^4 = 2
}
