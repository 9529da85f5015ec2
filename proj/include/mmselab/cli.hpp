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

#ifndef MMSELAB_CLI_HPP
#define MMSELAB_CLI_HPP

#include "mmselab/channels.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace mmselab::cli
{

// Exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_failed_check = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_no_closed_form = 3;

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// "start:step:stop" (inclusive), a comma-separated list, or one number.
std::vector<double> parse_range(std::string_view text);

struct CheckCase
{
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct SuiteReport
{
    std::string suite;
    std::vector<CheckCase> cases;

    bool pass() const;
    double max_residual() const;
    std::string to_json() const;
};

/// Per-realization determinant identity over `trials` draws cycling through
/// the given models and snr in {0.1, 1, 10, 100}.
SuiteReport identity_suite(const std::vector<ChannelModel>& models, int trials, std::uint64_t seed);

/// Special-function invariants: e^x E_h recurrence, digamma differences,
/// multivariate gamma values, 2F2 representations against each other.
SuiteReport specfun_suite();

/// Sum rate from the exact path (or, without one, from the Monte-Carlo
/// composition) against direct Monte-Carlo, 3 combined standard errors.
SuiteReport closed_vs_mc_suite(const ChannelModel& model, const std::vector<double>& snrs, std::int64_t samples,
                               std::uint64_t seed);

/// Empirical low/high-SNR fits of the exact rate against the analytic
/// parameters.
SuiteReport asymptote_suite(const ChannelModel& model);

} // namespace mmselab::cli

#endif
