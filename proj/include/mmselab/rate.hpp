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

#ifndef MMSELAB_RATE_HPP
#define MMSELAB_RATE_HPP

#include "mmselab/channels.hpp"

#include <functional>

namespace mmselab
{

/// A rate in bits/s/Hz with its standard error (0 for exact paths).
struct RateEstimate
{
    double value = 0.0;
    double std_error = 0.0;
};

/// E[log2 det(I + (snr/Nt) H H^H)] for the given model, where Nt is the
/// model's own transmit count. Supplied by the closed-form, quadrature and
/// Monte-Carlo engines.
using MiEvaluator = std::function<RateEstimate(const ChannelModel& model, double snr)>;

} // namespace mmselab

#endif
