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

#ifndef MMSELAB_CLOSEDFORM_HPP
#define MMSELAB_CLOSEDFORM_HPP

#include "mmselab/channels.hpp"
#include "mmselab/rate.hpp"

namespace mmselab
{

/// Strictly decreasing positive eigenvalues, as required by the
/// eigenvalue-expansion formulas.
class EigsDescending
{
public:
    /// Relative gap required between consecutive eigenvalues.
    static constexpr double min_relative_gap = 1e-9;

    /// Throws DomainError for non-positive or unsorted input and
    /// RepeatedEigenvalues when (v_k - v_{k+1}) / v_1 <= 1e-9.
    static EigsDescending from(const RealVector& values);
    static EigsDescending of(const CorrelationMatrix& c) { return from(c.eigenvalues()); }

    int size() const { return static_cast<int>(values_.size()); }
    const RealVector& values() const { return values_; }

private:
    RealVector values_;
};

/// Ergodic MI of an i.i.d. Rayleigh nr x nt channel,
/// E[log2 det(I + (snr/nt) H H^H)]. Dimensions up to 32.
double iid_opt_mi(int nr, int nt, double snr);

/// MMSE sum rate of an i.i.d. Rayleigh channel (nt >= 2, dims <= 32).
double iid_sum_rate(AntennaConfig cfg, double snr);

/// Ergodic MI of a semi-correlated channel whose q x q correlation side has
/// eigenvalues `eigs` and whose other side has p antennas. The power
/// normalization uses cfg.nt: the exponential-integral arguments are
/// cfg.nt / (beta_s snr).
double semicorr_opt_mi(const EigsDescending& eigs, int p, AntennaConfig cfg, double snr);

/// MMSE sum rate with receive correlation only (nt >= 2).
double rxcorr_sum_rate(const EigsDescending& r_eigs, AntennaConfig cfg, double snr);

/// MMSE sum rate with transmit correlation only (nt >= 2). Every (i,i)
/// minor of S must also have strictly separated eigenvalues.
double txcorr_sum_rate(const CorrelationMatrix& s, AntennaConfig cfg, double snr);

/// Nt E[I(snr, H)] - sum_i E[I((Nt-1)/Nt snr, H_i)] from any MI evaluator.
/// Exchangeable columns need a single reduced evaluation. The standard
/// error treats the evaluations as independent.
RateEstimate theorem1_compose(const ChannelModel& model, double snr, const MiEvaluator& mi);

/// Exact ergodic MI for models that have one (i.i.d., one-sided
/// correlation, Rician with K = 0); throws NoClosedForm otherwise.
MiEvaluator make_exact_mi_evaluator();

/// Exact MMSE sum rate, dispatched on the model kind. Throws NoClosedForm
/// for doubly-correlated and K > 0 Rician models and RepeatedEigenvalues
/// when an eigenvalue gap is too small.
double closed_form_sum_rate(const ChannelModel& model, double snr);

} // namespace mmselab

#endif
