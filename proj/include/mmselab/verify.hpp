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

#ifndef MMSELAB_VERIFY_HPP
#define MMSELAB_VERIFY_HPP

#include "mmselab/channels.hpp"
#include "mmselab/closedform.hpp"
#include "mmselab/rate.hpp"

#include <functional>

namespace mmselab
{

/// |sum_i log2(1 + gamma_i) - (Nt log2 det Z - sum_i log2 det Z^{ii})| with
/// Z = I + (snr/Nt) H^H H. Requires nt >= 2.
double theorem1_identity_check(const ComplexMatrix& h, double snr);

/// Density of an unordered non-zero eigenvalue of H^H H for a semi-correlated
/// channel (q x q correlation with eigenvalues `eigs`, p antennas opposite).
double semicorr_eigen_density(const EigsDescending& eigs, int p, double lambda);

/// n * int log2(1 + (snr/Nt) lambda) f(lambda) dlambda by adaptive
/// Gauss-Kronrod quadrature. Throws NumericalError if the density mass
/// deviates from 1 by more than 1e-8.
double mi_quadrature_oracle(const EigsDescending& eigs, int p, AntennaConfig cfg, double snr);

/// Same integral for i.i.d. Rayleigh from the Laguerre-polynomial density.
double iid_mi_quadrature(int nr, int nt, double snr);

/// Evaluator routing i.i.d. and one-sided correlated models to the
/// quadrature oracles; NoClosedForm for anything else.
MiEvaluator make_quadrature_mi_evaluator();

struct HighSnrFit
{
    double slope = 0.0;
    double offset = 0.0;
};

struct LowSnrFit
{
    double i_dot = 0.0;  // dI/dsnr at 0, bits
    double i_ddot = 0.0; // d2I/dsnr2 at 0, bits
    double ebno_min = 0.0;
    double s0 = 0.0;
};

/// Two-point fit at 50 and 60 dB: slope = dI / dlog2 snr and
/// offset = log2 snr - I / slope at the upper point.
HighSnrFit fit_high_snr(const std::function<double(double)>& rate, double snr_lo_db = 50.0, double snr_hi_db = 60.0);

/// Finite differences at snr in {h, 2h, 4h} using I(0) = 0, with a
/// Richardson step for the second derivative.
LowSnrFit fit_low_snr(const std::function<double(double)>& rate, double h = 1e-4);

} // namespace mmselab

#endif
