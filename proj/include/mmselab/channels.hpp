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

#ifndef MMSELAB_CHANNELS_HPP
#define MMSELAB_CHANNELS_HPP

#include "mmselab/matkit.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace mmselab
{

/// Antenna counts plus the derived indices used throughout the closed forms.
struct AntennaConfig
{
    int nr = 1;
    int nt = 1;

    /// Validating constructor; throws DomainError unless nr, nt >= 1.
    static AntennaConfig make(int nr, int nt);

    int n() const { return nr < nt ? nr : nt; }
    int m() const { return nr < nt ? nt : nr; }
    // Same quantities for a channel with one transmit column removed.
    int n_reduced() const { return nr < nt - 1 ? nr : nt - 1; }
    int m_reduced() const { return nr < nt - 1 ? nt - 1 : nr; }
    /// beta = Nt / Nr.
    double load_ratio() const { return static_cast<double>(nt) / nr; }

    bool operator==(const AntennaConfig&) const = default;
};

/// Hermitian positive-definite matrix with unit diagonal. Eigenvalues
/// (descending) and the Hermitian square root are computed once on
/// construction.
class CorrelationMatrix
{
public:
    /// Validates Hermitian symmetry, unit diagonal (1e-12) and positive
    /// definiteness; throws DomainError otherwise.
    static CorrelationMatrix from_matrix(const ComplexMatrix& entries);
    static CorrelationMatrix identity(int dim);
    /// Exponential model with (i,j) entry rho^|i-j|, 0 <= rho < 1.
    static CorrelationMatrix exponential(int dim, double rho);

    int dim() const { return static_cast<int>(entries_.rows()); }
    const ComplexMatrix& matrix() const { return entries_; }
    const RealVector& eigenvalues() const { return eig_; }
    const ComplexMatrix& sqrt() const { return sqrt_; }
    bool is_identity() const { return identity_; }

    /// (i,i) minor, itself a valid correlation matrix.
    CorrelationMatrix minor(int i) const;
    double trace_of_square() const;

private:
    CorrelationMatrix() = default;
    void factorize();

    ComplexMatrix entries_;
    RealVector eig_;
    ComplexMatrix sqrt_;
    bool identity_ = false;
};

inline CorrelationMatrix build_exp_correlation(int dim, double rho)
{
    return CorrelationMatrix::exponential(dim, rho);
}

/// Uniform linear array, half-wavelength spacing: a_k = exp(i pi k sin theta).
ComplexVector array_response(int dim, double theta);

enum class ModelKind
{
    iid,
    separable,
    rician
};

/// Immutable channel description: i.i.d. Rayleigh, separable (Kronecker)
/// correlated Rayleigh R (x) S, or uncorrelated Rician with a rank-1
/// specular component. All kinds satisfy E[tr(HH^H)] = Nr Nt.
class ChannelModel
{
public:
    static ChannelModel iid(AntennaConfig cfg);
    static ChannelModel separable(CorrelationMatrix receive, CorrelationMatrix transmit);
    static ChannelModel rician(AntennaConfig cfg, double k_factor, double theta_r = 0.0, double theta_t = 0.0);

    ModelKind kind() const { return kind_; }
    const AntennaConfig& config() const { return cfg_; }

    // Identity for i.i.d. and Rician models.
    const CorrelationMatrix& receive() const { return receive_; }
    const CorrelationMatrix& transmit() const { return transmit_; }

    double k_factor() const { return k_factor_; }
    double theta_r() const { return theta_r_; }
    double theta_t() const { return theta_t_; }
    const ComplexVector& rx_response() const { return a_r_; }
    const ComplexVector& tx_response() const { return a_t_; }

    /// E[H]: sqrt(K/(K+1)) a(theta_r) a(theta_t)^T, zero for Rayleigh kinds.
    ComplexMatrix mean() const;

    /// Distribution of H_i, the channel with transmit column i removed.
    ChannelModel without_tx_column(int i) const;

    /// True when every H_i has the same distribution (no transmit
    /// correlation), so the Nt reduced terms coincide.
    bool columns_exchangeable() const;

    bool receive_correlated() const { return !receive_.is_identity(); }
    bool transmit_correlated() const { return !transmit_.is_identity(); }

    /// Short label such as "iid:2x2", "separable:5x3" or "rician:2x2:K=2".
    std::string describe() const;

private:
    ChannelModel(ModelKind kind, AntennaConfig cfg, CorrelationMatrix r, CorrelationMatrix s);

    ModelKind kind_;
    AntennaConfig cfg_;
    CorrelationMatrix receive_;
    CorrelationMatrix transmit_;
    double k_factor_ = 0.0;
    double theta_r_ = 0.0;
    double theta_t_ = 0.0;
    ComplexVector a_r_;
    ComplexVector a_t_;
};

/// Parsed channel configuration document:
/// {"model":"iid|separable|rician","nr":int,"nt":int,"rho_r":num?,"rho_t":num?,
///  "R":[[..]]?,"S":[[..]]?,"k_factor":num?,"theta_r":num?,"theta_t":num?}
/// Matrix entries are numbers or [re, im] pairs; explicit matrices take
/// precedence over the rho shorthand.
struct ChannelSpec
{
    std::string model = "iid";
    int nr = 1;
    int nt = 1;
    std::optional<double> rho_r;
    std::optional<double> rho_t;
    std::optional<ComplexMatrix> r;
    std::optional<ComplexMatrix> s;
    double k_factor = 0.0;
    double theta_r = 0.0;
    double theta_t = 0.0;

    /// Throws DomainError on malformed JSON or wrong field types.
    static ChannelSpec from_json_text(std::string_view text);
};

ChannelModel build_model(const ChannelSpec& spec);

/// One Nr x Nt realization; a pure function of (model, seed, index).
ComplexMatrix sample_channel(const ChannelModel& model, std::uint64_t seed, std::uint64_t index);

} // namespace mmselab

#endif
