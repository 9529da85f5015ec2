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

#include "mmselab/channels.hpp"
#include "mmselab/errors.hpp"
#include "mmselab/rng.hpp"

#include <json.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

namespace mmselab
{

namespace
{

constexpr double sqrt_clamp = 1e-14;
constexpr double diag_tol = 1e-12;

void check_dim(int dim, const char* what)
{
    if (dim < 1 || dim > matkit::max_dim)
        throw DomainError(std::string(what) + ": dimension must be in [1, 64]");
}

std::string format_number(double x)
{
    std::ostringstream os;
    os << x;
    return os.str();
}

} // namespace

AntennaConfig AntennaConfig::make(int nr, int nt)
{
    if (nr < 1 || nt < 1)
        throw DomainError("AntennaConfig: nr and nt must be >= 1");
    check_dim(nr, "AntennaConfig");
    check_dim(nt, "AntennaConfig");
    return AntennaConfig{nr, nt};
}

// ---------------------------------------------------------------------------

void CorrelationMatrix::factorize()
{
    ComplexMatrix vectors;
    matkit::hermitian_eig_desc(entries_, eig_, vectors);
    identity_ = entries_.isIdentity(0.0);
    RealVector root(eig_.size());
    for (Eigen::Index k = 0; k < eig_.size(); ++k)
        root(k) = std::sqrt(std::max(eig_(k), sqrt_clamp));
    sqrt_ = vectors * root.asDiagonal() * vectors.adjoint();
}

CorrelationMatrix CorrelationMatrix::from_matrix(const ComplexMatrix& entries)
{
    if (entries.rows() != entries.cols())
        throw DomainError("correlation matrix must be square");
    check_dim(static_cast<int>(entries.rows()), "correlation matrix");
    if (!entries.allFinite())
        throw DomainError("correlation matrix has non-finite entries");
    if (!matkit::is_hermitian(entries))
        throw DomainError("correlation matrix is not Hermitian");
    for (Eigen::Index k = 0; k < entries.rows(); ++k)
        if (std::abs(entries(k, k) - 1.0) > diag_tol)
            throw DomainError("correlation matrix must have unit diagonal");

    CorrelationMatrix out;
    // Symmetrize so downstream factorizations see an exactly Hermitian matrix.
    out.entries_ = 0.5 * (entries + entries.adjoint());
    for (Eigen::Index k = 0; k < entries.rows(); ++k)
        out.entries_(k, k) = 1.0;
    out.factorize();
    if (!(out.eig_(out.eig_.size() - 1) > 0.0))
        throw DomainError("correlation matrix is not positive definite");
    return out;
}

CorrelationMatrix CorrelationMatrix::identity(int dim)
{
    check_dim(dim, "identity correlation");
    CorrelationMatrix out;
    out.entries_ = ComplexMatrix::Identity(dim, dim);
    out.eig_ = RealVector::Ones(dim);
    out.sqrt_ = out.entries_;
    out.identity_ = true;
    return out;
}

CorrelationMatrix CorrelationMatrix::exponential(int dim, double rho)
{
    check_dim(dim, "exponential correlation");
    if (!(rho >= 0.0 && rho < 1.0))
        throw DomainError("exponential correlation requires 0 <= rho < 1");
    if (rho == 0.0)
        return identity(dim);
    ComplexMatrix a(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            a(i, j) = std::pow(rho, std::abs(i - j));
    return from_matrix(a);
}

CorrelationMatrix CorrelationMatrix::minor(int i) const
{
    if (dim() < 2)
        throw DomainError("minor of a 1x1 correlation matrix");
    if (i < 0 || i >= dim())
        throw DomainError("minor index out of range");
    if (identity_)
        return identity(dim() - 1);
    return from_matrix(matkit::principal_minor(entries_, i));
}

double CorrelationMatrix::trace_of_square() const
{
    // tr(A^2) = sum |a_ij|^2 for Hermitian A
    return entries_.cwiseAbs2().sum();
}

// ---------------------------------------------------------------------------

ComplexVector array_response(int dim, double theta)
{
    ComplexVector a(dim);
    const double phase = std::numbers::pi * std::sin(theta);
    for (int k = 0; k < dim; ++k)
        a(k) = std::polar(1.0, phase * k);
    return a;
}

ChannelModel::ChannelModel(ModelKind kind, AntennaConfig cfg, CorrelationMatrix r, CorrelationMatrix s)
    : kind_(kind), cfg_(cfg), receive_(std::move(r)), transmit_(std::move(s))
{
}

ChannelModel ChannelModel::iid(AntennaConfig cfg)
{
    cfg = AntennaConfig::make(cfg.nr, cfg.nt);
    return ChannelModel(ModelKind::iid, cfg, CorrelationMatrix::identity(cfg.nr), CorrelationMatrix::identity(cfg.nt));
}

ChannelModel ChannelModel::separable(CorrelationMatrix receive, CorrelationMatrix transmit)
{
    const AntennaConfig cfg = AntennaConfig::make(receive.dim(), transmit.dim());
    return ChannelModel(ModelKind::separable, cfg, std::move(receive), std::move(transmit));
}

ChannelModel ChannelModel::rician(AntennaConfig cfg, double k_factor, double theta_r, double theta_t)
{
    cfg = AntennaConfig::make(cfg.nr, cfg.nt);
    if (!(k_factor >= 0.0) || !std::isfinite(k_factor))
        throw DomainError("Rician K-factor must be finite and >= 0");
    if (!std::isfinite(theta_r) || !std::isfinite(theta_t))
        throw DomainError("Rician angles must be finite");
    ChannelModel out(ModelKind::rician, cfg, CorrelationMatrix::identity(cfg.nr), CorrelationMatrix::identity(cfg.nt));
    out.k_factor_ = k_factor;
    out.theta_r_ = theta_r;
    out.theta_t_ = theta_t;
    out.a_r_ = array_response(cfg.nr, theta_r);
    out.a_t_ = array_response(cfg.nt, theta_t);
    return out;
}

ComplexMatrix ChannelModel::mean() const
{
    if (kind_ != ModelKind::rician || k_factor_ == 0.0)
        return ComplexMatrix::Zero(cfg_.nr, cfg_.nt);
    return std::sqrt(k_factor_ / (k_factor_ + 1.0)) * a_r_ * a_t_.transpose();
}

ChannelModel ChannelModel::without_tx_column(int i) const
{
    if (cfg_.nt < 2)
        throw DomainError("removing a transmit column requires nt >= 2");
    if (i < 0 || i >= cfg_.nt)
        throw DomainError("transmit column index out of range");
    switch (kind_)
    {
    case ModelKind::iid:
        return iid(AntennaConfig{cfg_.nr, cfg_.nt - 1});
    case ModelKind::separable:
        return separable(receive_, transmit_.minor(i));
    case ModelKind::rician:
    {
        ChannelModel out = rician(AntennaConfig{cfg_.nr, cfg_.nt - 1}, k_factor_, theta_r_, theta_t_);
        ComplexVector a(cfg_.nt - 1);
        for (int k = 0, j = 0; k < cfg_.nt; ++k)
            if (k != i)
                a(j++) = a_t_(k);
        out.a_t_ = a;
        return out;
    }
    }
    throw DomainError("unknown channel model");
}

bool ChannelModel::columns_exchangeable() const
{
    return kind_ != ModelKind::separable || transmit_.is_identity();
}

std::string ChannelModel::describe() const
{
    const std::string dims = std::to_string(cfg_.nr) + "x" + std::to_string(cfg_.nt);
    switch (kind_)
    {
    case ModelKind::iid:
        return "iid:" + dims;
    case ModelKind::separable:
        return "separable:" + dims;
    case ModelKind::rician:
        return "rician:" + dims + ":K=" + format_number(k_factor_);
    }
    return "unknown";
}

// ---------------------------------------------------------------------------

namespace
{

using nlohmann::json;

ComplexMatrix parse_matrix(const json& j, const char* name)
{
    if (!j.is_array() || j.empty())
        throw DomainError(std::string(name) + ": expected a non-empty array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    ComplexMatrix out(rows, rows);
    for (Eigen::Index r = 0; r < rows; ++r)
    {
        const json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != rows)
            throw DomainError(std::string(name) + ": matrix must be square");
        for (Eigen::Index c = 0; c < rows; ++c)
        {
            const json& e = row[static_cast<std::size_t>(c)];
            if (e.is_number())
                out(r, c) = e.get<double>();
            else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
                out(r, c) = {e[0].get<double>(), e[1].get<double>()};
            else
                throw DomainError(std::string(name) + ": entries must be numbers or [re, im]");
        }
    }
    return out;
}

double number_field(const json& j, const char* key)
{
    if (!j.at(key).is_number())
        throw DomainError(std::string("field '") + key + "' must be a number");
    return j.at(key).get<double>();
}

int int_field(const json& j, const char* key)
{
    if (!j.contains(key))
        throw DomainError(std::string("missing field '") + key + "'");
    if (!j.at(key).is_number_integer())
        throw DomainError(std::string("field '") + key + "' must be an integer");
    return j.at(key).get<int>();
}

} // namespace

ChannelSpec ChannelSpec::from_json_text(std::string_view text)
{
    json j;
    try
    {
        j = json::parse(text);
    }
    catch (const json::parse_error& e)
    {
        throw DomainError(std::string("channel config: ") + e.what());
    }
    if (!j.is_object())
        throw DomainError("channel config must be a JSON object");

    ChannelSpec spec;
    if (j.contains("model"))
    {
        if (!j["model"].is_string())
            throw DomainError("field 'model' must be a string");
        spec.model = j["model"].get<std::string>();
    }
    if (spec.model != "iid" && spec.model != "separable" && spec.model != "rician")
        throw DomainError("unknown model '" + spec.model + "'");

    if (j.contains("R"))
        spec.r = parse_matrix(j["R"], "R");
    if (j.contains("S"))
        spec.s = parse_matrix(j["S"], "S");
    spec.nr = j.contains("nr") ? int_field(j, "nr") : (spec.r ? static_cast<int>(spec.r->rows()) : 0);
    spec.nt = j.contains("nt") ? int_field(j, "nt") : (spec.s ? static_cast<int>(spec.s->rows()) : 0);
    if (j.contains("rho_r"))
        spec.rho_r = number_field(j, "rho_r");
    if (j.contains("rho_t"))
        spec.rho_t = number_field(j, "rho_t");
    if (j.contains("k_factor"))
        spec.k_factor = number_field(j, "k_factor");
    if (j.contains("theta_r"))
        spec.theta_r = number_field(j, "theta_r");
    if (j.contains("theta_t"))
        spec.theta_t = number_field(j, "theta_t");
    return spec;
}

ChannelModel build_model(const ChannelSpec& spec)
{
    const AntennaConfig cfg = AntennaConfig::make(spec.nr, spec.nt);
    if (spec.model == "iid")
        return ChannelModel::iid(cfg);
    if (spec.model == "rician")
        return ChannelModel::rician(cfg, spec.k_factor, spec.theta_r, spec.theta_t);
    if (spec.model != "separable")
        throw DomainError("unknown model '" + spec.model + "'");

    auto side = [](const std::optional<ComplexMatrix>& m, const std::optional<double>& rho, int dim, const char* name) {
        if (m)
        {
            if (m->rows() != dim)
                throw DomainError(std::string(name) + " dimension does not match antenna count");
            return CorrelationMatrix::from_matrix(*m);
        }
        return CorrelationMatrix::exponential(dim, rho.value_or(0.0));
    };
    return ChannelModel::separable(side(spec.r, spec.rho_r, cfg.nr, "R"), side(spec.s, spec.rho_t, cfg.nt, "S"));
}

ComplexMatrix sample_channel(const ChannelModel& model, std::uint64_t seed, std::uint64_t index)
{
    const int nr = model.config().nr;
    const int nt = model.config().nt;
    const rng::GaussianStream stream(seed);
    const std::uint64_t base = index * static_cast<std::uint64_t>(nr * nt);

    ComplexMatrix g(nr, nt);
    for (int c = 0; c < nt; ++c)
        for (int r = 0; r < nr; ++r)
            g(r, c) = stream.complex_normal(base + static_cast<std::uint64_t>(c * nr + r));

    switch (model.kind())
    {
    case ModelKind::iid:
        return g;
    case ModelKind::separable:
    {
        if (!model.receive().is_identity())
            g = model.receive().sqrt() * g;
        if (!model.transmit().is_identity())
            g = g * model.transmit().sqrt();
        return g;
    }
    case ModelKind::rician:
    {
        const double k = model.k_factor();
        const double los = std::sqrt(k / (k + 1.0));
        const double diffuse = std::sqrt(1.0 / (k + 1.0));
        const ComplexVector& ar = model.rx_response();
        const ComplexVector& at = model.tx_response();
        // D_r (los 11^T + diffuse G) D_t: same law as M + diffuse G, with
        // per-draw rates independent of the steering angles.
        for (int c = 0; c < nt; ++c)
            for (int r = 0; r < nr; ++r)
                g(r, c) = ar(r) * (los + diffuse * g(r, c)) * at(c);
        return g;
    }
    }
    return g;
}

} // namespace mmselab
