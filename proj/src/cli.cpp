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

#include "mmselab/cli.hpp"
#include "mmselab/asymptotics.hpp"
#include "mmselab/closedform.hpp"
#include "mmselab/errors.hpp"
#include "mmselab/montecarlo.hpp"
#include "mmselab/specfun.hpp"
#include "mmselab/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

namespace mmselab::cli
{

namespace
{

constexpr double db_per_log2 = 3.0102999566398119521; // 10 log10 2

double from_db(double db) { return std::pow(10.0, db / 10.0); }

std::string fmt(double x)
{
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", x == 0.0 ? 0.0 : x);
    return buf;
}

// A failure that maps to a specific exit code.
struct ExitError
{
    int code;
    std::string message;
};

struct ModelFlags
{
    std::string model = "iid";
    int nr = 2;
    int nt = 2;
    std::optional<double> rho_r;
    std::optional<double> rho_t;
    double k_factor = 0.0;
    double theta_r = 0.0;
    double theta_t = 0.0;
    std::string config;

    void attach(CLI::App* app)
    {
        app->add_option("--model", model, "Channel model")->check(CLI::IsMember({"iid", "separable", "rician"}));
        app->add_option("--nr", nr, "Receive antennas")->check(CLI::Range(1, 64));
        app->add_option("--nt", nt, "Transmit antennas")->check(CLI::Range(1, 64));
        app->add_option("--rho-r", rho_r, "Exponential receive correlation coefficient");
        app->add_option("--rho-t", rho_t, "Exponential transmit correlation coefficient");
        app->add_option("--k", k_factor, "Rician K-factor");
        app->add_option("--theta-r", theta_r, "Angle of arrival (rad)");
        app->add_option("--theta-t", theta_t, "Angle of departure (rad)");
        app->add_option("--config", config, "Channel configuration JSON file (replaces the model flags)");
    }

    ChannelModel build() const
    {
        try
        {
            if (!config.empty())
            {
                std::ifstream in(config);
                if (!in)
                    throw ExitError{exit_usage, "cannot read config file '" + config + "'"};
                std::stringstream buf;
                buf << in.rdbuf();
                return build_model(ChannelSpec::from_json_text(buf.str()));
            }
            ChannelSpec spec;
            spec.model = model;
            spec.nr = nr;
            spec.nt = nt;
            spec.rho_r = rho_r;
            spec.rho_t = rho_t;
            spec.k_factor = k_factor;
            spec.theta_r = theta_r;
            spec.theta_t = theta_t;
            return build_model(spec);
        }
        catch (const DomainError& e)
        {
            throw ExitError{exit_usage, e.what()};
        }
    }
};

enum class Method
{
    closed,
    mc,
    quad,
    affine
};

std::string method_name(Method m)
{
    switch (m)
    {
    case Method::closed:
        return "closed";
    case Method::mc:
        return "mc";
    case Method::quad:
        return "quad";
    case Method::affine:
        return "affine";
    }
    return "?";
}

Method parse_method(const std::string& s)
{
    if (s == "closed")
        return Method::closed;
    if (s == "mc")
        return Method::mc;
    if (s == "quad")
        return Method::quad;
    return Method::affine;
}

struct Row
{
    double x = 0.0;
    double value = 0.0;
    std::optional<double> std_error;
    std::string method;
    std::string model;
};

std::string render_csv(const std::string& x_name, const std::string& value_name, const std::vector<Row>& rows)
{
    std::ostringstream os;
    os << x_name << ',' << value_name << ",stderr,method,model\n";
    for (const Row& r : rows)
    {
        os << fmt(r.x) << ',' << fmt(r.value) << ',';
        if (r.std_error)
            os << fmt(*r.std_error);
        os << ',' << r.method << ',' << r.model << '\n';
    }
    return os.str();
}

// Whole document or nothing: file output goes through a temporary and a rename.
void emit(const std::string& text, const std::string& path, std::ostream& out)
{
    if (path.empty())
    {
        out << text;
        out.flush();
        return;
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f)
            throw ExitError{exit_usage, "cannot write '" + tmp + "'"};
        f << text;
        if (!f.flush())
            throw ExitError{exit_usage, "write to '" + tmp + "' failed"};
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
    {
        std::filesystem::remove(tmp, ec);
        throw ExitError{exit_usage, "cannot rename output to '" + path + "'"};
    }
}

struct Point
{
    double value;
    std::optional<double> std_error;
};

Point evaluate(const ChannelModel& model, double snr, Method method, Receiver receiver, std::int64_t samples,
               std::uint64_t seed)
{
    switch (method)
    {
    case Method::closed:
        if (receiver == Receiver::opt)
            return {make_exact_mi_evaluator()(model, snr).value, std::nullopt};
        return {closed_form_sum_rate(model, snr), std::nullopt};
    case Method::quad:
        if (receiver == Receiver::opt)
            return {make_quadrature_mi_evaluator()(model, snr).value, std::nullopt};
        return {theorem1_compose(model, snr, make_quadrature_mi_evaluator()).value, std::nullopt};
    case Method::mc:
    {
        const Metric metric{receiver == Receiver::opt ? MetricKind::opt_mi : MetricKind::mmse_rate, 0};
        const MonteCarloEstimate e = mc_estimate(model, snr, metric, samples, seed);
        return {e.mean, e.std_error};
    }
    case Method::affine:
    {
        const HighSnrAffine p = high_snr_params(model, receiver);
        if (!p.finite_offset())
            throw ExitError{exit_usage, "affine expansion undefined: the MMSE power offset is infinite for nr < nt"};
        return {affine_rate(p, snr), std::nullopt};
    }
    }
    return {0.0, std::nullopt};
}

// ---------------------------------------------------------------------------

struct RateArgs
{
    ModelFlags model;
    std::string snr_db = "0:5:30";
    std::string method = "closed";
    std::string receiver = "mmse";
    std::string fallback;
    std::int64_t samples = 100000;
    std::uint64_t seed = 1;
    std::string out;
};

int run_rate(const RateArgs& a, std::ostream& out, std::ostream& err)
{
    const ChannelModel model = a.model.build();
    std::vector<double> grid;
    try
    {
        grid = parse_range(a.snr_db);
    }
    catch (const DomainError& e)
    {
        throw ExitError{exit_usage, e.what()};
    }
    const Receiver receiver = a.receiver == "opt" ? Receiver::opt : Receiver::mmse;
    const Method method = parse_method(a.method);
    if (receiver == Receiver::mmse && model.config().nt < 2 && method != Method::mc && method != Method::affine)
        throw ExitError{exit_usage, "the MMSE sum-rate closed forms need nt >= 2"};

    std::vector<Row> rows;
    bool warned = false;
    for (double db : grid)
    {
        const double snr = from_db(db);
        Method used = method;
        Point p{};
        try
        {
            p = evaluate(model, snr, method, receiver, a.samples, a.seed);
        }
        catch (const RepeatedEigenvalues& e)
        {
            if (a.fallback.empty())
                throw ExitError{exit_no_closed_form, std::string(e.what()) + " (use --fallback mc|quad)"};
            used = parse_method(a.fallback);
            if (!warned)
                err << "note: " << e.what() << "; using " << a.fallback << '\n';
            warned = true;
            p = evaluate(model, snr, used, receiver, a.samples, a.seed);
        }
        catch (const NoClosedForm& e)
        {
            if (a.fallback.empty())
                throw ExitError{exit_no_closed_form, std::string(e.what()) + " (use --fallback mc)"};
            used = parse_method(a.fallback);
            if (!warned)
                err << "note: " << e.what() << "; using " << a.fallback << '\n';
            warned = true;
            p = evaluate(model, snr, used, receiver, a.samples, a.seed);
        }
        std::string label = model.describe();
        if (receiver == Receiver::opt)
            label += ":opt";
        rows.push_back({db, p.value, p.std_error, method_name(used), label});
    }
    emit(render_csv("snr_db", "value_bits", rows), a.out, out);
    return exit_ok;
}

// ---------------------------------------------------------------------------

struct FigureArgs
{
    int id = 1;
    std::int64_t samples = 100000;
    std::uint64_t seed = 1;
    std::string out;
};

std::vector<Row> sweep_rows(const ChannelModel& model, const std::string& label, const std::vector<double>& grid,
                            std::int64_t samples, std::uint64_t seed)
{
    std::vector<Row> rows;
    const HighSnrAffine hp = high_snr_params(model, Receiver::mmse);
    for (double db : grid)
    {
        const double snr = from_db(db);
        rows.push_back({db, closed_form_sum_rate(model, snr), std::nullopt, "closed", label});
        const MonteCarloEstimate e = mc_estimate(model, snr, Metric{MetricKind::mmse_rate, 0}, samples, seed);
        rows.push_back({db, e.mean, e.std_error, "mc", label});
        if (hp.finite_offset())
            rows.push_back({db, affine_rate(hp, snr), std::nullopt, "affine", label});
    }
    return rows;
}

int run_figure(const FigureArgs& a, std::ostream& out)
{
    std::vector<Row> rows;
    std::string x_name = "snr_db";
    std::string value_name = "value_bits";
    const std::vector<double> snr_grid = parse_range("0:5:30");

    switch (a.id)
    {
    case 1:
        for (int n : {2, 4})
        {
            const ChannelModel m = ChannelModel::iid({n, n});
            auto r = sweep_rows(m, m.describe(), snr_grid, a.samples, a.seed);
            rows.insert(rows.end(), r.begin(), r.end());
        }
        break;
    case 2:
    {
        // Spectral efficiency against received Eb/N0 for a 3x3 i.i.d. channel.
        x_name = "ebno_db";
        const ChannelModel m = ChannelModel::iid({3, 3});
        const LowSnrParams lp = low_snr_params(m);
        for (double db : parse_range("-1.5:0.25:4"))
        {
            const double ebno_tx = from_db(db) / lp.received_factor;
            for (Receiver rx : {Receiver::mmse, Receiver::opt})
            {
                const std::string label = m.describe() + (rx == Receiver::opt ? ":opt" : ":mmse");
                auto rate = [&](double snr) {
                    return rx == Receiver::opt ? iid_opt_mi(3, 3, snr) : closed_form_sum_rate(m, snr);
                };
                if (ebno_tx > lp.ebno_min)
                {
                    const double snr = solve_snr_for_ebno(rate, ebno_tx);
                    rows.push_back({db, rate(snr), std::nullopt, "closed", label});
                    rows.push_back({db, wideband_rate(lp, ebno_tx, rx), std::nullopt, "wideband", label});
                }
            }
        }
        break;
    }
    case 3:
        for (double rho : {0.5, 0.9})
        {
            const ChannelModel m = ChannelModel::separable(CorrelationMatrix::identity(5), CorrelationMatrix::exponential(3, rho));
            auto r = sweep_rows(m, m.describe() + ":rho_t=" + fmt(rho), snr_grid, a.samples, a.seed);
            rows.insert(rows.end(), r.begin(), r.end());
        }
        break;
    case 4:
    {
        x_name = "k_factor";
        value_name = "value_db";
        const AntennaConfig cfg{2, 2};
        for (double k : parse_range("0:0.5:20"))
        {
            rows.push_back({k, db_per_log2 * rician_offset_shift(cfg, k), std::nullopt, "h1", "rician:2x2"});
            rows.push_back({k, db_per_log2 * rician_excess_shift(cfg, k), std::nullopt, "h2", "rician:2x2"});
        }
        break;
    }
    case 5:
    {
        x_name = "rho";
        value_name = "value_db";
        for (int n : {2, 4})
            for (double rho : parse_range("0:0.05:0.95"))
            {
                const CorrelationMatrix c = CorrelationMatrix::exponential(n, rho);
                const std::string label = "separable:" + std::to_string(n) + "x" + std::to_string(n);
                rows.push_back({rho, db_per_log2 * offset_shift_tx(c), std::nullopt, "f_tx", label});
                rows.push_back({rho, db_per_log2 * offset_shift_rx(c, n), std::nullopt, "g_rx", label});
            }
        break;
    }
    default:
        throw ExitError{exit_usage, "figure id must be 1..5"};
    }
    emit(render_csv(x_name, value_name, rows), a.out, out);
    return exit_ok;
}

// ---------------------------------------------------------------------------

struct VerifyArgs
{
    ModelFlags model;
    std::string suite;
    int trials = 1000;
    std::int64_t samples = 200000;
    std::uint64_t seed = 1;
    std::string snr_db = "0,10,20";
    bool model_given = false;
};

int run_verify(const VerifyArgs& a, std::ostream& out)
{
    SuiteReport report;
    if (a.suite == "identity")
    {
        std::vector<ChannelModel> models;
        if (a.model_given)
            models.push_back(a.model.build());
        else
        {
            models.push_back(ChannelModel::iid({4, 3}));
            models.push_back(ChannelModel::separable(CorrelationMatrix::exponential(4, 0.7), CorrelationMatrix::exponential(3, 0.5)));
            models.push_back(ChannelModel::rician({4, 3}, 2.0, 0.3, -0.7));
        }
        if (a.trials < 1)
            throw ExitError{exit_usage, "--trials must be >= 1"};
        report = identity_suite(models, a.trials, a.seed);
    }
    else if (a.suite == "specfun")
        report = specfun_suite();
    else if (a.suite == "closed-vs-mc")
    {
        std::vector<double> snrs;
        for (double db : parse_range(a.snr_db))
            snrs.push_back(from_db(db));
        report = closed_vs_mc_suite(a.model.build(), snrs, a.samples, a.seed);
    }
    else
        report = asymptote_suite(a.model.build());

    out << report.to_json() << '\n';
    return report.pass() ? exit_ok : exit_failed_check;
}

} // namespace

// ---------------------------------------------------------------------------

std::vector<double> parse_range(std::string_view text)
{
    auto number = [&](std::string_view s) {
        const std::string str(s);
        std::size_t used = 0;
        double v = 0.0;
        try
        {
            v = std::stod(str, &used);
        }
        catch (const std::exception&)
        {
            throw DomainError("bad number '" + str + "' in range '" + std::string(text) + "'");
        }
        if (used != str.size() || !std::isfinite(v))
            throw DomainError("bad number '" + str + "' in range '" + std::string(text) + "'");
        return v;
    };

    std::vector<double> out;
    if (text.find(':') != std::string_view::npos)
    {
        const auto c1 = text.find(':');
        const auto c2 = text.find(':', c1 + 1);
        if (c2 == std::string_view::npos || text.find(':', c2 + 1) != std::string_view::npos)
            throw DomainError("range must be start:step:stop");
        const double start = number(text.substr(0, c1));
        const double step = number(text.substr(c1 + 1, c2 - c1 - 1));
        const double stop = number(text.substr(c2 + 1));
        if (!(step > 0.0))
            throw DomainError("range step must be positive");
        if (stop < start)
            throw DomainError("range stop must not be below start");
        const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
        if (count > 100000)
            throw DomainError("range has too many points");
        for (long i = 0; i < count; ++i)
            out.push_back(start + static_cast<double>(i) * step);
        return out;
    }
    std::size_t begin = 0;
    while (begin <= text.size())
    {
        const auto comma = text.find(',', begin);
        const auto end = comma == std::string_view::npos ? text.size() : comma;
        out.push_back(number(text.substr(begin, end - begin)));
        if (comma == std::string_view::npos)
            break;
        begin = comma + 1;
    }
    return out;
}

bool SuiteReport::pass() const
{
    return !cases.empty() && std::all_of(cases.begin(), cases.end(), [](const CheckCase& c) { return c.pass; });
}

double SuiteReport::max_residual() const
{
    double m = 0.0;
    for (const CheckCase& c : cases)
        m = std::max(m, c.residual);
    return m;
}

std::string SuiteReport::to_json() const
{
    nlohmann::json details = nlohmann::json::array();
    for (const CheckCase& c : cases)
        details.push_back({{"name", c.name}, {"residual", c.residual}, {"tolerance", c.tolerance}, {"pass", c.pass}});
    nlohmann::json j = {{"suite", suite},
                        {"cases", cases.size()},
                        {"max_residual", max_residual()},
                        {"pass", pass()},
                        {"details", details}};
    return j.dump();
}

SuiteReport identity_suite(const std::vector<ChannelModel>& models, int trials, std::uint64_t seed)
{
    static constexpr double snrs[] = {0.1, 1.0, 10.0, 100.0};
    SuiteReport report{"identity", {}};
    for (std::size_t m = 0; m < models.size(); ++m)
    {
        double worst = 0.0;
        for (int t = static_cast<int>(m); t < trials; t += static_cast<int>(models.size()))
        {
            const ComplexMatrix h = sample_channel(models[m], seed, static_cast<std::uint64_t>(t));
            const double snr = snrs[(t / models.size()) % 4];
            worst = std::max(worst, theorem1_identity_check(h, snr));
        }
        report.cases.push_back({models[m].describe(), worst, 1e-9, worst < 1e-9});
    }
    return report;
}

SuiteReport specfun_suite()
{
    SuiteReport report{"specfun", {}};

    double rec = 0.0;
    for (int h = 1; h <= 20; ++h)
        for (int i = 0; i <= 60; ++i)
        {
            const double x = std::pow(10.0, -3.0 + 0.1 * i);
            const double next = specfun::expint_scaled(h + 1, x);
            const double via = (1.0 - x * specfun::expint_scaled(h, x)) / h;
            rec = std::max(rec, std::abs(next - via) / std::abs(next));
        }
    report.cases.push_back({"expint_recurrence", rec, 1e-12, rec <= 1e-12});

    // Deviation of psi(j+1) - psi(j) from 1/j, in ulps of 1/j.
    double ulps = 0.0;
    for (int j = 1; j <= 64; ++j)
    {
        const double exact = 1.0 / j;
        const double ulp = std::nextafter(exact, 2.0) - exact;
        ulps = std::max(ulps, std::abs(specfun::digamma_int(j + 1) - specfun::digamma_int(j) - exact) / ulp);
    }
    report.cases.push_back({"digamma_difference_ulps", ulps, 1.0, ulps <= 1.0});

    const double g = std::max({std::abs(specfun::log_multivariate_gamma(1, 1)),
                               std::abs(specfun::log_multivariate_gamma(2, 3) - std::log(2.0)),
                               std::abs(specfun::log_multivariate_gamma(3, 5) - std::log(288.0))});
    report.cases.push_back({"multivariate_gamma", g, 1e-12, g <= 1e-12});

    double series = 0.0;
    double overlap = 0.0;
    double theta = 0.0;
    for (int nr = 1; nr <= 8; ++nr)
    {
        for (int i = 0; i <= 40; ++i)
        {
            const double z = 0.01 * std::pow(1000.0, i / 40.0); // 0.01 .. 10
            if (auto s = specfun::detail::hyp2f2_series(nr, z))
                series = std::max(series, std::abs(*s / specfun::detail::hyp2f2_poisson_series(nr, z) - 1.0));
        }
        for (double z = 20.0; z <= 30.0; z += 0.5)
            overlap = std::max(overlap, std::abs(specfun::detail::hyp2f2_quadrature(nr, z) /
                                                     specfun::detail::hyp2f2_poisson_series(nr, z) -
                                                 1.0));
        for (int i = 0; i <= 30; ++i)
        {
            const double z = 1e-3 * std::pow(1e6, i / 30.0); // 1e-3 .. 1e3
            theta = std::max(theta, std::abs(specfun::theta_2f2(nr, 1, z / nr) /
                                                 specfun::detail::hyp2f2_poisson_series(nr, z) -
                                             1.0));
        }
    }
    report.cases.push_back({"hyp2f2_series_small_z", series, 1e-9, series <= 1e-9});
    report.cases.push_back({"hyp2f2_quadrature_overlap_20_30", overlap, 1e-9, overlap <= 1e-9});
    report.cases.push_back({"theta_2f2_full_range", theta, 1e-9, theta <= 1e-9});
    return report;
}

SuiteReport closed_vs_mc_suite(const ChannelModel& model, const std::vector<double>& snrs, std::int64_t samples,
                               std::uint64_t seed)
{
    SuiteReport report{"closed-vs-mc", {}};
    for (double snr : snrs)
    {
        double ref = 0.0;
        double ref_se = 0.0;
        std::string path = "closed";
        try
        {
            ref = closed_form_sum_rate(model, snr);
        }
        catch (const NoClosedForm&)
        {
            const RateEstimate r = theorem1_compose(model, snr, make_mc_mi_evaluator(samples, seed + 1));
            ref = r.value;
            ref_se = r.std_error;
            path = "mc-composed";
        }
        const MonteCarloEstimate e = mc_estimate(model, snr, Metric{MetricKind::mmse_rate, 0}, samples, seed);
        const double tol = 3.0 * std::sqrt(e.std_error * e.std_error + ref_se * ref_se);
        const double diff = std::abs(e.mean - ref);
        report.cases.push_back({model.describe() + ":" + path + ":snr_db=" + fmt(10.0 * std::log10(snr)), diff, tol, diff <= tol});
    }
    return report;
}

SuiteReport asymptote_suite(const ChannelModel& model)
{
    SuiteReport report{"asymptote", {}};
    const AntennaConfig cfg = model.config();
    auto rate = [&](double snr) { return closed_form_sum_rate(model, snr); };

    const LowSnrParams lp = low_snr_params(model);
    const LowSnrFit lf = fit_low_snr(rate);
    const double e_ebno = std::abs(lf.ebno_min / lp.ebno_min - 1.0);
    const double e_s0 = std::abs(lf.s0 / lp.s0 - 1.0);
    report.cases.push_back({"ebno_min_relative", e_ebno, 0.01, e_ebno <= 0.01});
    report.cases.push_back({"wideband_slope_relative", e_s0, 0.02, e_s0 <= 0.02});

    const HighSnrFit hf = fit_high_snr(rate);
    const HighSnrAffine hp = high_snr_params(model, Receiver::mmse);
    const double e_slope = std::abs(hf.slope - hp.slope);
    report.cases.push_back({"high_snr_slope", e_slope, 0.01, e_slope <= 0.01});
    if (hp.finite_offset() && cfg.nr >= cfg.nt)
    {
        const double e_off = std::abs(hf.offset - hp.offset);
        report.cases.push_back({"high_snr_offset", e_off, 0.02, e_off <= 0.02});
    }
    return report;
}

// ---------------------------------------------------------------------------

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"mmse_lab: achievable sum rate of MIMO linear-MMSE receivers"};
    app.require_subcommand(1);

    RateArgs rate_args;
    CLI::App* rate = app.add_subcommand("rate", "Sweep the sum rate over an SNR grid (CSV)");
    rate_args.model.attach(rate);
    rate->add_option("--snr-db", rate_args.snr_db, "SNR grid in dB: start:step:stop or a list");
    rate->add_option("--method", rate_args.method, "Evaluation path")->check(CLI::IsMember({"closed", "mc", "quad", "affine"}));
    rate->add_option("--receiver", rate_args.receiver, "Receiver")->check(CLI::IsMember({"mmse", "opt"}));
    rate->add_option("--fallback", rate_args.fallback, "Path used when the exact formula is unavailable")
        ->check(CLI::IsMember({"mc", "quad"}));
    rate->add_option("--samples", rate_args.samples, "Monte-Carlo samples per point")->check(CLI::Range(std::int64_t{100}, std::int64_t{1} << 40));
    rate->add_option("--seed", rate_args.seed, "Monte-Carlo seed");
    rate->add_option("--out", rate_args.out, "Output file (default stdout)");

    FigureArgs fig_args;
    CLI::App* figure = app.add_subcommand("figure", "Emit a figure dataset (CSV)");
    figure->add_option("--id", fig_args.id, "Figure number 1..5")->required()->check(CLI::Range(1, 5));
    figure->add_option("--samples", fig_args.samples, "Monte-Carlo samples per point")->check(CLI::Range(std::int64_t{100}, std::int64_t{1} << 40));
    figure->add_option("--seed", fig_args.seed, "Monte-Carlo seed");
    figure->add_option("--out", fig_args.out, "Output file (default stdout)");

    VerifyArgs ver_args;
    CLI::App* verify = app.add_subcommand("verify", "Run a verification suite (JSON)");
    ver_args.model.attach(verify);
    verify->add_option("--suite", ver_args.suite, "Suite")->required()->check(CLI::IsMember({"identity", "specfun", "closed-vs-mc", "asymptote"}));
    verify->add_option("--trials", ver_args.trials, "Random draws for the identity suite");
    verify->add_option("--samples", ver_args.samples, "Monte-Carlo samples per point")->check(CLI::Range(std::int64_t{100}, std::int64_t{1} << 40));
    verify->add_option("--seed", ver_args.seed, "Seed");
    verify->add_option("--snr-db", ver_args.snr_db, "SNR points in dB for closed-vs-mc");

    try
    {
        std::vector<std::string> args;
        for (int i = argc - 1; i > 0; --i)
            args.emplace_back(argv[i]);
        app.parse(args);
    }
    catch (const CLI::CallForHelp&)
    {
        out << app.help();
        return exit_ok;
    }
    catch (const CLI::ParseError& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }

    try
    {
        if (*rate)
            return run_rate(rate_args, out, err);
        if (*figure)
            return run_figure(fig_args, out);
        ver_args.model_given = verify->count("--model") > 0 || verify->count("--config") > 0;
        return run_verify(ver_args, out);
    }
    catch (const ExitError& e)
    {
        err << "error: " << e.message << '\n';
        return e.code;
    }
    catch (const RepeatedEigenvalues& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_no_closed_form;
    }
    catch (const NoClosedForm& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_no_closed_form;
    }
    catch (const DomainError& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const std::exception& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_failed_check;
    }
}

} // namespace mmselab::cli
