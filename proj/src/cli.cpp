// SPDX-License-Identifier: Apache-2.0
//
// adirs - angle-domain IRS link simulation library
// Copyright (C) 2026 The adirs authors
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

#include "adirs/cli.hpp"
#include "adirs/config.hpp"
#include "adirs/errors.hpp"
#include "adirs/experiments.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

namespace adirs
{

namespace
{

struct Options
{
    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::string sweep;
    std::vector<int> m_values{16, 64, 144};
    int elevation_points = 46;
    int azimuth_points = 181;
    bool gaussian_errors = false;
};

SweepSpec sweep_or(const Options &o, SweepSpec fallback)
{
    SweepSpec s = o.sweep.empty() ? std::move(fallback) : parse_sweep(o.sweep);
    if (o.trials)
        s.trials = *o.trials;
    return s;
}

std::vector<double> steps(double from, double to, double step)
{
    std::vector<double> v;
    for (double x = from; x <= to + 1e-9; x += step)
        v.push_back(x);
    return v;
}

void emit(const ResultTable &table, const Options &o, std::ostream &out)
{
    const std::string text = o.format == "json" ? table.to_json() : table.to_csv();
    if (o.out_path.empty())
    {
        out << text;
        return;
    }
    std::ofstream f(o.out_path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw ConfigError("Cannot write output file '" + o.out_path + "'.");
    f << text;
}

} // namespace

int cli_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Angle-domain IRS link simulator"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App *sub) {
        sub->add_option("--config", o.config_path, "JSON scenario file")->check(CLI::ExistingFile);
        sub->add_option("--out", o.out_path, "Output file (default: stdout)");
        sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--seed", o.seed, "RNG seed");
        sub->add_option("--trials", o.trials, "Monte Carlo trials per point")->check(CLI::PositiveNumber);
    };

    CLI::App *mse_b2u = app.add_subcommand("mse-b2u", "ML estimator MSE of the BS-user angles");
    CLI::App *mse_i2u = app.add_subcommand("mse-i2u", "Error of the IRS-user angles");
    CLI::App *converge = app.add_subcommand("converge", "Joint optimizer convergence traces");
    CLI::App *pattern = app.add_subcommand("beam-pattern", "Transmit beam pattern of the optimized BS beam");
    CLI::App *rates = app.add_subcommand("rate-curves", "Achievable rate, approximation and upper bound");
    CLI::App *check = app.add_subcommand("validate", "Run the fast invariant suite");
    for (CLI::App *sub : {mse_b2u, mse_i2u, converge, pattern, rates, check})
        common(sub);
    for (CLI::App *sub : {mse_b2u, mse_i2u, rates})
        sub->add_option("--sweep", o.sweep, "var=v1,v2,... (rx_snr_db, n_bs, m_irs, p_bs_dbm, ratio_Ra, rician_k)");
    mse_i2u->add_flag("--gaussian-errors", o.gaussian_errors, "Draw BS-user errors from the Gaussian model");
    converge->add_option("--m-values", o.m_values, "IRS sizes")->delimiter(',');
    pattern->add_option("--elevation-points", o.elevation_points, "Grid points over 0..90 deg");
    pattern->add_option("--azimuth-points", o.azimuth_points, "Grid points over -180..180 deg");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &)
    {
        out << app.help();
        return 0;
    }
    catch (const CLI::ParseError &e)
    {
        err << e.what() << "\n" << app.help();
        return 1;
    }

    try
    {
        SystemConfig cfg = o.config_path.empty() ? SystemConfig{} : load_config(o.config_path);
        if (o.seed)
            cfg.seed = *o.seed;
        if (o.trials)
            cfg.trials = *o.trials;
        validate(cfg);

        if (check->parsed())
        {
            const ResultTable t = run_validate(cfg);
            bool ok = true;
            const auto pass = t.column("pass"), value = t.column("value"), tol = t.column("tolerance");
            for (std::size_t r = 0; r < t.rows().size(); ++r)
            {
                ok = ok && pass[r] == 1.0;
                out << (pass[r] == 1.0 ? "PASS " : "FAIL ") << t.labels()[r] << " value=" << format_double(value[r])
                    << " tol=" << format_double(tol[r]) << "\n";
            }
            if (!o.out_path.empty())
                emit(t, o, out);
            return ok ? 0 : 2;
        }

        ResultTable t;
        if (mse_b2u->parsed())
            t = run_mse_b2u(cfg, sweep_or(o, {"rx_snr_db", steps(0, 30, 5), 0}));
        else if (mse_i2u->parsed())
            t = run_mse_i2u(cfg, sweep_or(o, {"ratio_Ra", {0.5, 1.0, 2.0}, 0}), o.gaussian_errors);
        else if (converge->parsed())
            t = run_convergence(cfg, o.m_values);
        else if (pattern->parsed())
            t = run_beam_pattern(cfg, o.elevation_points, o.azimuth_points);
        else
            t = run_rate_curves(cfg, sweep_or(o, {"p_bs_dbm", steps(0, 30, 5), 0}));
        emit(t, o, out);
        return 0;
    }
    catch (const ConfigError &e)
    {
        err << "configuration error: " << e.what() << "\n";
        return 1;
    }
    catch (const GeometryError &e)
    {
        err << "configuration error: " << e.what() << "\n";
        return 1;
    }
    catch (const std::exception &e)
    {
        err << "numerical failure: " << e.what() << "\n";
        return 2;
    }
}

int cli_main(int argc, const char *const *argv)
{
    return cli_main(argc, argv, std::cout, std::cerr);
}

} // namespace adirs
