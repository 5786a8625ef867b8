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

#include "adirs/experiments.hpp"
#include "adirs/beamforming.hpp"
#include "adirs/channel.hpp"
#include "adirs/errors.hpp"
#include "adirs/parallel.hpp"
#include "adirs/rate.hpp"

#include <Eigen/Eigenvalues>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace adirs
{

namespace
{

constexpr double kDeg = kPi / 180.0;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

const char *const kSweepVariables[] = {"rx_snr_db", "n_bs", "m_irs", "p_bs_dbm", "ratio_Ra", "rician_k"};

int as_int(double value, const std::string &variable)
{
    if (std::round(value) != value)
        throw ConfigError("Sweep variable '" + variable + "' needs integer values.");
    return static_cast<int>(value);
}

int point_trials(const SweepSpec &sweep, int fallback)
{
    return sweep.trials > 0 ? sweep.trials : fallback;
}

} // namespace

void validate(const SweepSpec &sweep)
{
    bool known = false;
    for (const char *v : kSweepVariables)
        known = known || sweep.variable == v;
    if (!known)
        throw ConfigError("Unknown sweep variable '" + sweep.variable + "'.");
    if (sweep.values.empty())
        throw ConfigError("Sweep needs at least one value.");
    if (sweep.trials < 0)
        throw ConfigError("Sweep trials cannot be negative.");
}

SystemConfig apply_sweep(const SystemConfig &cfg, const std::string &variable, double value)
{
    if (!std::isfinite(value))
        throw ConfigError("Sweep values must be finite.");
    SystemConfig c = cfg;
    if (variable == "rx_snr_db")
    {
        const Scenario sc = make_scenario(cfg);
        c.p_q_dbm = value + cfg.noise_dbm - linear_to_db(sc.alpha_b2u);
    }
    else if (variable == "n_bs")
        c.n_bs = as_int(value, variable);
    else if (variable == "m_irs")
        c.m_irs = as_int(value, variable);
    else if (variable == "p_bs_dbm")
        c.p_bs_dbm = value;
    else if (variable == "rician_k")
        c.rician = {value, value, value};
    else if (variable == "ratio_Ra")
    {
        if (!(value > 0.0))
            throw ConfigError("ratio_Ra must be positive.");
        const Scenario sc = make_scenario(cfg);
        const Position dir = (sc.irs - sc.user) * (1.0 / sc.d_i2u);
        const Spherical s = spherical_from_cartesian(sc.user + dir * (sc.d_b2u / value));
        c.irs = {s.d, s.elevation / kDeg, s.azimuth / kDeg};
    }
    else
        throw ConfigError("Unknown sweep variable '" + variable + "'.");
    validate(c);
    return c;
}

SweepSpec parse_sweep(const std::string &text)
{
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("Sweep must look like var=v1,v2,...");
    SweepSpec sweep;
    sweep.variable = text.substr(0, eq);
    std::stringstream ss(text.substr(eq + 1));
    std::string item;
    while (std::getline(ss, item, ','))
    {
        try
        {
            std::size_t used = 0;
            sweep.values.push_back(std::stod(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        }
        catch (const std::exception &)
        {
            throw ConfigError("Bad sweep value '" + item + "'.");
        }
    }
    validate(sweep);
    return sweep;
}

AngleEstimate nominal_estimate(const SystemConfig &cfg)
{
    const Scenario sc = make_scenario(cfg);
    return estimate_from_angles(sc, sc.b2u, analytic_sigma_est_sq(sc));
}

ResultTable run_mse_b2u(const SystemConfig &cfg, const SweepSpec &sweep)
{
    validate(sweep);
    std::vector<SystemConfig> points;
    for (double v : sweep.values)
        points.push_back(apply_sweep(cfg, sweep.variable, v));

    ResultTable table("mse-b2u", {"value", "mse_x", "mse_y", "analytic", "excluded"}, cfg);
    table.set_meta("sweep", sweep.variable);
    for (std::size_t p = 0; p < points.size(); ++p)
    {
        const SystemConfig &c = points[p];
        const Scenario sc = make_scenario(c);
        const int trials = point_trials(sweep, c.trials);
        std::vector<double> ex(trials), ey(trials);
        std::vector<char> bad(trials, 0);
        parallel_for(trials, [&](std::size_t k) {
            Rng rng(c.seed, k);
            const UplinkObservation obs = simulate_uplink_phases(sc, sc.b2u, rng);
            const EffectiveAnglePair est = ml_estimate_b2u(pair_phase_differences(obs), sc.n_bs);
            ex[k] = est.theta_x - sc.b2u.theta_x;
            ey[k] = est.theta_y - sc.b2u.theta_y;
            bad[k] = est.norm_sq() > kPi * kPi;
        });
        double sx = 0.0, sy = 0.0;
        int used = 0;
        for (int k = 0; k < trials; ++k)
            if (!bad[k])
            {
                sx += ex[k] * ex[k];
                sy += ey[k] * ey[k];
                ++used;
            }
        table.add_row({sweep.values[p], used ? sx / used : kNan, used ? sy / used : kNan, analytic_sigma_est_sq(sc),
                       static_cast<double>(trials - used)});
    }
    return table;
}

ResultTable run_mse_i2u(const SystemConfig &cfg, const SweepSpec &sweep, bool gaussian_b2u_errors)
{
    validate(sweep);
    std::vector<SystemConfig> points;
    for (double v : sweep.values)
        points.push_back(apply_sweep(cfg, sweep.variable, v));

    ResultTable table("mse-i2u", {"value", "mse_x", "mse_y", "predicted_x", "predicted_y", "excluded"}, cfg);
    table.set_meta("sweep", sweep.variable);
    table.set_meta("b2u_errors", gaussian_b2u_errors ? "gaussian" : "simulated");
    for (std::size_t p = 0; p < points.size(); ++p)
    {
        const SystemConfig &c = points[p];
        const Scenario sc = make_scenario(c);
        const double sigma_sq = analytic_sigma_est_sq(sc);
        const AngleEstimate truth = estimate_from_angles(sc, sc.b2u, sigma_sq);
        const auto [p1, p2, p3] = truth.phi;

        const int trials = point_trials(sweep, c.trials);
        std::vector<double> ex(trials), ey(trials);
        std::vector<char> bad(trials, 0);
        parallel_for(trials, [&](std::size_t k) {
            Rng rng(c.seed, k);
            EffectiveAnglePair b2u;
            if (gaussian_b2u_errors)
            {
                const double s = std::sqrt(sigma_sq);
                const double e1 = s * rng.normal();
                const double e2 = s * rng.normal();
                b2u = {sc.b2u.theta_x + e1, sc.b2u.theta_y + e2};
            }
            else
                b2u = ml_estimate_b2u(pair_phase_differences(simulate_uplink_phases(sc, sc.b2u, rng)), sc.n_bs);
            try
            {
                const AngleEstimate est = estimate_from_angles(sc, b2u, sigma_sq);
                ex[k] = est.i2u.theta_x - sc.i2u.theta_x;
                ey[k] = est.i2u.theta_y - sc.i2u.theta_y;
            }
            catch (const EstimationFailure &)
            {
                bad[k] = 1;
            }
            catch (const GeometryError &)
            {
                bad[k] = 1;
            }
        });
        double sx = 0.0, sy = 0.0;
        int used = 0;
        for (int k = 0; k < trials; ++k)
            if (!bad[k])
            {
                sx += ex[k] * ex[k];
                sy += ey[k] * ey[k];
                ++used;
            }
        table.add_row({sweep.values[p], used ? sx / used : kNan, used ? sy / used : kNan, (p1 * p1 + p2 * p2) * sigma_sq,
                       (p2 * p2 + p3 * p3) * sigma_sq, static_cast<double>(trials - used)});
    }
    return table;
}

ResultTable run_convergence(const SystemConfig &cfg, const std::vector<int> &m_values)
{
    if (m_values.empty())
        throw ConfigError("Convergence run needs at least one IRS size.");
    std::vector<std::string> columns{"iteration"};
    std::vector<std::vector<double>> traces;
    std::vector<SystemConfig> points;
    for (int m : m_values)
        points.push_back(apply_sweep(cfg, "m_irs", m));

    for (std::size_t q = 0; q < points.size(); ++q)
    {
        const Scenario sc = make_scenario(points[q]);
        const BeamformingSolution sol = joint_optimize(sc, nominal_estimate(points[q]), points[q].optimizer);
        std::vector<double> snr;
        for (double p : sol.objective_trace)
            snr.push_back(p / sc.noise_mw);
        traces.push_back(std::move(snr));
        columns.push_back("snr_M" + std::to_string(m_values[q]));
    }

    ResultTable table("converge", columns, cfg);
    std::size_t len = 0;
    for (std::size_t q = 0; q < traces.size(); ++q)
    {
        len = std::max(len, traces[q].size());
        table.set_meta("trace_length_M" + std::to_string(m_values[q]), std::to_string(traces[q].size()));
    }
    for (std::size_t r = 0; r < len; ++r)
    {
        std::vector<double> row{static_cast<double>(r)};
        for (const auto &t : traces)
            row.push_back(t[std::min(r, t.size() - 1)]);
        table.add_row(row);
    }
    return table;
}

ResultTable run_beam_pattern(const SystemConfig &cfg, int elevation_points, int azimuth_points)
{
    if (elevation_points < 2 || azimuth_points < 2)
        throw ConfigError("Beam pattern grid needs at least 2 points per axis.");
    const Scenario sc = make_scenario(cfg);
    const BeamformingSolution sol = joint_optimize(sc, nominal_estimate(cfg), cfg.optimizer);

    ResultTable table("beam-pattern", {"elevation_deg", "azimuth_deg", "pattern", "pattern_db"}, cfg);
    double best = -1.0, best_el = 0.0, best_az = 0.0;
    for (int e = 0; e < elevation_points; ++e)
    {
        const double el = 90.0 * e / (elevation_points - 1);
        for (int a = 0; a < azimuth_points; ++a)
        {
            const double az = -180.0 + 360.0 * a / (azimuth_points - 1);
            const SteeringVector s = steering_vector(direction_angles(el * kDeg, az * kDeg), sc.n_bs);
            const double val = std::norm(cdouble(s.transpose() * sol.w));
            table.add_row({el, az, val, 10.0 * std::log10(std::max(val, 1e-300))});
            if (val > best)
            {
                best = val;
                best_el = el;
                best_az = az;
            }
        }
    }
    const Spherical u = spherical_from_cartesian(sc.user), i = spherical_from_cartesian(sc.irs);
    table.set_meta("argmax_deg", format_double(best_el) + " " + format_double(best_az));
    table.set_meta("user_direction_deg", format_double(u.elevation / kDeg) + " " + format_double(u.azimuth / kDeg));
    table.set_meta("irs_direction_deg", format_double(i.elevation / kDeg) + " " + format_double(i.azimuth / kDeg));
    return table;
}

ResultTable run_rate_curves(const SystemConfig &cfg, const SweepSpec &sweep)
{
    validate(sweep);
    std::vector<SystemConfig> points;
    for (double v : sweep.values)
        points.push_back(apply_sweep(cfg, sweep.variable, v));

    ResultTable table("rate-curves", {"value", "with_irs", "no_irs", "no_direct", "approx", "upper", "excluded"}, cfg);
    table.set_meta("sweep", sweep.variable);
    table.set_meta("no_direct_sigma_est_sq", "1000");
    for (std::size_t p = 0; p < points.size(); ++p)
    {
        const SystemConfig &c = points[p];
        const Scenario sc = make_scenario(c);
        const int trials = point_trials(sweep, 4);
        std::vector<std::array<double, 5>> res(trials);
        std::vector<char> bad(trials, 0);
        parallel_for(trials, [&](std::size_t k) {
            Rng rng(c.seed, k);
            AngleEstimate est;
            try
            {
                est = estimate_all(sc, rng);
            }
            catch (const EstimationFailure &)
            {
                bad[k] = 1;
                return;
            }
            catch (const GeometryError &)
            {
                bad[k] = 1;
                return;
            }
            const BeamformingSolution sol = joint_optimize(sc, est, c.optimizer);
            const RateReport rep = rate_report(sc, est, sol.xi);

            Scenario bare = sc;
            bare.m_irs = 0;
            const BeamformingSolution sol0 = joint_optimize(bare, est, c.optimizer);

            Scenario blocked = sc;
            blocked.alpha_b2u = 0.0;
            AngleEstimate blind = est;
            blind.sigma_est_sq = 1e3;
            const BeamformingSolution sold = joint_optimize(blocked, blind, c.optimizer);

            res[k] = {rep.rate_exact, rate_report(bare, est, sol0.xi).rate_exact,
                      rate_report(blocked, blind, sold.xi).rate_exact, rep.rate_approx, rep.rate_upper};
        });
        std::array<double, 5> sum{};
        int used = 0;
        for (int k = 0; k < trials; ++k)
            if (!bad[k])
            {
                for (int q = 0; q < 5; ++q)
                    sum[q] += res[k][q];
                ++used;
            }
        std::vector<double> row{sweep.values[p]};
        for (double s : sum)
            row.push_back(used ? s / used : kNan);
        row.push_back(static_cast<double>(trials - used));
        table.add_row(row);
    }
    return table;
}

namespace
{

struct Check
{
    std::string name;
    double value;
    double tolerance;
    bool pass;
};

Eigen::VectorXcd random_phases(int M, Rng &rng)
{
    Eigen::VectorXcd xi(M);
    for (int m = 0; m < M; ++m)
        xi[m] = std::polar(1.0, 2.0 * kPi * rng.uniform());
    return xi;
}

// Small instance with unit path gains so cascade, direct and barrier terms are comparable
Scenario unit_gain_scenario(int N, int M)
{
    SystemConfig c;
    c.n_bs = N;
    c.m_irs = M;
    Scenario sc = make_scenario(c);
    sc.alpha_b2u = sc.alpha_i2u = sc.alpha_b2i = 1.0;
    return sc;
}

} // namespace

ResultTable run_validate(const SystemConfig &cfg)
{
    Rng rng(cfg.seed, 0xa11);
    std::vector<Check> checks;
    auto below = [&](const std::string &name, double value, double tol) {
        checks.push_back({name, value, tol, std::isfinite(value) && value <= tol});
    };

    {
        double worst = 0.0;
        for (int N : {4, 16, 36, 64})
        {
            long si = 0, sj = 0;
            for (int n = 1; n <= N / 2; ++n)
            {
                const UraIndex a = ura_index(n, N), b = ura_index(N - n + 1, N);
                si += (a.i - b.i) * (a.i - b.i);
                sj += (a.j - b.j) * (a.j - b.j);
            }
            const long q1 = static_cast<long>(N) * (N - 1) / 6;
            worst = std::max<double>(worst, std::max(std::labs(si - q1), std::labs(sj - q1)));
        }
        below("pairing_sum_identity", worst, 0.0);
    }
    {
        const SteeringVector a = steering_vector({2.0 * kPi * rng.uniform() - kPi, 2.0 * kPi * rng.uniform() - kPi}, 64);
        below("steering_unit_modulus", (a.cwiseAbs().array() - 1.0).abs().maxCoeff(), 1e-12);
    }
    {
        const EffectiveAnglePair truth{0.4 * rng.uniform() - 0.2, 0.4 * rng.uniform() - 0.2};
        Scenario sc = make_scenario(cfg);
        sc.noise_mw = 0.0;
        sc.rician.b2u = std::numeric_limits<double>::infinity();
        Rng r2(cfg.seed, 1);
        const EffectiveAnglePair est =
            ml_estimate_b2u(pair_phase_differences(simulate_uplink_phases(sc, truth, r2)), sc.n_bs);
        below("ml_noiseless_inversion",
              std::max(std::abs(est.theta_x - truth.theta_x), std::abs(est.theta_y - truth.theta_y)), 1e-12);
    }
    {
        const Scenario sc = make_scenario(cfg);
        const Position p = localize_user(sc.b2u, sc.d_b2u);
        below("localization_round_trip", distance(p, sc.user) / sc.d_b2u, 1e-12);
    }

    SystemConfig small = cfg;
    small.n_bs = 4;
    small.m_irs = 16;
    small.user = {41.0, 47.0, -16.0};
    const Scenario sc = make_scenario(small);
    const AngleEstimate est = estimate_from_angles(sc, sc.b2u, analytic_sigma_est_sq(sc));
    const DampedMatrices dm = compute_damped_matrices(est, sc.n_bs, sc.m_irs);
    const LinkStatistics stats = link_statistics(sc);
    const Eigen::MatrixXcd Hbar = cascade_los(sc);
    const Eigen::VectorXcd xi = random_phases(sc.m_irs, rng);
    const PowerMatrix pm = assemble_T(dm, xi, Hbar, stats);
    {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(pm.T);
        below("T_positive_semidefinite", -es.eigenvalues().minCoeff() / es.eigenvalues().maxCoeff(), 1e-10);
        below("bs_beam_eigen_oracle",
              std::abs(dominant_eigenpair(pm.T).value - es.eigenvalues().maxCoeff()) / es.eigenvalues().maxCoeff(),
              1e-8);
    }
    {
        const double tr = pm.T.trace().real();
        below("trace_identity", std::abs(omega(sc, dm, stats, xi) - tr) / tr, 1e-8);
    }
    {
        const Scenario us = unit_gain_scenario(4, 16);
        const AngleEstimate ue = estimate_from_angles(us, us.b2u, 0.01);
        const DampedMatrices udm = compute_damped_matrices(ue, 4, 16);
        Eigen::VectorXcd w(4);
        for (int n = 0; n < 4; ++n)
            w[n] = rng.complex_normal();
        const IrsSubproblem sub(udm, cascade_los(us), link_statistics(us), w);
        OptimizerParams op;
        Eigen::VectorXcd x(16);
        for (int m = 0; m < 16; ++m)
            x[m] = std::polar(0.2 + 0.6 * rng.uniform(), 2.0 * kPi * rng.uniform());
        x *= 0.8 / lp_norm(x, op.p);
        const Eigen::VectorXcd g = irs_gradient(sub, x, op);
        double worst = 0.0;
        const double h = 1e-6;
        for (int m = 0; m < 16; ++m)
            for (int part = 0; part < 2; ++part)
            {
                Eigen::VectorXcd xp = x, xm = x;
                const cdouble step = part == 0 ? cdouble(h, 0.0) : cdouble(0.0, h);
                xp[m] += step;
                xm[m] -= step;
                const double fd = (sub.barrier_objective(xp, op) - sub.barrier_objective(xm, op)) / (2.0 * h);
                const double an = part == 0 ? g[m].real() : g[m].imag();
                worst = std::max(worst, std::abs(fd - an) / g.cwiseAbs().maxCoeff());
            }
        below("gradient_central_difference", worst, 1e-6);
    }
    {
        const BeamformingSolution sol = joint_optimize(sc, est, small.optimizer);
        double worst = 0.0;
        for (std::size_t k = 1; k < sol.objective_trace.size(); ++k)
            worst = std::max(worst, (sol.objective_trace[k - 1] - sol.objective_trace[k]) /
                                        std::abs(sol.objective_trace[k - 1]));
        below("monotone_ascent", worst, 1e-9);
        const double mod = (sol.xi.cwiseAbs().array() - 1.0).abs().maxCoeff();
        below("unit_modulus_output", mod, 1e-12);
        below("transmit_power", std::abs(sol.w.squaredNorm() - sc.p_bs_mw) / sc.p_bs_mw, 1e-10);
        const RateReport rep = rate_report(sc, est, sol.xi);
        below("rate_below_upper_bound", rep.rate_exact - rep.rate_upper, 1e-9);
    }
    {
        double worst = 0.0;
        for (int t = 0; t < 5; ++t)
        {
            Eigen::MatrixXcd X(6, 6);
            for (int r = 0; r < 6; ++r)
                for (int c = 0; c < 6; ++c)
                    X(r, c) = rng.complex_normal();
            const Eigen::MatrixXcd H = 0.5 * (X + X.adjoint());
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
            const double ref = es.eigenvalues().maxCoeff();
            worst = std::max(worst, std::abs(dominant_eigenpair(H).value - ref) / std::abs(ref));
        }
        below("power_iteration_random_hermitian", worst, 1e-8);
    }
    {
        Scenario los = sc;
        los.rician = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
                      std::numeric_limits<double>::infinity()};
        Rng r1(cfg.seed, 2), r2(cfg.seed, 2);
        const ChannelRealization a = sample_channels(los, r1), b = sample_channels(los, r2);
        below("channel_los_limit", (a.H_b2i - std::sqrt(a.alpha_b2i) * a.los_H_b2i).norm() / a.H_b2i.norm(), 1e-12);
        below("channel_determinism", (a.H_b2i - b.H_b2i).norm() + (a.h_b2u - b.h_b2u).norm(), 0.0);
    }

    ResultTable table("validate", {"pass", "value", "tolerance"}, cfg);
    table.use_labels("check");
    for (const auto &c : checks)
        table.add_row({c.pass ? 1.0 : 0.0, c.value, c.tolerance}, c.name);
    return table;
}

} // namespace adirs
