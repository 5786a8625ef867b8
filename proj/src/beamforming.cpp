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

#include "adirs/beamforming.hpp"
#include "adirs/errors.hpp"
#include "adirs/parallel.hpp"

#include <cmath>
#include <limits>

namespace adirs
{

DampedMatrices compute_damped_matrices(const AngleEstimate &est, int N, int M)
{
    const int sN = ura_side(N), sM = ura_side(M);
    const SteeringVector a = steering_vector(est.b2u, N);
    const SteeringVector b = steering_vector(est.i2u, M);
    const double h = 0.5 * est.sigma_est_sq;
    const auto [p1, p2, p3] = est.phi;

    DampedMatrices dm;
    dm.A.resize(N, N);
    for (int n = 0; n < N; ++n)
        for (int m = 0; m < N; ++m)
        {
            const double di = n % sN - m % sN, dj = n / sN - m / sN;
            dm.A(m, n) = std::conj(a[m]) * a[n] * std::exp(-h * (di * di + dj * dj));
        }

    dm.B.resize(M, M);
    for (int n = 0; n < M; ++n)
        for (int m = 0; m < M; ++m)
        {
            const double di = n % sM - m % sM, dj = n / sM - m / sM;
            const double ex = di * p1 + dj * p2, ey = di * p2 + dj * p3;
            dm.B(m, n) = std::conj(b[m]) * b[n] * std::exp(-h * (ex * ex + ey * ey));
        }

    dm.C.resize(M, N);
    for (int n = 0; n < N; ++n)
        for (int m = 0; m < M; ++m)
        {
            const double im = m % sM, jm = m / sM;
            const double ex = im * p1 + jm * p2 - n % sN;
            const double ey = im * p2 + jm * p3 - n / sN;
            dm.C(m, n) = std::conj(b[m]) * a[n] * std::exp(-h * (ex * ex + ey * ey));
        }
    return dm;
}

PowerMatrix assemble_T(const DampedMatrices &dm, const Eigen::VectorXcd &xi, const Eigen::MatrixXcd &Hbar,
                       const LinkStatistics &stats)
{
    const Eigen::Index N = dm.A.rows();
    if (xi.size() != dm.B.rows() || Hbar.rows() != xi.size() || Hbar.cols() != N)
        throw ContractViolation("Dimension mismatch between phases, H and the damped matrices.");
    for (Eigen::Index m = 0; m < xi.size(); ++m)
        if (std::abs(std::abs(xi[m]) - 1.0) > 1e-9)
            throw ContractViolation("IRS phase vector must be unit modulus.");

    PowerMatrix pm;
    pm.stats = stats;
    pm.T = stats.beta_d * dm.A;
    pm.T.diagonal().array() += stats.sigma_nlos_sq;
    if (xi.size() > 0)
    {
        const Eigen::MatrixXcd G = xi.asDiagonal() * Hbar;
        const Eigen::MatrixXcd GC = G.adjoint() * dm.C;
        pm.T += stats.beta_c * (G.adjoint() * dm.B * G) + stats.cross() * (GC + GC.adjoint());
    }
    pm.T = 0.5 * (pm.T + pm.T.adjoint()).eval();
    return pm;
}

Eigenpair dominant_eigenpair(const Eigen::MatrixXcd &T, double tol, int max_iter)
{
    const Eigen::Index n = T.rows();
    if (n == 0 || T.cols() != n)
        throw ConfigError("Eigen solve needs a non-empty square matrix.");

    // shift by a Gershgorin bound so the largest eigenvalue is also the largest in magnitude
    double lower = std::numeric_limits<double>::infinity();
    for (Eigen::Index r = 0; r < n; ++r)
        lower = std::min(lower, T(r, r).real() - (T.row(r).cwiseAbs().sum() - std::abs(T(r, r))));
    const double shift = 1e-12 * std::abs(T.trace().real()) + std::max(0.0, -lower);
    Eigen::MatrixXcd Ts = T;
    Ts.diagonal().array() += shift;

    Eigen::VectorXcd x(n);
    for (Eigen::Index k = 0; k < n; ++k)
        x[k] = cdouble(1.0 + 0.3 * std::cos(1.7 * k + 0.4), 0.3 * std::sin(2.3 * k + 1.1));
    x.normalize();

    double rho_prev = std::numeric_limits<double>::quiet_NaN();
    for (int it = 1; it <= max_iter; ++it)
    {
        const Eigen::VectorXcd y = Ts * x;
        const double rho = x.dot(y).real();
        const double ny = y.norm();
        if (ny == 0.0)
            return {(x.adjoint() * T * x)(0).real(), x, it};
        x = y / ny;
        if (std::abs(rho - rho_prev) <= tol * std::abs(rho))
            return {(x.adjoint() * T * x)(0).real(), x, it};
        rho_prev = rho;
    }
    throw NumericalError("Power iteration did not converge.", rho_prev - shift);
}

Eigen::VectorXcd bs_beam(const Eigen::MatrixXcd &T, double p_bs)
{
    return std::sqrt(p_bs) * dominant_eigenpair(T).vector;
}

IrsSubproblem::IrsSubproblem(const DampedMatrices &dm, const Eigen::MatrixXcd &Hbar, const LinkStatistics &stats,
                             const Eigen::VectorXcd &w)
    : beta_c_(stats.beta_c), s_(stats.cross())
{
    const Eigen::VectorXcd v = Hbar * w;
    K_ = dm.B.cwiseProduct((v * v.adjoint()).conjugate());
    u_ = v.conjugate().cwiseProduct(dm.C * w);
    c0_ = stats.beta_d * w.dot(dm.A * w).real() + stats.sigma_nlos_sq * w.squaredNorm();
}

double IrsSubproblem::power(const Eigen::VectorXcd &xi) const
{
    if (xi.size() == 0)
        return c0_;
    return beta_c_ * xi.dot(K_ * xi).real() + 2.0 * s_ * xi.dot(u_).real() + c0_;
}

Eigen::VectorXcd IrsSubproblem::power_gradient(const Eigen::VectorXcd &xi) const
{
    return 2.0 * beta_c_ * (K_ * xi) + 2.0 * s_ * u_;
}

double lp_norm(const Eigen::VectorXcd &xi, double p)
{
    const double mx = xi.size() ? xi.cwiseAbs().maxCoeff() : 0.0;
    if (mx == 0.0)
        return 0.0;
    return mx * std::pow((xi.cwiseAbs() / mx).array().pow(p).sum(), 1.0 / p);
}

double IrsSubproblem::barrier_objective(const Eigen::VectorXcd &xi, const OptimizerParams &params) const
{
    const double n = lp_norm(xi, params.p);
    if (!(n < 1.0))
        throw DomainError("Barrier evaluated outside ||xi||_p < 1.");
    return -power(xi) - std::log1p(-n) / params.kappa;
}

Eigen::VectorXcd irs_gradient(const IrsSubproblem &sub, const Eigen::VectorXcd &xi, const OptimizerParams &params)
{
    const double n = lp_norm(xi, params.p);
    if (!(n < 1.0))
        throw DomainError("Barrier gradient evaluated outside ||xi||_p < 1.");
    Eigen::VectorXcd g = -sub.power_gradient(xi);
    if (n > 0.0)
    {
        // ||xi||_p^{1-p} |xi_m|^{p-2} xi_m, written in ratios to avoid overflow
        const double scale = 1.0 / (params.kappa * (1.0 - n));
        for (Eigen::Index m = 0; m < xi.size(); ++m)
            g[m] += scale * std::pow(std::abs(xi[m]) / n, params.p - 2.0) * xi[m] / n;
    }
    return g;
}

Eigen::VectorXcd project_tangent(const Eigen::VectorXcd &g, const Eigen::VectorXcd &xi)
{
    const double nn = xi.squaredNorm();
    if (!(nn > 0.0))
        throw DomainError("Tangent projection at the zero vector.");
    return g - (xi.dot(g) / nn) * xi;
}

Eigen::VectorXcd phase_project(const Eigen::VectorXcd &x)
{
    Eigen::VectorXcd out(x.size());
    for (Eigen::Index m = 0; m < x.size(); ++m)
        out[m] = std::polar(1.0, std::arg(x[m]));
    return out;
}

IrsResult optimize_irs(const IrsSubproblem &sub, const Eigen::VectorXcd &xi0, const OptimizerParams &params)
{
    validate(params);
    IrsResult res;
    res.xi = xi0;
    res.trace.push_back(sub.power(xi0));
    const Eigen::Index M = xi0.size();
    if (M == 0)
        return res;

    const double rescale = std::pow(static_cast<double>(M), 1.0 / params.p) * (1.0 + 1e-3);
    const double sqrt_m = std::sqrt(static_cast<double>(M));
    const int grid = params.line_search_grid;

    Eigen::VectorXcd xi = xi0;
    for (int it = 0; it < params.n_iter_inner; ++it)
    {
        res.iterations = it + 1;
        const Eigen::VectorXcd g = -irs_gradient(sub, xi / rescale, params);
        const Eigen::VectorXcd gp = project_tangent(g, xi);
        const double ng = gp.norm();
        if (!(ng > 0.0))
            break;
        const Eigen::VectorXcd target = (sqrt_m / (ng * ng)) * gp;

        auto candidate = [&](double om) { return phase_project((1.0 - om) * xi + om * target); };
        auto value = [&](double om) { return sub.power(candidate(om)); };

        const double p_old = res.trace.back();
        int best_k = 0;
        double best = -std::numeric_limits<double>::infinity();
        std::vector<double> vals(grid);
        for (int k = 0; k < grid; ++k)
        {
            vals[k] = value(static_cast<double>(k) / (grid - 1));
            if (vals[k] > best)
            {
                best = vals[k];
                best_k = k;
            }
        }
        double best_om = static_cast<double>(best_k) / (grid - 1);

        // golden-section refinement around the best grid point
        double lo = std::max(0.0, best_om - 1.0 / (grid - 1));
        double hi = std::min(1.0, best_om + 1.0 / (grid - 1));
        const double r = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
        double f1 = value(x1), f2 = value(x2);
        for (int k = 0; k < 40 && hi - lo > 1e-12; ++k)
        {
            if (f1 > f2)
            {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - r * (hi - lo);
                f1 = value(x1);
            }
            else
            {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + r * (hi - lo);
                f2 = value(x2);
            }
        }
        const double om_g = f1 > f2 ? x1 : x2;
        if (std::max(f1, f2) > best)
        {
            best = std::max(f1, f2);
            best_om = om_g;
        }

        if (!(best > p_old))
        {
            res.trace.push_back(p_old);
            break;
        }
        xi = candidate(best_om);
        res.trace.push_back(best);
        if (std::abs(best - p_old) <= params.eps * std::abs(p_old))
            break;
    }
    res.xi = phase_project(xi);
    return res;
}

namespace
{

double relative_change(const Eigen::VectorXcd &now, const Eigen::VectorXcd &before, bool align)
{
    const double nb = before.norm();
    if (nb == 0.0)
        return now.norm() == 0.0 ? 0.0 : 1.0;
    cdouble rot(1.0, 0.0);
    if (align)
    {
        const cdouble ip = now.dot(before);
        if (std::abs(ip) > 0.0)
            rot = ip / std::abs(ip);
    }
    return (now * rot - before).norm() / nb;
}

} // namespace

BeamformingSolution joint_optimize(const Scenario &sc, const AngleEstimate &est, const OptimizerParams &params)
{
    validate(params);
    const int N = sc.n_bs, M = sc.m_irs;
    const Eigen::MatrixXcd Hbar = cascade_los(sc);
    const LinkStatistics stats = link_statistics(sc);
    const DampedMatrices dm = compute_damped_matrices(est, N, M);

    BeamformingSolution sol;
    sol.xi = Eigen::VectorXcd::Ones(M);
    sol.w = Eigen::VectorXcd::Constant(N, std::sqrt(sc.p_bs_mw / N));
    sol.objective_trace.push_back(IrsSubproblem(dm, Hbar, stats, sol.w).power(sol.xi));

    for (int k = 0; k < params.n_iter_outer; ++k)
    {
        sol.outer_iterations = k + 1;
        const PowerMatrix pm = assemble_T(dm, sol.xi, Hbar, stats);
        const Eigen::VectorXcd w = bs_beam(pm.T, sc.p_bs_mw);
        sol.objective_trace.push_back(w.dot(pm.T * w).real());

        const IrsSubproblem sub(dm, Hbar, stats, w);
        const IrsResult irs = optimize_irs(sub, sol.xi, params);
        sol.objective_trace.push_back(sub.power(irs.xi));

        const double dw = relative_change(w, sol.w, true);
        const double dxi = M > 0 ? relative_change(irs.xi, sol.xi, false) : 0.0;
        sol.w = w;
        sol.xi = irs.xi;
        if (dw < params.eps && dxi < params.eps)
        {
            sol.converged = true;
            break;
        }
    }
    sol.received_power = sol.objective_trace.back();
    return sol;
}

BeamformingSolution joint_optimize(const SystemConfig &cfg, const AngleEstimate &est)
{
    return joint_optimize(make_scenario(cfg), est, cfg.optimizer);
}

double monte_carlo_received_power(const Scenario &sc, const AngleEstimate &est, const Eigen::VectorXcd &w,
                                  const Eigen::VectorXcd &xi, int trials, std::uint64_t seed)
{
    if (trials < 1)
        throw ConfigError("Monte Carlo needs at least one trial.");
    const double sigma = std::sqrt(est.sigma_est_sq);
    const auto [p1, p2, p3] = est.phi;
    std::vector<double> power(trials);
    parallel_for(static_cast<std::size_t>(trials), [&](std::size_t k) {
        Rng rng(seed, k);
        const double ex = sigma * rng.normal();
        const double ey = sigma * rng.normal();
        LosAngles los;
        los.b2u = {est.b2u.theta_x + ex, est.b2u.theta_y + ey};
        los.i2u = {est.i2u.theta_x + p1 * ex + p2 * ey, est.i2u.theta_y + p2 * ex + p3 * ey};
        los.b2i = sc.b2i;
        los.b2i_arrival = sc.b2i_arrival;
        const ChannelRealization ch = sample_channels(sc, los, rng);
        power[k] = std::norm(ch.response(w, xi));
    });
    double sum = 0.0;
    for (double p : power)
        sum += p;
    return sum / trials;
}

} // namespace adirs
