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

#include <catch2/catch_amalgamated.hpp>

#include "adirs/errors.hpp"
#include "adirs/experiments.hpp"
#include "adirs/rate.hpp"

using namespace adirs;
using Catch::Approx;

namespace
{
PowerMatrix diag_T(double a, double b)
{
    PowerMatrix pm;
    pm.T = Eigen::MatrixXcd::Zero(2, 2);
    pm.T(0, 0) = a;
    pm.T(1, 1) = b;
    return pm;
}

SystemConfig small_config()
{
    SystemConfig c;
    c.n_bs = 4;
    c.m_irs = 16;
    c.user = {41.0, 47.0, -16.0};
    return c;
}
} // namespace

TEST_CASE("achievable rate closed cases", "[rate]")
{
    CHECK(achievable_rate(diag_T(2, 1), 1.0, 1.0) == Approx(1.5849625007211562));
    CHECK(achievable_rate(diag_T(0.5, 1), 1.0, 1.0) == Approx(1.0));
    CHECK(achievable_rate(diag_T(2, 1), 0.0, 1.0) == 0.0);
    CHECK_THROWS_AS(achievable_rate(diag_T(2, 1), 1.0, 0.0), DomainError);
}

TEST_CASE("upper bound closed cases", "[rate]")
{
    const LinkStatistics unit{1.0, 1.0, 0.0};
    CHECK(upper_bound_rate(unit, 1, 1, 1.0, 1.0) == Approx(2.3219280948873622));
    const LinkStatistics s{0.3, 0.7, 0.2};
    CHECK(upper_bound_rate(s, 16, 0, 2.0, 0.5) == Approx(std::log2(1.0 + 2.0 * 16 * (0.7 + 0.2) / 0.5)));
}

TEST_CASE("trace form equals the trace of T", "[rate]")
{
    Rng rng(5);
    for (int t = 0; t < 10; ++t)
    {
        const SystemConfig cfg = small_config();
        const Scenario sc = make_scenario(cfg);
        const AngleEstimate est = estimate_from_angles(sc, sc.b2u, 0.02 * rng.uniform());
        const DampedMatrices dm = compute_damped_matrices(est, 4, 16);
        Eigen::VectorXcd xi(16);
        for (int m = 0; m < 16; ++m)
            xi[m] = std::polar(1.0, 2 * kPi * rng.uniform());
        const LinkStatistics stats = link_statistics(sc);
        const double tr = assemble_T(dm, xi, cascade_los(sc), stats).T.trace().real();
        CHECK(omega(sc, dm, stats, xi) == Approx(tr).epsilon(1e-8));
    }
}

TEST_CASE("trace form reductions", "[rate]")
{
    SystemConfig cfg = small_config();
    cfg.m_irs = 0;
    const Scenario bare = make_scenario(cfg);
    const AngleEstimate e0 = estimate_from_angles(bare, bare.b2u, 1e-3);
    const LinkStatistics s0 = link_statistics(bare);
    const DampedMatrices d0 = compute_damped_matrices(e0, 4, 0);
    CHECK(approx_rate(bare, d0, s0, Eigen::VectorXcd(0)) ==
          Approx(std::log2(1 + bare.p_bs_mw * 4 * (s0.beta_d + s0.sigma_nlos_sq) / bare.noise_mw)));

    // zero error and phases aligned with the cascade: coherent M^2 gain
    const Scenario sc = make_scenario(small_config());
    const AngleEstimate est = estimate_from_angles(sc, sc.b2u, 0.0);
    const DampedMatrices dm = compute_damped_matrices(est, 4, 16);
    const Eigen::VectorXcd xi =
        phase_project(steering_vector(sc.b2i_arrival, 16).cwiseProduct(steering_vector(est.i2u, 16)).conjugate());
    LinkStatistics only{1.0, 0.0, 0.0};
    CHECK(omega(sc, dm, only, xi) == Approx(4.0 * 256.0));
}

TEST_CASE("upper bound IRS term scales with M squared", "[rate]")
{
    const LinkStatistics s{1.0, 0.0, 0.0};
    const double g64 = std::exp2(upper_bound_rate(s, 4, 64, 1.0, 1.0)) - 1.0;
    const double g128 = std::exp2(upper_bound_rate(s, 4, 128, 1.0, 1.0)) - 1.0;
    CHECK(g128 / g64 == Approx(4.0));
}

TEST_CASE("rate stays below the upper bound", "[rate]")
{
    Rng rng(44);
    for (int t = 0; t < 20; ++t)
    {
        SystemConfig cfg;
        cfg.n_bs = 4 * (1 + static_cast<int>(rng.uniform() * 2) * 3); // 4 or 16
        cfg.m_irs = 16;
        cfg.p_bs_dbm = 30.0 * rng.uniform();
        cfg.rician = {1 + 9 * rng.uniform(), 1 + 9 * rng.uniform(), 1 + 9 * rng.uniform()};
        cfg.user = {30 + 20 * rng.uniform(), 80 + 10 * rng.uniform(), -30 + 60 * rng.uniform()};
        const Scenario sc = make_scenario(cfg);
        const AngleEstimate est = nominal_estimate(cfg);
        const BeamformingSolution sol = joint_optimize(sc, est, cfg.optimizer);
        const RateReport r = rate_report(sc, est, sol.xi);
        CHECK(r.rate_exact <= r.rate_upper + 1e-9);
        CHECK(r.rate_exact >= 0.0);
        CHECK(r.snr_effective * sc.noise_mw == Approx(sol.received_power).epsilon(1e-6));
    }
}

TEST_CASE("approximation is close in the sparse high-K regime", "[rate]")
{
    SystemConfig cfg;
    cfg.rician = {10, 10, 10};
    cfg.irs = {42, 63, -16};
    cfg.user = {46, 70, -16}; // same azimuth as the IRS
    const Scenario sc = make_scenario(cfg);
    const AngleEstimate est = nominal_estimate(cfg);
    const RateReport r = rate_report(sc, est, joint_optimize(sc, est, cfg.optimizer).xi);
    CHECK(std::abs(r.rate_exact - r.rate_approx) / r.rate_exact < 0.15);
}

TEST_CASE("more BS antennas give a higher rate", "[rate]")
{
    double rate[2];
    int k = 0;
    for (int N : {4, 16})
    {
        const SystemConfig cfg = apply_sweep(SystemConfig{}, "n_bs", N);
        const Scenario sc = make_scenario(cfg);
        const AngleEstimate est = nominal_estimate(cfg);
        rate[k++] = rate_report(sc, est, joint_optimize(sc, est, cfg.optimizer).xi).rate_exact;
    }
    CHECK(rate[1] > rate[0]);
}
