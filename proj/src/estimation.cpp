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

#include "adirs/estimation.hpp"
#include "adirs/errors.hpp"

#include <cmath>

namespace adirs
{

double wrap_phase(double x)
{
    double r = std::remainder(x, 2.0 * kPi);
    if (r <= -kPi)
        r += 2.0 * kPi;
    return r;
}

double phase_uncertainty_variance(double rician_k, double rx_snr)
{
    if (!(rician_k > 0.0) || !(rx_snr > 0.0))
        throw DomainError("Phase uncertainty needs a positive K-factor and SNR.");
    const double c = (4.0 - kPi) / 8.0;
    return c / rician_k + c * (1.0 + 1.0 / rician_k) / rx_snr;
}

UplinkObservation simulate_uplink_phases(const Scenario &sc, const EffectiveAnglePair &true_b2u, Rng &rng,
                                         double pilot_phase)
{
    const int N = sc.n_bs;
    const int s = ura_side(N);
    const double v = sc.rician.b2u;
    const double g_los = std::sqrt(sc.alpha_b2u * los_fraction(v));
    const double g_nlos = std::sqrt(sc.alpha_b2u * nlos_fraction(v));
    const double sigma = std::sqrt(sc.noise_mw);
    const cdouble pilot = std::polar(std::sqrt(sc.p_q_mw), pilot_phase);

    UplinkObservation obs;
    obs.phases.resize(N);
    obs.snr_rx = sc.rx_snr();
    obs.rician_k = v;
    for (int n = 0; n < N; ++n)
    {
        const double i = n % s, j = n / s;
        const cdouble los = std::polar(1.0, -(i * true_b2u.theta_x + j * true_b2u.theta_y));
        const cdouble h = rng.complex_normal();
        const cdouble e = rng.complex_normal();
        const cdouble r = pilot * (g_los * los + g_nlos * h) + sigma * e;
        obs.phases[n] = std::arg(r);
    }
    return obs;
}

UplinkObservation simulate_uplink_phases(const SystemConfig &cfg, const EffectiveAnglePair &true_b2u, Rng &rng)
{
    return simulate_uplink_phases(make_scenario(cfg), true_b2u, rng);
}

Eigen::VectorXd pair_phase_differences(const UplinkObservation &obs)
{
    const auto N = obs.phases.size();
    Eigen::VectorXd d(N / 2);
    for (Eigen::Index n = 0; n < N / 2; ++n)
        d[n] = wrap_phase(obs.phases[n] - obs.phases[N - 1 - n]);
    return d;
}

EffectiveAnglePair ml_estimate_b2u(const Eigen::VectorXd &diffs, int N)
{
    const int s = ura_side(N);
    if (diffs.size() != N / 2)
        throw ConfigError("Expected N/2 phase differences.");
    double sx = 0.0, sy = 0.0;
    for (int n = 0; n < N / 2; ++n)
    {
        const int m = N - 1 - n;
        sx += static_cast<double>(n % s - m % s) * diffs[n];
        sy += static_cast<double>(n / s - m / s) * diffs[n];
    }
    const double scale = -6.0 / (static_cast<double>(N) * (N - 1));
    return {scale * sx, scale * sy};
}

double estimation_error_variance(double sigma_e_sq, int N)
{
    return 12.0 * sigma_e_sq / (static_cast<double>(N) * (N - 1));
}

double analytic_sigma_est_sq(const Scenario &sc)
{
    return estimation_error_variance(phase_uncertainty_variance(sc.rician.b2u, sc.rx_snr()), sc.n_bs);
}

Position localize_user(const EffectiveAnglePair &b2u_est, double d_b2u)
{
    double rad = kPi * kPi - b2u_est.norm_sq();
    if (rad < 0.0)
    {
        if (rad < -1e-12 * kPi * kPi || !std::isfinite(rad))
            throw EstimationFailure("Estimated angles leave the physical region.");
        rad = 0.0;
    }
    return {-d_b2u * b2u_est.theta_x / kPi, -d_b2u * b2u_est.theta_y / kPi, -d_b2u * std::sqrt(rad) / kPi};
}

IrsUserGeometry irs_user_angles(const Position &user_pos_est, const Position &irs_pos)
{
    const double d = distance(user_pos_est, irs_pos);
    if (!(d > 0.0))
        throw GeometryError("Estimated user position coincides with the IRS.");
    return {{kPi * (irs_pos.x - user_pos_est.x) / d, kPi * (irs_pos.y - user_pos_est.y) / d},
            kPi * (irs_pos.z - user_pos_est.z) / d,
            d};
}

PropagationCoeffs error_propagation_coeffs(const EffectiveAnglePair &i2u_est, double theta_z, double ratio_ra)
{
    const double x = i2u_est.theta_x, y = i2u_est.theta_y;
    const double p2 = kPi * kPi, p3 = p2 * kPi;
    return {ratio_ra * (1.0 - x * x / p2 + x * x * theta_z / p3),
            ratio_ra * (-x * y / p2 + x * y * theta_z / p3),
            ratio_ra * (1.0 - y * y / p2 + y * y * theta_z / p3)};
}

AngleEstimate estimate_from_angles(const Scenario &sc, const EffectiveAnglePair &b2u_est, double sigma_est_sq)
{
    AngleEstimate est;
    est.b2u = b2u_est;
    est.user_pos_est = localize_user(b2u_est, sc.d_b2u);
    const IrsUserGeometry g = irs_user_angles(est.user_pos_est, sc.irs);
    est.i2u = g.angles;
    est.theta_z_i2u = g.theta_z;
    est.d_i2u_est = g.distance;
    est.ratio_ra = sc.d_b2u / g.distance;
    est.sigma_est_sq = sigma_est_sq;
    est.phi = error_propagation_coeffs(g.angles, g.theta_z, est.ratio_ra);
    return est;
}

AngleEstimate estimate_all(const Scenario &sc, Rng &rng)
{
    const UplinkObservation obs = simulate_uplink_phases(sc, sc.b2u, rng);
    const EffectiveAnglePair b2u = ml_estimate_b2u(pair_phase_differences(obs), sc.n_bs);
    return estimate_from_angles(sc, b2u, analytic_sigma_est_sq(sc));
}

AngleEstimate estimate_all(const SystemConfig &cfg, Rng &rng)
{
    return estimate_all(make_scenario(cfg), rng);
}

} // namespace adirs
