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

#ifndef ADIRS_ESTIMATION_HPP
#define ADIRS_ESTIMATION_HPP

#include "adirs/channel.hpp"
#include "adirs/config.hpp"
#include "adirs/geometry.hpp"
#include "adirs/rng.hpp"

#include <Eigen/Dense>

namespace adirs
{

struct UplinkObservation
{
    Eigen::VectorXd phases; // arg(r_n), principal branch
    double snr_rx = 0.0;
    double rician_k = 0.0;
};

// Coefficients mapping a BS-user angle error onto the IRS-user angles
struct PropagationCoeffs
{
    double phi1 = 0.0;
    double phi2 = 0.0;
    double phi3 = 0.0;
};

struct AngleEstimate
{
    EffectiveAnglePair b2u;
    EffectiveAnglePair i2u;
    double theta_z_i2u = 0.0;
    Position user_pos_est;
    double d_i2u_est = 0.0;
    double ratio_ra = 0.0; // d_B2U / d_I2U estimate
    double sigma_est_sq = 0.0;
    PropagationCoeffs phi;
};

// Wrap to (-pi, pi]
double wrap_phase(double x);

// (4 - pi)/(8v) + (4 - pi)(v + 1)/(8 v snr); v = inf or snr = inf are allowed limits
double phase_uncertainty_variance(double rician_k, double rx_snr);

// Draws r_n = sqrt(Pq) e^{j theta_q} [ sqrt(alpha v/(v+1)) e^{-j(i theta_x + j theta_y)}
//                                      + sqrt(alpha/(v+1)) h_n ] + n_n
// and returns the phases. noise_mw = 0 turns the receiver noise off.
UplinkObservation simulate_uplink_phases(const Scenario &sc, const EffectiveAnglePair &true_b2u, Rng &rng,
                                         double pilot_phase = 0.0);
UplinkObservation simulate_uplink_phases(const SystemConfig &cfg, const EffectiveAnglePair &true_b2u, Rng &rng);

// wrap(phase_n - phase_{N-n+1}) for n = 1..N/2
Eigen::VectorXd pair_phase_differences(const UplinkObservation &obs);

EffectiveAnglePair ml_estimate_b2u(const Eigen::VectorXd &diffs, int N);

// 12 sigma_e^2 / (N(N-1))
double estimation_error_variance(double sigma_e_sq, int N);

// sigma_est^2 implied by the scenario's pilot SNR and K-factor
double analytic_sigma_est_sq(const Scenario &sc);

// Throws EstimationFailure outside the disk of radius pi
Position localize_user(const EffectiveAnglePair &b2u_est, double d_b2u);

struct IrsUserGeometry
{
    EffectiveAnglePair angles;
    double theta_z = 0.0;
    double distance = 0.0;
};

IrsUserGeometry irs_user_angles(const Position &user_pos_est, const Position &irs_pos);

PropagationCoeffs error_propagation_coeffs(const EffectiveAnglePair &i2u_est, double theta_z, double ratio_ra);

// Localization, IRS-user transfer and propagation coefficients for a given B2U estimate
AngleEstimate estimate_from_angles(const Scenario &sc, const EffectiveAnglePair &b2u_est, double sigma_est_sq);

// Full pipeline: simulate, pair, ML, localize, transfer
AngleEstimate estimate_all(const Scenario &sc, Rng &rng);
AngleEstimate estimate_all(const SystemConfig &cfg, Rng &rng);

} // namespace adirs

#endif
