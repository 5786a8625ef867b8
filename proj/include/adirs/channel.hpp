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

#ifndef ADIRS_CHANNEL_HPP
#define ADIRS_CHANNEL_HPP

#include "adirs/config.hpp"
#include "adirs/geometry.hpp"
#include "adirs/rng.hpp"

#include <Eigen/Dense>

namespace adirs
{

struct LinkParams
{
    double rician_k = 0.0;      // v, may be +inf for pure LOS
    double path_loss_exp = 2.0; // chi
    double distance = 1.0;      // [m]
};

// distance^-exponent; distance <= 0 throws ConfigError
double path_loss(double distance, double exponent);
double path_loss(const LinkParams &link);

// dBm -> mW
double dbm_to_linear(double dbm);
double linear_to_db(double x);

// LOS and NLOS power fractions v/(v+1) and 1/(v+1), with the v = inf limit handled
double los_fraction(double v);
double nlos_fraction(double v);

// Resolved geometry and linear-scale quantities of one configuration. Plain data, so
// tests and sweeps may adjust single fields (e.g. set noise_mw = 0 or alpha_b2u = 0).
struct Scenario
{
    int n_bs = 16;
    int m_irs = 64;
    Position bs;
    Position irs;
    Position user;
    double d_b2u = 1.0, d_i2u = 1.0, d_b2i = 1.0;
    double alpha_b2u = 1.0, alpha_i2u = 1.0, alpha_b2i = 1.0;
    RicianFactors rician;
    EffectiveAnglePair b2u;         // BS -> user departure
    EffectiveAnglePair b2i;         // BS -> IRS departure
    EffectiveAnglePair b2i_arrival; // at the IRS, from the BS
    EffectiveAnglePair i2u;         // IRS -> user departure
    double p_bs_mw = 10.0;
    double p_q_mw = 1.0;
    double noise_mw = 1e-6;

    // alpha_B2U P_q / sigma^2 at the BS
    double rx_snr() const { return alpha_b2u * p_q_mw / noise_mw; }
};

Scenario make_scenario(const SystemConfig &cfg);

// LOS directions used to build one realization
struct LosAngles
{
    EffectiveAnglePair b2u;
    EffectiveAnglePair i2u;
    EffectiveAnglePair b2i;
    EffectiveAnglePair b2i_arrival;
};

LosAngles true_los_angles(const Scenario &sc);

struct ChannelRealization
{
    Eigen::MatrixXcd H_b2i; // M x N
    Eigen::VectorXcd h_i2u; // M
    Eigen::VectorXcd h_b2u; // N
    Eigen::MatrixXcd los_H_b2i, nlos_H_b2i;
    Eigen::VectorXcd los_h_i2u, nlos_h_i2u;
    Eigen::VectorXcd los_h_b2u, nlos_h_b2u;
    double alpha_b2u = 0.0, alpha_i2u = 0.0, alpha_b2i = 0.0;

    // Scalar received amplitude g^T w for phases xi (empty xi means no IRS)
    cdouble response(const Eigen::VectorXcd &w, const Eigen::VectorXcd &xi) const;
};

// sqrt(alpha v/(v+1)) LOS + sqrt(alpha/(v+1)) NLOS, NLOS entries CN(0,1).
// Draw order: h_b2u, h_i2u, H_b2i (column major).
ChannelRealization sample_channels(const Scenario &sc, const LosAngles &los, Rng &rng);
ChannelRealization sample_channels(const Scenario &sc, Rng &rng);
ChannelRealization sample_channels(const SystemConfig &cfg, Rng &rng);

// Mean cascade gain beta_B2I2U, direct gain beta_B2U and the NLOS floor sigma^2_NLOS
struct LinkStatistics
{
    double beta_c = 0.0;
    double beta_d = 0.0;
    double sigma_nlos_sq = 0.0;

    double cross() const;
};

LinkStatistics link_statistics(const Scenario &sc);

// LOS part of H_B2I at the true angles: b(theta_B2I arrival) a^T(theta_B2I), M x N
Eigen::MatrixXcd cascade_los(const Scenario &sc);

} // namespace adirs

#endif
