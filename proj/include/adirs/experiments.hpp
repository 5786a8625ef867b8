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

#ifndef ADIRS_EXPERIMENTS_HPP
#define ADIRS_EXPERIMENTS_HPP

#include "adirs/config.hpp"
#include "adirs/estimation.hpp"
#include "adirs/result_table.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace adirs
{

// One-variable sweep. Recognized variables: rx_snr_db, n_bs, m_irs, p_bs_dbm, ratio_Ra, rician_k.
struct SweepSpec
{
    std::string variable;
    std::vector<double> values;
    int trials = 0; // per point; 0 keeps the experiment's default
};

void validate(const SweepSpec &sweep);

// Derived configuration for one sweep point; the input config is not modified.
//  rx_snr_db  sets the pilot power so that alpha_B2U P_q / sigma^2 hits the target
//  ratio_Ra   moves the IRS along the user-IRS line to distance d_B2U / Ra from the user
//  rician_k   sets all three K-factors
SystemConfig apply_sweep(const SystemConfig &cfg, const std::string &variable, double value);

// Parses "var=v1,v2,..." (ConfigError on bad input)
SweepSpec parse_sweep(const std::string &text);

// Columns: value, mse_x, mse_y, analytic, excluded
ResultTable run_mse_b2u(const SystemConfig &cfg, const SweepSpec &sweep);

// Columns: value, mse_x, mse_y, predicted_x, predicted_y, excluded.
// With gaussian_b2u_errors the BS-user estimate is truth plus N(0, sigma_est^2) per axis
// instead of the simulated uplink, which isolates the angle transfer step.
ResultTable run_mse_i2u(const SystemConfig &cfg, const SweepSpec &sweep, bool gaussian_b2u_errors = false);

// Received SNR per half-step of the joint optimizer, one column per IRS size.
// Columns: iteration, snr_M<m>... ; short traces are padded with their final value.
ResultTable run_convergence(const SystemConfig &cfg, const std::vector<int> &m_values = {16, 64, 144});

// Transmit pattern |a^T(el, az) w|^2 of the optimized BS beam over a grid.
// Columns: elevation_deg, azimuth_deg, pattern, pattern_db
ResultTable run_beam_pattern(const SystemConfig &cfg, int elevation_points = 46, int azimuth_points = 181);

// Columns: value, with_irs, no_irs, no_direct, approx, upper, excluded.
// Averages over sweep.trials estimation draws per point (default 4).
ResultTable run_rate_curves(const SystemConfig &cfg, const SweepSpec &sweep);

// Fast deterministic invariant suite. Label column "check", columns: pass, value, tolerance
ResultTable run_validate(const SystemConfig &cfg);

// Angle estimate at the true user direction with the analytic sigma_est^2
AngleEstimate nominal_estimate(const SystemConfig &cfg);

} // namespace adirs

#endif
