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

#ifndef ADIRS_CONFIG_HPP
#define ADIRS_CONFIG_HPP

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

namespace adirs
{

struct RicianFactors
{
    double b2u = 5.0;
    double i2u = 5.0;
    double b2i = 5.0;
};

struct PathLossExponents
{
    double b2u = 2.5;
    double i2u = 2.5;
    double b2i = 2.5;
};

// Placement relative to the BS: distance [m], elevation [deg], azimuth [deg]
struct SphericalPlacement
{
    double distance_m = 1.0;
    double elevation_deg = 0.0;
    double azimuth_deg = 0.0;
};

// Knobs of the IRS phase optimizer and the BS/IRS alternation
struct OptimizerParams
{
    double p = 20.0;          // l_p exponent approximating l_inf, even and >= 4
    double kappa = 100.0;     // log-barrier scale
    double eps = 1e-4;        // relative halting threshold
    int n_iter_inner = 200;
    int n_iter_outer = 30;
    int line_search_grid = 64; // grid points on [0, 1], refined once by golden section
};

// Complete scenario. Defaults are the desk-scale reference setup: N = 16, M = 64,
// P_BS = 10 dBm, noise -60 dBm, all K-factors 5, all path-loss exponents 2.5,
// IRS at (42 m, 63 deg, -16 deg) and user at (41 m, 88 deg, -16 deg).
struct SystemConfig
{
    int n_bs = 16;
    int m_irs = 64;
    double p_bs_dbm = 10.0;
    double p_q_dbm = 0.0;    // uplink pilot power
    double noise_dbm = -60.0; // noise floor at the user and at the BS
    RicianFactors rician;
    PathLossExponents chi;
    SphericalPlacement irs{42.0, 63.0, -16.0};
    SphericalPlacement user{41.0, 88.0, -16.0};
    OptimizerParams optimizer;
    std::uint64_t seed = 1;
    int trials = 10000;
};

// Throws ConfigError on the first violated invariant
void validate(const SystemConfig &cfg);
void validate(const OptimizerParams &params);

nlohmann::json to_json(const SystemConfig &cfg);

// Strict parser: every key must be known, missing keys keep their defaults
SystemConfig config_from_json(const nlohmann::json &j);
SystemConfig load_config(const std::string &path);

// FNV-1a over the canonical JSON dump, rendered as 16 hex digits
std::string config_hash(const SystemConfig &cfg);

} // namespace adirs

#endif
