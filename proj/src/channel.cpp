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

#include "adirs/channel.hpp"
#include "adirs/errors.hpp"

#include <cmath>

namespace adirs
{

double path_loss(double distance, double exponent)
{
    if (!(distance > 0.0))
        throw ConfigError("Path loss needs a positive distance.");
    return std::pow(distance, -exponent);
}

double path_loss(const LinkParams &link)
{
    if (!(link.rician_k >= 0.0))
        throw ConfigError("Rician factor must be non-negative.");
    return path_loss(link.distance, link.path_loss_exp);
}

double dbm_to_linear(double dbm)
{
    return std::pow(10.0, dbm / 10.0);
}

double linear_to_db(double x)
{
    return 10.0 * std::log10(x);
}

double los_fraction(double v)
{
    return std::isinf(v) ? 1.0 : v / (v + 1.0);
}

double nlos_fraction(double v)
{
    return std::isinf(v) ? 0.0 : 1.0 / (v + 1.0);
}

Scenario make_scenario(const SystemConfig &cfg)
{
    validate(cfg);
    constexpr double deg = kPi / 180.0;
    Scenario sc;
    sc.n_bs = cfg.n_bs;
    sc.m_irs = cfg.m_irs;
    sc.irs = cartesian_from_spherical(cfg.irs.distance_m, cfg.irs.elevation_deg * deg, cfg.irs.azimuth_deg * deg);
    sc.user = cartesian_from_spherical(cfg.user.distance_m, cfg.user.elevation_deg * deg, cfg.user.azimuth_deg * deg);
    sc.d_b2u = distance(sc.bs, sc.user);
    sc.d_b2i = distance(sc.bs, sc.irs);
    sc.d_i2u = distance(sc.irs, sc.user);
    sc.alpha_b2u = path_loss(sc.d_b2u, cfg.chi.b2u);
    sc.alpha_b2i = path_loss(sc.d_b2i, cfg.chi.b2i);
    sc.alpha_i2u = path_loss(sc.d_i2u, cfg.chi.i2u);
    sc.rician = cfg.rician;
    sc.b2u = effective_angles(sc.bs, sc.user);
    sc.b2i = effective_angles(sc.bs, sc.irs);
    sc.b2i_arrival = arrival_angles(sc.bs, sc.irs);
    sc.i2u = effective_angles(sc.irs, sc.user);
    sc.p_bs_mw = dbm_to_linear(cfg.p_bs_dbm);
    sc.p_q_mw = dbm_to_linear(cfg.p_q_dbm);
    sc.noise_mw = dbm_to_linear(cfg.noise_dbm);
    return sc;
}

LosAngles true_los_angles(const Scenario &sc)
{
    return {sc.b2u, sc.i2u, sc.b2i, sc.b2i_arrival};
}

cdouble ChannelRealization::response(const Eigen::VectorXcd &w, const Eigen::VectorXcd &xi) const
{
    cdouble y = h_b2u.cwiseProduct(w).sum();
    if (xi.size() > 0)
        y += h_i2u.cwiseProduct(xi).cwiseProduct(H_b2i * w).sum();
    return y;
}

namespace
{

template <typename Mat>
void fill_cn(Mat &m, Rng &rng)
{
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            m(r, c) = rng.complex_normal();
}

template <typename Mat>
Mat mix(double alpha, double v, const Mat &los, const Mat &nlos)
{
    return std::sqrt(alpha * los_fraction(v)) * los + std::sqrt(alpha * nlos_fraction(v)) * nlos;
}

} // namespace

ChannelRealization sample_channels(const Scenario &sc, const LosAngles &los, Rng &rng)
{
    const int N = sc.n_bs, M = sc.m_irs;
    ChannelRealization ch;
    ch.alpha_b2u = sc.alpha_b2u;
    ch.alpha_i2u = sc.alpha_i2u;
    ch.alpha_b2i = sc.alpha_b2i;

    ch.los_h_b2u = steering_vector(los.b2u, N);
    ch.los_h_i2u = steering_vector(los.i2u, M);
    ch.los_H_b2i = steering_vector(los.b2i_arrival, M) * steering_vector(los.b2i, N).transpose();

    ch.nlos_h_b2u.resize(N);
    ch.nlos_h_i2u.resize(M);
    ch.nlos_H_b2i.resize(M, N);
    fill_cn(ch.nlos_h_b2u, rng);
    fill_cn(ch.nlos_h_i2u, rng);
    fill_cn(ch.nlos_H_b2i, rng);

    ch.h_b2u = mix(sc.alpha_b2u, sc.rician.b2u, ch.los_h_b2u, ch.nlos_h_b2u);
    ch.h_i2u = mix(sc.alpha_i2u, sc.rician.i2u, ch.los_h_i2u, ch.nlos_h_i2u);
    ch.H_b2i = mix(sc.alpha_b2i, sc.rician.b2i, ch.los_H_b2i, ch.nlos_H_b2i);
    return ch;
}

ChannelRealization sample_channels(const Scenario &sc, Rng &rng)
{
    return sample_channels(sc, true_los_angles(sc), rng);
}

ChannelRealization sample_channels(const SystemConfig &cfg, Rng &rng)
{
    return sample_channels(make_scenario(cfg), rng);
}

double LinkStatistics::cross() const
{
    return std::sqrt(beta_c * beta_d);
}

LinkStatistics link_statistics(const Scenario &sc)
{
    const auto &v = sc.rician;
    LinkStatistics s;
    s.beta_c = sc.alpha_i2u * sc.alpha_b2i * los_fraction(v.b2i) * los_fraction(v.i2u);
    s.beta_d = sc.alpha_b2u * los_fraction(v.b2u);
    // cascade NLOS: every combination except LOS x LOS, |a^T w|^2 taken as ||w||^2
    s.sigma_nlos_sq = sc.m_irs * sc.alpha_i2u * sc.alpha_b2i * nlos_fraction(v.b2i) +
                      sc.m_irs * sc.alpha_i2u * sc.alpha_b2i * los_fraction(v.b2i) * nlos_fraction(v.i2u) +
                      sc.alpha_b2u * nlos_fraction(v.b2u);
    return s;
}

Eigen::MatrixXcd cascade_los(const Scenario &sc)
{
    return steering_vector(sc.b2i_arrival, sc.m_irs) * steering_vector(sc.b2i, sc.n_bs).transpose();
}

} // namespace adirs
