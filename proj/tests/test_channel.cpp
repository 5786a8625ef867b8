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

#include "adirs/channel.hpp"
#include "adirs/errors.hpp"

#include <Eigen/SVD>
#include <limits>

using namespace adirs;
using Catch::Approx;

TEST_CASE("path loss and dBm conversion", "[channel]")
{
    CHECK(path_loss(1.0, 2.5) == 1.0);
    CHECK(path_loss(42.0, 2.5) == Approx(8.747355440027886e-05).epsilon(1e-12));
    CHECK(path_loss(41.0, 2.8) == Approx(3.049335439526104e-05).epsilon(1e-12));
    CHECK_THROWS_AS(path_loss(0.0, 2.5), ConfigError);
    CHECK_THROWS_AS(path_loss(-3.0, 2.5), ConfigError);
    CHECK(path_loss(LinkParams{5.0, 2.0, 10.0}) == Approx(0.01));

    CHECK(dbm_to_linear(0.0) == 1.0);
    CHECK(dbm_to_linear(10.0) == Approx(10.0));
    CHECK(dbm_to_linear(-60.0) == Approx(1e-6));
    CHECK(linear_to_db(100.0) == Approx(20.0));
}

TEST_CASE("scenario resolves the default geometry", "[channel]")
{
    const Scenario sc = make_scenario(SystemConfig{});
    CHECK(sc.d_b2u == Approx(41.0));
    CHECK(sc.d_b2i == Approx(42.0));
    CHECK(sc.alpha_b2i == Approx(8.747355440027886e-05));
    CHECK(sc.p_bs_mw == Approx(10.0));
    CHECK(sc.noise_mw == Approx(1e-6));
    CHECK(sc.rx_snr() == Approx(sc.alpha_b2u * 1.0 / 1e-6));
}

TEST_CASE("realization obeys the Rician mixing rule", "[channel]")
{
    SystemConfig cfg;
    cfg.n_bs = 4;
    cfg.m_irs = 16;
    const Scenario sc = make_scenario(cfg);
    Rng rng(3);
    const ChannelRealization ch = sample_channels(sc, rng);
    const double v = 5.0;
    const Eigen::VectorXcd expect =
        std::sqrt(sc.alpha_b2u * v / (v + 1)) * ch.los_h_b2u + std::sqrt(sc.alpha_b2u / (v + 1)) * ch.nlos_h_b2u;
    CHECK((ch.h_b2u - expect).norm() <= 1e-15 * expect.norm());
    const Eigen::MatrixXcd expectH =
        std::sqrt(sc.alpha_b2i * v / (v + 1)) * ch.los_H_b2i + std::sqrt(sc.alpha_b2i / (v + 1)) * ch.nlos_H_b2i;
    CHECK((ch.H_b2i - expectH).norm() <= 1e-15 * expectH.norm());
    CHECK(ch.H_b2i.rows() == 16);
    CHECK(ch.H_b2i.cols() == 4);
}

TEST_CASE("large K-factor gives the LOS channel", "[channel]")
{
    SystemConfig cfg;
    cfg.rician = {1e12, 1e12, 1e12};
    Rng rng(9);
    const ChannelRealization ch = sample_channels(cfg, rng);
    CHECK((ch.H_b2i - std::sqrt(ch.alpha_b2i) * ch.los_H_b2i).norm() / ch.H_b2i.norm() < 1e-5);
    CHECK((ch.h_i2u - std::sqrt(ch.alpha_i2u) * ch.los_h_i2u).norm() / ch.h_i2u.norm() < 1e-5);
    CHECK((ch.h_b2u - std::sqrt(ch.alpha_b2u) * ch.los_h_b2u).norm() / ch.h_b2u.norm() < 1e-5);
}

TEST_CASE("LOS part of H_B2I has rank one", "[channel]")
{
    Rng rng(1);
    const ChannelRealization ch = sample_channels(SystemConfig{}, rng);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(ch.los_H_b2i);
    const auto s = svd.singularValues();
    CHECK(s[0] == Approx(std::sqrt(16.0 * 64.0)));
    CHECK(s[1] < 1e-12 * s[0]);
}

TEST_CASE("zero K-factor channel has per-entry variance alpha", "[channel]")
{
    SystemConfig cfg;
    cfg.n_bs = 4;
    cfg.m_irs = 4;
    cfg.rician = {5.0, 0.0, 0.0};
    const Scenario sc = make_scenario(cfg);
    const int trials = 100000;
    double sum = 0.0, sum_sq = 0.0;
    for (int k = 0; k < trials; ++k)
    {
        Rng rng(21, k);
        const double p = std::norm(sample_channels(sc, rng).H_b2i(1, 2));
        sum += p;
        sum_sq += p * p;
    }
    const double mean = sum / trials;
    const double sd_of_mean = std::sqrt((sum_sq / trials - mean * mean) / trials);
    CHECK(std::abs(mean - sc.alpha_b2i) < 3.0 * sd_of_mean);
}

TEST_CASE("mean direct-link energy per antenna approaches alpha", "[channel]")
{
    const Scenario sc = make_scenario(SystemConfig{});
    const int trials = 100000;
    double sum = 0.0;
    for (int k = 0; k < trials; ++k)
    {
        Rng rng(4, k);
        sum += sample_channels(sc, rng).h_b2u.squaredNorm() / sc.n_bs;
    }
    CHECK(sum / trials == Approx(sc.alpha_b2u).epsilon(0.02));
}

TEST_CASE("same seed gives a bit-identical realization", "[channel]")
{
    Rng a(77, 5), b(77, 5), c(77, 6);
    const ChannelRealization x = sample_channels(SystemConfig{}, a);
    const ChannelRealization y = sample_channels(SystemConfig{}, b);
    const ChannelRealization z = sample_channels(SystemConfig{}, c);
    CHECK(x.H_b2i == y.H_b2i);
    CHECK(x.h_i2u == y.h_i2u);
    CHECK(x.h_b2u == y.h_b2u);
    CHECK(x.h_b2u != z.h_b2u);
}

TEST_CASE("link statistics closed forms", "[channel]")
{
    Scenario sc = make_scenario(SystemConfig{});
    sc.alpha_b2u = sc.alpha_i2u = sc.alpha_b2i = 1.0;
    sc.m_irs = 4;
    const LinkStatistics s = link_statistics(sc);
    CHECK(s.beta_c == Approx(25.0 / 36.0));
    CHECK(s.beta_d == Approx(5.0 / 6.0));
    CHECK(s.sigma_nlos_sq == Approx(50.0 / 36.0));

    sc.m_irs = 0;
    CHECK(link_statistics(sc).sigma_nlos_sq == Approx(1.0 / 6.0));

    sc.rician = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
                 std::numeric_limits<double>::infinity()};
    sc.m_irs = 4;
    CHECK(link_statistics(sc).sigma_nlos_sq == 0.0);
    CHECK(link_statistics(sc).beta_c == 1.0);
}
