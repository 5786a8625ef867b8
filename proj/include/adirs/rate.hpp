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

#ifndef ADIRS_RATE_HPP
#define ADIRS_RATE_HPP

#include "adirs/beamforming.hpp"
#include "adirs/channel.hpp"
#include "adirs/estimation.hpp"

#include <Eigen/Dense>

namespace adirs
{

struct RateReport
{
    double rate_exact = 0.0; // bits/s/Hz
    double rate_approx = 0.0;
    double rate_upper = 0.0;
    double snr_effective = 0.0; // linear, P_BS lambda_max / sigma0^2
};

// log2(1 + P_BS lambda_max(T) / noise); lambda_max through the power iteration
double achievable_rate(const PowerMatrix &pm, double p_bs, double noise);

// Trace-form gain
//   Omega = N beta_c sum_mn xi*_m xi_n B_mn b*_m b_n
//         + 2 s Re sum_m xi*_m b*_m sum_i C_mi a*_i + N beta_d + N sigma^2_NLOS
// with b, a the LOS vectors of H_B2I at the true angles
double omega(const Scenario &sc, const DampedMatrices &dm, const LinkStatistics &stats, const Eigen::VectorXcd &xi);

// log2(1 + P_BS Omega / noise)
double approx_rate(const Scenario &sc, const DampedMatrices &dm, const LinkStatistics &stats,
                   const Eigen::VectorXcd &xi);

// log2(1 + P_BS N (beta_c M^2 + 2 s M + beta_d + sigma^2_NLOS) / noise)
double upper_bound_rate(const LinkStatistics &stats, int N, int M, double p_bs, double noise);
double upper_bound_rate(const Scenario &sc);

RateReport rate_report(const Scenario &sc, const AngleEstimate &est, const Eigen::VectorXcd &xi);

} // namespace adirs

#endif
