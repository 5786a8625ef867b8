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

#include "adirs/rate.hpp"
#include "adirs/errors.hpp"

#include <cmath>

namespace adirs
{

double achievable_rate(const PowerMatrix &pm, double p_bs, double noise)
{
    if (!(noise > 0.0))
        throw DomainError("Noise power must be positive.");
    if (p_bs == 0.0)
        return 0.0;
    const double lambda = dominant_eigenpair(pm.T).value;
    return std::log2(1.0 + p_bs * std::max(lambda, 0.0) / noise);
}

double omega(const Scenario &sc, const DampedMatrices &dm, const LinkStatistics &stats, const Eigen::VectorXcd &xi)
{
    const int N = sc.n_bs;
    double value = N * (stats.beta_d + stats.sigma_nlos_sq);
    if (xi.size() == 0)
        return value;
    const Eigen::VectorXcd bx = steering_vector(sc.b2i_arrival, sc.m_irs).cwiseProduct(xi);
    const Eigen::VectorXcd a = steering_vector(sc.b2i, N);
    const cdouble cascade = bx.dot(dm.B * bx);
    const cdouble cross = bx.dot(dm.C * a.conjugate());
    if (std::abs(cascade.imag()) > 1e-9 * std::max(1.0, std::abs(cascade)))
        throw NumericalError("Trace form has a non-negligible imaginary part.", cascade.imag());
    value += N * stats.beta_c * cascade.real() + 2.0 * stats.cross() * cross.real();
    return value;
}

double approx_rate(const Scenario &sc, const DampedMatrices &dm, const LinkStatistics &stats,
                   const Eigen::VectorXcd &xi)
{
    return std::log2(1.0 + sc.p_bs_mw * omega(sc, dm, stats, xi) / sc.noise_mw);
}

double upper_bound_rate(const LinkStatistics &stats, int N, int M, double p_bs, double noise)
{
    const double m = M;
    const double gain = stats.beta_c * m * m + 2.0 * stats.cross() * m + stats.beta_d + stats.sigma_nlos_sq;
    return std::log2(1.0 + p_bs * N * gain / noise);
}

double upper_bound_rate(const Scenario &sc)
{
    return upper_bound_rate(link_statistics(sc), sc.n_bs, sc.m_irs, sc.p_bs_mw, sc.noise_mw);
}

RateReport rate_report(const Scenario &sc, const AngleEstimate &est, const Eigen::VectorXcd &xi)
{
    const LinkStatistics stats = link_statistics(sc);
    const DampedMatrices dm = compute_damped_matrices(est, sc.n_bs, sc.m_irs);
    const PowerMatrix pm = assemble_T(dm, xi, cascade_los(sc), stats);
    RateReport r;
    const double lambda = std::max(dominant_eigenpair(pm.T).value, 0.0);
    r.snr_effective = sc.p_bs_mw * lambda / sc.noise_mw;
    r.rate_exact = std::log2(1.0 + r.snr_effective);
    r.rate_approx = approx_rate(sc, dm, stats, xi);
    r.rate_upper = upper_bound_rate(stats, sc.n_bs, sc.m_irs, sc.p_bs_mw, sc.noise_mw);
    return r;
}

} // namespace adirs
