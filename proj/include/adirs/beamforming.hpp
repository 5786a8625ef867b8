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

#ifndef ADIRS_BEAMFORMING_HPP
#define ADIRS_BEAMFORMING_HPP

#include "adirs/channel.hpp"
#include "adirs/config.hpp"
#include "adirs/estimation.hpp"

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace adirs
{

// Angle-error-damped correlation matrices built at the estimated angles
struct DampedMatrices
{
    Eigen::MatrixXcd A; // N x N
    Eigen::MatrixXcd B; // M x M
    Eigen::MatrixXcd C; // M x N
};

DampedMatrices compute_damped_matrices(const AngleEstimate &est, int N, int M);

struct PowerMatrix
{
    Eigen::MatrixXcd T;
    LinkStatistics stats;
};

// Expected received power is w^H T w. xi must be unit modulus (ContractViolation otherwise),
// Hbar is the LOS part of H_B2I at the true angles.
PowerMatrix assemble_T(const DampedMatrices &dm, const Eigen::VectorXcd &xi, const Eigen::MatrixXcd &Hbar,
                       const LinkStatistics &stats);

struct Eigenpair
{
    double value = 0.0;
    Eigen::VectorXcd vector; // unit norm
    int iterations = 0;
};

// Power iteration for the largest eigenvalue of a Hermitian matrix. Stops on a relative
// Rayleigh-quotient change below tol; throws NumericalError after max_iter.
Eigenpair dominant_eigenpair(const Eigen::MatrixXcd &T, double tol = 1e-10, int max_iter = 5000);

// sqrt(P_BS) t_max
Eigen::VectorXcd bs_beam(const Eigen::MatrixXcd &T, double p_bs);

// With the BS beam w fixed, the expected power as a function of the IRS phases is
//   P(xi) = beta_c xi^H K xi + 2 s Re(xi^H u) + c0
// with v = Hbar w, K = B .* conj(v v^H), u = conj(v) .* (C w), s = sqrt(beta_c beta_d).
// Gradients use the convention d/dRe + j d/dIm.
class IrsSubproblem
{
public:
    IrsSubproblem(const DampedMatrices &dm, const Eigen::MatrixXcd &Hbar, const LinkStatistics &stats,
                  const Eigen::VectorXcd &w);

    double power(const Eigen::VectorXcd &xi) const;
    Eigen::VectorXcd power_gradient(const Eigen::VectorXcd &xi) const;

    // G(xi) = -P(xi) - ln(1 - ||xi||_p)/kappa, defined for ||xi||_p < 1
    double barrier_objective(const Eigen::VectorXcd &xi, const OptimizerParams &params) const;

    int size() const { return static_cast<int>(u_.size()); }

private:
    Eigen::MatrixXcd K_;
    Eigen::VectorXcd u_;
    double beta_c_;
    double s_;
    double c0_;
};

double lp_norm(const Eigen::VectorXcd &xi, double p);

// Gradient of G; throws DomainError when ||xi||_p >= 1
Eigen::VectorXcd irs_gradient(const IrsSubproblem &sub, const Eigen::VectorXcd &xi, const OptimizerParams &params);

// g - (xi^H g / ||xi||^2) xi
Eigen::VectorXcd project_tangent(const Eigen::VectorXcd &g, const Eigen::VectorXcd &xi);

Eigen::VectorXcd phase_project(const Eigen::VectorXcd &x);

struct IrsResult
{
    Eigen::VectorXcd xi;
    std::vector<double> trace; // P at the start and after every iteration
    int iterations = 0;
};

IrsResult optimize_irs(const IrsSubproblem &sub, const Eigen::VectorXcd &xi0, const OptimizerParams &params);

struct BeamformingSolution
{
    Eigen::VectorXcd w;
    Eigen::VectorXcd xi;
    std::vector<double> objective_trace; // initial point, then after every half-step
    int outer_iterations = 0;
    bool converged = false;
    double received_power = 0.0; // w^H T w at the output
};

BeamformingSolution joint_optimize(const Scenario &sc, const AngleEstimate &est, const OptimizerParams &params);
BeamformingSolution joint_optimize(const SystemConfig &cfg, const AngleEstimate &est);

// Brute-force mean of |g^T w|^2: per trial the user-side LOS angles are drawn around the
// estimate with the Gaussian error model, then a fresh Rician realization is sampled.
double monte_carlo_received_power(const Scenario &sc, const AngleEstimate &est, const Eigen::VectorXcd &w,
                                  const Eigen::VectorXcd &xi, int trials, std::uint64_t seed);

} // namespace adirs

#endif
