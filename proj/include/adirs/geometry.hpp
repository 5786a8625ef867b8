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

#ifndef ADIRS_GEOMETRY_HPP
#define ADIRS_GEOMETRY_HPP

#include <Eigen/Dense>
#include <complex>
#include <numbers>

namespace adirs
{

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSpeedOfLight = 299792458.0;
inline constexpr double kCarrierHz = 2.45e9;
inline constexpr double kWavelength = kSpeedOfLight / kCarrierHz; // ~0.12236 m, element spacing is half of it

using cdouble = std::complex<double>;
using SteeringVector = Eigen::VectorXcd;

// Cartesian position in meters, BS at the origin, z pointing up (users and IRS sit below the BS)
struct Position
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Position operator-(const Position &o) const { return {x - o.x, y - o.y, z - o.z}; }
    Position operator+(const Position &o) const { return {x + o.x, y + o.y, z + o.z}; }
    Position operator*(double s) const { return {x * s, y * s, z * s}; }
    double norm() const;
    bool is_finite() const;
};

double distance(const Position &a, const Position &b);

// Phase progression between adjacent elements along the x and y axes [rad]
struct EffectiveAnglePair
{
    double theta_x = 0.0;
    double theta_y = 0.0;

    double norm_sq() const { return theta_x * theta_x + theta_y * theta_y; }
};

// Grid coordinates of a URA element
struct UraIndex
{
    int i = 0; // column, remainder of (n-1)/sqrt(N)
    int j = 0; // row, quotient of (n-1)/sqrt(N)
};

// Side length of a square array; throws ConfigError when N is not a perfect square.
// N = 0 is accepted (side 0) so an absent IRS can share the same code path.
int ura_side(int N);

// 1-based element index n -> (i, j)
UraIndex ura_index(int n, int N);

// a_n = exp(j (i_n theta_x + j_n theta_y)), length N
SteeringVector steering_vector(const EffectiveAnglePair &angles, int N);

// x = d cos(el) cos(az), y = d cos(el) sin(az), z = -d sin(el). Angles in radians.
Position cartesian_from_spherical(double d, double elevation, double azimuth);

// Inverse of cartesian_from_spherical; returns {d, elevation, azimuth} in radians
struct Spherical
{
    double d = 0.0;
    double elevation = 0.0;
    double azimuth = 0.0;
};
Spherical spherical_from_cartesian(const Position &p);

// Effective angles of the ray leaving `from` towards `to` at half-wavelength spacing:
//   theta_x = -pi (to.x - from.x) / |to - from|, theta_y likewise.
// Arrival angles at a receiver use the reversed incoming direction with positive sign,
// pi (src - rx) / |src - rx|, which is numerically the same pair as the departure angles.
EffectiveAnglePair effective_angles(const Position &from, const Position &to);
EffectiveAnglePair arrival_angles(const Position &source, const Position &receiver);

// Effective angles seen from the origin for a direction given in radians
EffectiveAnglePair direction_angles(double elevation, double azimuth);

} // namespace adirs

#endif
