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

#include "adirs/geometry.hpp"
#include "adirs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace adirs
{

double Position::norm() const
{
    return std::sqrt(x * x + y * y + z * z);
}

bool Position::is_finite() const
{
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
}

double distance(const Position &a, const Position &b)
{
    return (a - b).norm();
}

int ura_side(int N)
{
    if (N < 0)
        throw ConfigError("Array size cannot be negative.");
    int s = static_cast<int>(std::lround(std::sqrt(static_cast<double>(N))));
    if (s * s != N)
        throw ConfigError("Array size " + std::to_string(N) + " is not a perfect square.");
    return s;
}

UraIndex ura_index(int n, int N)
{
    const int s = ura_side(N);
    if (n < 1 || n > N)
        throw ConfigError("Element index " + std::to_string(n) + " outside 1.." + std::to_string(N) + ".");
    return {(n - 1) % s, (n - 1) / s};
}

SteeringVector steering_vector(const EffectiveAnglePair &angles, int N)
{
    const int s = ura_side(N);
    SteeringVector a(N);
    for (int n = 0; n < N; ++n)
    {
        const double i = n % s, j = n / s;
        a[n] = std::polar(1.0, i * angles.theta_x + j * angles.theta_y);
    }
    return a;
}

Position cartesian_from_spherical(double d, double elevation, double azimuth)
{
    if (!(d > 0.0))
        throw ConfigError("Distance must be positive.");
    const double c = std::cos(elevation);
    return {d * c * std::cos(azimuth), d * c * std::sin(azimuth), -d * std::sin(elevation)};
}

Spherical spherical_from_cartesian(const Position &p)
{
    const double d = p.norm();
    if (!(d > 0.0))
        throw GeometryError("Cannot express the origin in spherical coordinates.");
    return {d, std::asin(std::clamp(-p.z / d, -1.0, 1.0)), std::atan2(p.y, p.x)};
}

EffectiveAnglePair effective_angles(const Position &from, const Position &to)
{
    const Position v = to - from;
    const double d = v.norm();
    if (!(d > 0.0))
        throw GeometryError("Effective angles are undefined for coincident positions.");
    return {-kPi * v.x / d, -kPi * v.y / d};
}

EffectiveAnglePair arrival_angles(const Position &source, const Position &receiver)
{
    const Position v = source - receiver;
    const double d = v.norm();
    if (!(d > 0.0))
        throw GeometryError("Effective angles are undefined for coincident positions.");
    return {kPi * v.x / d, kPi * v.y / d};
}

EffectiveAnglePair direction_angles(double elevation, double azimuth)
{
    const double c = std::cos(elevation);
    return {-kPi * c * std::cos(azimuth), -kPi * c * std::sin(azimuth)};
}

} // namespace adirs
