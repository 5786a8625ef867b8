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

#include "adirs/config.hpp"
#include "adirs/errors.hpp"
#include "adirs/geometry.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

namespace adirs
{

using nlohmann::json;

namespace
{

void check_keys(const json &j, const std::set<std::string> &known, const std::string &where)
{
    if (!j.is_object())
        throw ConfigError("Expected an object for '" + where + "'.");
    for (const auto &item : j.items())
        if (!known.contains(item.key()))
            throw ConfigError("Unknown key '" + item.key() + "' in " + where + ".");
}

template <typename T>
void read(const json &j, const char *key, T &out)
{
    if (!j.contains(key))
        return;
    try
    {
        out = j.at(key).get<T>();
    }
    catch (const json::exception &e)
    {
        throw ConfigError(std::string("Bad value for '") + key + "': " + e.what());
    }
}

void read_placement(const json &j, const char *key, SphericalPlacement &out)
{
    if (!j.contains(key))
        return;
    const json &v = j.at(key);
    if (!v.is_array() || v.size() != 3)
        throw ConfigError(std::string("'") + key + "' must be [distance_m, elevation_deg, azimuth_deg].");
    try
    {
        out = {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
    }
    catch (const json::exception &e)
    {
        throw ConfigError(std::string("Bad value for '") + key + "': " + e.what());
    }
}

bool is_even_square(int n)
{
    int s = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    return n >= 4 && s * s == n && n % 2 == 0;
}

} // namespace

void validate(const OptimizerParams &p)
{
    if (!(p.p >= 4.0) || std::fmod(p.p, 2.0) != 0.0)
        throw ConfigError("optimizer.p must be an even number >= 4.");
    if (!(p.kappa > 0.0) || !std::isfinite(p.kappa))
        throw ConfigError("optimizer.kappa must be positive.");
    if (!(p.eps > 0.0) || !std::isfinite(p.eps))
        throw ConfigError("optimizer.eps must be positive.");
    if (p.n_iter_inner < 1 || p.n_iter_outer < 1)
        throw ConfigError("optimizer iteration caps must be >= 1.");
    if (p.line_search_grid < 2)
        throw ConfigError("optimizer.line_search_grid must be >= 2.");
}

void validate(const SystemConfig &c)
{
    if (!is_even_square(c.n_bs))
        throw ConfigError("n_bs must be an even perfect square (4, 16, 36, ...).");
    if (c.m_irs != 0 && !is_even_square(c.m_irs))
        throw ConfigError("m_irs must be 0 or an even perfect square.");
    if (!std::isfinite(c.p_bs_dbm) || !std::isfinite(c.p_q_dbm) || !std::isfinite(c.noise_dbm))
        throw ConfigError("Powers must be finite dBm values.");
    if (!(c.rician.b2u > 0.0) || !(c.rician.i2u >= 0.0) || !(c.rician.b2i >= 0.0))
        throw ConfigError("Rician factors must be >= 0 (and > 0 for the BS-user link).");
    for (double x : {c.chi.b2u, c.chi.i2u, c.chi.b2i})
        if (!std::isfinite(x))
            throw ConfigError("Path-loss exponents must be finite.");
    for (const auto *pl : {&c.irs, &c.user})
    {
        if (!(pl->distance_m > 0.0) || !std::isfinite(pl->distance_m))
            throw ConfigError("Placement distances must be positive.");
        if (!std::isfinite(pl->elevation_deg) || !std::isfinite(pl->azimuth_deg))
            throw ConfigError("Placement angles must be finite.");
    }
    if (c.user.elevation_deg < 0.0 || c.user.elevation_deg > 180.0)
        throw ConfigError("User elevation must lie in [0, 180] deg (user below the BS plane).");
    const double deg = kPi / 180.0;
    const Position irs = cartesian_from_spherical(c.irs.distance_m, c.irs.elevation_deg * deg, c.irs.azimuth_deg * deg);
    const Position user = cartesian_from_spherical(c.user.distance_m, c.user.elevation_deg * deg, c.user.azimuth_deg * deg);
    if (distance(irs, user) < 1e-9)
        throw ConfigError("IRS and user positions coincide.");
    if (c.trials < 1)
        throw ConfigError("trials must be >= 1.");
    validate(c.optimizer);
}

json to_json(const SystemConfig &c)
{
    return json{
        {"n_bs", c.n_bs},
        {"m_irs", c.m_irs},
        {"p_bs_dbm", c.p_bs_dbm},
        {"p_q_dbm", c.p_q_dbm},
        {"noise_dbm", c.noise_dbm},
        {"rician", {{"b2u", c.rician.b2u}, {"i2u", c.rician.i2u}, {"b2i", c.rician.b2i}}},
        {"chi", {{"b2u", c.chi.b2u}, {"i2u", c.chi.i2u}, {"b2i", c.chi.b2i}}},
        {"irs_spherical", {c.irs.distance_m, c.irs.elevation_deg, c.irs.azimuth_deg}},
        {"user_spherical", {c.user.distance_m, c.user.elevation_deg, c.user.azimuth_deg}},
        {"optimizer",
         {{"p", c.optimizer.p},
          {"kappa", c.optimizer.kappa},
          {"eps", c.optimizer.eps},
          {"n_iter_inner", c.optimizer.n_iter_inner},
          {"n_iter_outer", c.optimizer.n_iter_outer},
          {"line_search_grid", c.optimizer.line_search_grid}}},
        {"seed", c.seed},
        {"trials", c.trials},
    };
}

SystemConfig config_from_json(const json &j)
{
    check_keys(j,
               {"n_bs", "m_irs", "p_bs_dbm", "p_q_dbm", "noise_dbm", "rician", "chi", "irs_spherical",
                "user_spherical", "optimizer", "seed", "trials"},
               "config");
    SystemConfig c;
    read(j, "n_bs", c.n_bs);
    read(j, "m_irs", c.m_irs);
    read(j, "p_bs_dbm", c.p_bs_dbm);
    read(j, "p_q_dbm", c.p_q_dbm);
    read(j, "noise_dbm", c.noise_dbm);
    if (j.contains("rician"))
    {
        const json &r = j.at("rician");
        check_keys(r, {"b2u", "i2u", "b2i"}, "rician");
        read(r, "b2u", c.rician.b2u);
        read(r, "i2u", c.rician.i2u);
        read(r, "b2i", c.rician.b2i);
    }
    if (j.contains("chi"))
    {
        const json &r = j.at("chi");
        check_keys(r, {"b2u", "i2u", "b2i"}, "chi");
        read(r, "b2u", c.chi.b2u);
        read(r, "i2u", c.chi.i2u);
        read(r, "b2i", c.chi.b2i);
    }
    read_placement(j, "irs_spherical", c.irs);
    read_placement(j, "user_spherical", c.user);
    if (j.contains("optimizer"))
    {
        const json &o = j.at("optimizer");
        check_keys(o, {"p", "kappa", "eps", "n_iter_inner", "n_iter_outer", "line_search_grid"}, "optimizer");
        read(o, "p", c.optimizer.p);
        read(o, "kappa", c.optimizer.kappa);
        read(o, "eps", c.optimizer.eps);
        read(o, "n_iter_inner", c.optimizer.n_iter_inner);
        read(o, "n_iter_outer", c.optimizer.n_iter_outer);
        read(o, "line_search_grid", c.optimizer.line_search_grid);
    }
    read(j, "seed", c.seed);
    read(j, "trials", c.trials);
    validate(c);
    return c;
}

SystemConfig load_config(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("Cannot open config file '" + path + "'.");
    json j;
    try
    {
        j = json::parse(in);
    }
    catch (const json::parse_error &e)
    {
        throw ConfigError("Config file '" + path + "' is not valid JSON: " + e.what());
    }
    return config_from_json(j);
}

std::string config_hash(const SystemConfig &cfg)
{
    const std::string text = to_json(cfg).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text)
    {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace adirs
