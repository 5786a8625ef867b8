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

#include "adirs/result_table.hpp"
#include "adirs/errors.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <nlohmann/json.hpp>

#ifndef ADIRS_VERSION
#define ADIRS_VERSION "0.0.0"
#endif

namespace adirs
{

const char *version()
{
    return ADIRS_VERSION;
}

std::string format_double(double x)
{
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

ResultTable::ResultTable(std::string experiment, std::vector<std::string> columns, const SystemConfig &cfg)
    : experiment_(std::move(experiment)), columns_(std::move(columns))
{
    set_meta("version", version());
    set_meta("experiment", experiment_);
    set_meta("config_hash", config_hash(cfg));
    set_meta("seed", std::to_string(cfg.seed));
}

void ResultTable::add_row(std::vector<double> values, std::string label)
{
    if (values.size() != columns_.size())
        throw ContractViolation("Row width does not match the table header.");
    rows_.push_back(std::move(values));
    labels_.push_back(std::move(label));
}

void ResultTable::set_meta(const std::string &key, const std::string &value)
{
    for (auto &kv : meta_)
        if (kv.first == key)
        {
            kv.second = value;
            return;
        }
    meta_.emplace_back(key, value);
}

std::string ResultTable::meta(const std::string &key) const
{
    for (const auto &kv : meta_)
        if (kv.first == key)
            return kv.second;
    return {};
}

std::size_t ResultTable::column_index(const std::string &name) const
{
    for (std::size_t c = 0; c < columns_.size(); ++c)
        if (columns_[c] == name)
            return c;
    throw ContractViolation("No column named '" + name + "'.");
}

std::vector<double> ResultTable::column(const std::string &name) const
{
    const std::size_t c = column_index(name);
    std::vector<double> out;
    out.reserve(rows_.size());
    for (const auto &r : rows_)
        out.push_back(r[c]);
    return out;
}

std::string ResultTable::to_csv() const
{
    std::string out;
    for (const auto &[k, v] : meta_)
        out += "# " + k + ": " + v + "\n";
    bool first = true;
    if (!label_header_.empty())
    {
        out += label_header_;
        first = false;
    }
    for (const auto &c : columns_)
    {
        out += first ? "" : ",";
        out += c;
        first = false;
    }
    out += "\n";
    for (std::size_t r = 0; r < rows_.size(); ++r)
    {
        first = true;
        if (!label_header_.empty())
        {
            out += labels_[r];
            first = false;
        }
        for (double v : rows_[r])
        {
            out += first ? "" : ",";
            out += format_double(v);
            first = false;
        }
        out += "\n";
    }
    return out;
}

std::string ResultTable::to_json() const
{
    nlohmann::ordered_json doc;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto &[k, v] : meta_)
        meta[k] = v;
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);
    meta["timestamp"] = stamp;
    doc["metadata"] = meta;

    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t r = 0; r < rows_.size(); ++r)
    {
        nlohmann::ordered_json row;
        if (!label_header_.empty())
            row[label_header_] = labels_[r];
        for (std::size_t c = 0; c < columns_.size(); ++c)
        {
            const double v = rows_[r][c];
            if (std::isfinite(v))
                row[columns_[c]] = v;
            else
                row[columns_[c]] = nullptr;
        }
        rows.push_back(row);
    }
    doc["rows"] = rows;
    return doc.dump(2) + "\n";
}

} // namespace adirs
