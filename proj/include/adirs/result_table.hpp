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

#ifndef ADIRS_RESULT_TABLE_HPP
#define ADIRS_RESULT_TABLE_HPP

#include "adirs/config.hpp"

#include <string>
#include <utility>
#include <vector>

namespace adirs
{

const char *version();

// Rectangular numeric table with an optional leading text column and ordered metadata
class ResultTable
{
public:
    ResultTable() = default;
    ResultTable(std::string experiment, std::vector<std::string> columns, const SystemConfig &cfg);

    void add_row(std::vector<double> values, std::string label = {});
    void set_meta(const std::string &key, const std::string &value);

    // Enables the leading text column (header name given here)
    void use_labels(std::string header) { label_header_ = std::move(header); }

    const std::string &experiment() const { return experiment_; }
    const std::vector<std::string> &columns() const { return columns_; }
    const std::vector<std::vector<double>> &rows() const { return rows_; }
    const std::vector<std::string> &labels() const { return labels_; }
    const std::vector<std::pair<std::string, std::string>> &metadata() const { return meta_; }
    std::string meta(const std::string &key) const;

    std::size_t column_index(const std::string &name) const;
    std::vector<double> column(const std::string &name) const;

    // '#' metadata lines, header row, %.17g values. No timestamp, so output is reproducible.
    std::string to_csv() const;

    // {"metadata": {...}, "rows": [{...}, ...]}; the metadata carries a UTC timestamp
    std::string to_json() const;

private:
    std::string experiment_;
    std::vector<std::string> columns_;
    std::vector<std::vector<double>> rows_;
    std::string label_header_;
    std::vector<std::string> labels_;
    std::vector<std::pair<std::string, std::string>> meta_;
};

std::string format_double(double x);

} // namespace adirs

#endif
