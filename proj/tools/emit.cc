// Copyright 2026 The QTap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "emit.h"

#include <stdexcept>

#include <fmt/format.h>

#include <nlohmann/json.hpp>

namespace qtap::cli {

namespace {

std::string csv_cell(const Cell &cell) {
    if (const double *v = std::get_if<double>(&cell)) {
        return format_number(*v);
    }
    return std::get<std::string>(cell);
}

nlohmann::ordered_json json_cell(const Cell &cell) {
    if (const double *v = std::get_if<double>(&cell)) {
        return *v;
    }
    return std::get<std::string>(cell);
}

}  // namespace

std::string format_number(double value) { return fmt::format("{:.12g}", value); }

std::string emit(const Records &records, Format format) {
    for (const auto &row : records.rows) {
        if (row.size() != records.columns.size()) {
            throw std::logic_error("emit: row width does not match header");
        }
    }
    if (format == Format::kCsv) {
        std::string out;
        for (size_t c = 0; c < records.columns.size(); c++) {
            out += (c ? "," : "") + records.columns[c];
        }
        out += '\n';
        for (const auto &row : records.rows) {
            for (size_t c = 0; c < row.size(); c++) {
                out += (c ? "," : "") + csv_cell(row[c]);
            }
            out += '\n';
        }
        return out;
    }

    nlohmann::ordered_json doc;
    doc["scheme"] = records.scheme;
    doc["parameters"] = nlohmann::ordered_json::object();
    for (const auto &[name, value] : records.parameters) {
        doc["parameters"][name] = json_cell(value);
    }
    auto &metrics = doc["metrics"] = nlohmann::ordered_json::object();
    for (size_t c = 0; c < records.columns.size(); c++) {
        if (records.rows.size() == 1) {
            metrics[records.columns[c]] = json_cell(records.rows[0][c]);
        } else {
            auto column = nlohmann::ordered_json::array();
            for (const auto &row : records.rows) {
                column.push_back(json_cell(row[c]));
            }
            metrics[records.columns[c]] = std::move(column);
        }
    }
    return doc.dump(2) + "\n";
}

}  // namespace qtap::cli
