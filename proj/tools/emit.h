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

#ifndef QTAP_TOOLS_EMIT_H
#define QTAP_TOOLS_EMIT_H

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qtap::cli {

enum class Format { kCsv, kJson };

using Cell = std::variant<double, std::string>;

/// A result table plus the parameters that produced it.
///
/// CSV output is the table only: header row, then one row per record, numbers
/// with 12 significant digits. JSON output is one object
/// {"scheme", "parameters", "metrics"}; metrics map each column to a scalar
/// (single-row tables) or to an array.
struct Records {
    std::string scheme;
    std::vector<std::pair<std::string, Cell>> parameters;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string emit(const Records &records, Format format);
std::string format_number(double value);

}  // namespace qtap::cli

#endif
