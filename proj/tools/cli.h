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

#ifndef QTAP_TOOLS_CLI_H
#define QTAP_TOOLS_CLI_H

#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "emit.h"

namespace qtap::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInvariant = 2;
inline constexpr int kExitValidation = 3;

/// Circuit parameters shared by all subcommands. Names follow the usual
/// symbols: T transmissivity, g amplifier gain parameter, nu source squeezing,
/// alpha coherent amplitude, r injection reflectivity, S squeezing degree.
struct SchemeParams {
    double T = 0.5;
    double g = 1.0;
    std::optional<double> nu;
    double alpha = 1.0;
    double r = 0.0;
    double split = 0.5;
    std::optional<double> S;
};

const std::vector<std::string> &scheme_names();

/// Parameters the named scheme depends on, in echo order.
std::vector<std::string> scheme_parameters(const std::string &scheme);

/// Flat (name, value) metrics of one scheme evaluation.
std::vector<std::pair<std::string, double>> scheme_metrics(const std::string &scheme, const SchemeParams &params);

double get_parameter(const SchemeParams &params, const std::string &name);
void set_parameter(SchemeParams &params, const std::string &name, double value);

/// Worker count for sweeps: QTAP_THREADS if set to a positive integer,
/// otherwise the machine's hardware concurrency.
unsigned thread_budget();

/// fig4a.csv (transfer vs T for each g) and fig4b.csv (optimum vs g).
void write_fig4(std::span<const double> g_list, const std::filesystem::path &out_dir);

/// Entry point; `args` excludes the program name.
int run(std::vector<std::string> args, std::ostream &out, std::ostream &err);

}  // namespace qtap::cli

#endif
