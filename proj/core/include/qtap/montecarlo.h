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

#ifndef QTAP_MONTECARLO_H
#define QTAP_MONTECARLO_H

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qtap/detection.h"

namespace qtap {

/// Samples are drawn in fixed blocks of this many realizations. Block b uses
/// its own std::mt19937_64 seeded through std::seed_seq from (seed, b), so the
/// estimate depends only on (samples, seed), never on the worker count.
inline constexpr std::uint64_t kMonteCarloBlockSize = 1 << 14;

/// Gate, in standard errors, outside which an analytic moment is flagged.
inline constexpr double kMonteCarloGate = 5.0;

struct MCConfig {
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 42;
    /// Worker threads; 0 means std::thread::hardware_concurrency().
    unsigned workers = 0;
};

struct Estimate {
    double value = 0.0;
    double standard_error = 0.0;
};

struct EmpiricalMoments {
    std::uint64_t samples = 0;
    std::vector<Estimate> means;
    std::vector<Estimate> variances;
    /// Symmetric; the diagonal duplicates `variances`.
    std::vector<std::vector<Estimate>> covariances;
};

/// Classical Gaussian sampling of the vacuum X-quadratures. Valid only when
/// every observable's linear form has real coefficients (commuting
/// X-observables); otherwise throws std::invalid_argument.
EmpiricalMoments mc_estimate(std::span<const Observable> observables, const MCConfig &cfg);

struct ValidationItem {
    std::string quantity;
    double analytic = 0.0;
    double estimate = 0.0;
    double standard_error = 0.0;
    /// |analytic - estimate| / standard_error.
    double deviation = 0.0;
    bool pass = false;
};

struct ValidationReport {
    std::vector<ValidationItem> items;
    bool passed = true;
};

/// Checks each analytic mean and variance (and, when given, each off-diagonal
/// covariance) against the empirical estimate at kMonteCarloGate standard
/// errors. `labels` names the observables in the report; may be empty.
ValidationReport mc_validate(std::span<const Observable> observables, std::span<const Moments> analytic,
                             const MCConfig &cfg,
                             const std::optional<std::vector<std::vector<double>>> &analytic_covariances = std::nullopt,
                             std::span<const std::string> labels = {});

/// Analytic counterparts of mc_estimate from the exact engine.
std::vector<Moments> analytic_moments(std::span<const Observable> observables);
std::vector<std::vector<double>> analytic_covariances(std::span<const Observable> observables);

}  // namespace qtap

#endif
