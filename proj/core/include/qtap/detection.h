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

#ifndef QTAP_DETECTION_H
#define QTAP_DETECTION_H

#include <span>
#include <vector>

#include "qtap/gaussian.h"

namespace qtap {

/// One homodyne readout: quadrature of `mode` at phase `theta`, scaled by an
/// electronic gain `weight`.
struct HomodyneTerm {
    FieldMode mode;
    double theta;
    double weight;
};

/// A classical post-detection combination of homodyne photocurrents, e.g.
/// X_{a1} - lambda X_b. Immutable; the combined linear form is resolved once
/// at construction.
class Observable {
   public:
    explicit Observable(std::vector<HomodyneTerm> terms);

    const std::vector<HomodyneTerm> &terms() const { return terms_; }
    const QuadratureForm &linear_form() const { return form_; }
    bool same_network(const Observable &other) const { return form_.same_network(other.form_); }

   private:
    std::vector<HomodyneTerm> terms_;
    QuadratureForm form_;
};

struct WeightedObservable {
    Observable observable;
    double weight;
};

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};

struct ConditionalVariance {
    double variance = 0.0;
    std::vector<double> gains;
    /// Readout covariance matrix was singular (|det| < 1e-12); `gains` is the
    /// minimum-norm solution.
    bool degenerate = false;
};

struct TransferCoefficients {
    std::vector<double> per_port;
    double total = 0.0;
};

Observable observe(const FieldMode &m, double theta);
Observable combine(std::span<const WeightedObservable> parts);
Observable combine(std::initializer_list<WeightedObservable> parts);

Moments moments(const Observable &o);
double covariance(const Observable &o1, const Observable &o2);

/// mean^2 / variance. Throws std::domain_error for a noiseless observable with
/// a nonzero mean; returns 0 for a noiseless zero-mean observable.
double snr(const Observable &o);

/// Gain lambda minimizing Var(signal - lambda * aux).
double optimal_gain(const Observable &signal, const Observable &aux);

/// Residual variance of `target` after optimal linear subtraction of all
/// `readouts`. An empty readout list returns the plain variance.
ConditionalVariance conditional_variance(const Observable &target, std::span<const Observable> readouts);

double correlation(const Observable &o1, const Observable &o2);

TransferCoefficients transfer_coefficients(std::span<const Observable> outputs, double reference_snr);

}  // namespace qtap

#endif
