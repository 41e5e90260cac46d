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

#include "qtap/detection.h"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace qtap {

namespace {

QuadratureForm resolve(const std::vector<HomodyneTerm> &terms) {
    if (terms.empty()) {
        throw std::invalid_argument("Observable: needs at least one homodyne term");
    }
    QuadratureForm form = QuadratureForm(terms.front().mode, terms.front().theta).scaled(terms.front().weight);
    for (size_t k = 1; k < terms.size(); k++) {
        const auto &t = terms[k];
        if (!t.mode.same_network(terms.front().mode)) {
            throw std::invalid_argument("Observable: terms belong to different networks");
        }
        form = form.plus(QuadratureForm(t.mode, t.theta), t.weight);
    }
    return form;
}

void require_same_network(const Observable &a, const Observable &b, const char *op) {
    if (!a.same_network(b)) {
        throw std::invalid_argument(std::string(op) + ": observables belong to different networks");
    }
}

}  // namespace

Observable::Observable(std::vector<HomodyneTerm> terms) : terms_(std::move(terms)), form_(resolve(terms_)) {}

Observable observe(const FieldMode &m, double theta) { return Observable({HomodyneTerm{m, theta, 1.0}}); }

Observable combine(std::span<const WeightedObservable> parts) {
    std::vector<HomodyneTerm> terms;
    for (const auto &part : parts) {
        if (!part.observable.same_network(parts.front().observable)) {
            throw std::invalid_argument("combine: observables belong to different networks");
        }
        for (const auto &t : part.observable.terms()) {
            terms.push_back(HomodyneTerm{t.mode, t.theta, t.weight * part.weight});
        }
    }
    return Observable(std::move(terms));
}

Observable combine(std::initializer_list<WeightedObservable> parts) {
    return combine(std::span<const WeightedObservable>(parts.begin(), parts.size()));
}

Moments moments(const Observable &o) { return Moments{o.linear_form().mean(), o.linear_form().variance()}; }

double covariance(const Observable &o1, const Observable &o2) {
    require_same_network(o1, o2, "covariance");
    return o1.linear_form().covariance(o2.linear_form());
}

double snr(const Observable &o) {
    const Moments m = moments(o);
    if (m.variance <= 0.0) {
        if (m.mean != 0.0) {
            throw std::domain_error("snr: observable is noiseless with nonzero mean (infinite SNR)");
        }
        return 0.0;
    }
    return m.mean * m.mean / m.variance;
}

double optimal_gain(const Observable &signal, const Observable &aux) {
    require_same_network(signal, aux, "optimal_gain");
    const double var_aux = aux.linear_form().variance();
    if (var_aux <= 0.0) {
        throw std::domain_error("optimal_gain: auxiliary observable has zero variance");
    }
    return covariance(signal, aux) / var_aux;
}

ConditionalVariance conditional_variance(const Observable &target, std::span<const Observable> readouts) {
    ConditionalVariance out;
    const auto n = static_cast<Eigen::Index>(readouts.size());
    if (n == 0) {
        out.variance = target.linear_form().variance();
        return out;
    }
    Eigen::MatrixXd cov(n, n);
    Eigen::VectorXd rhs(n);
    for (Eigen::Index i = 0; i < n; i++) {
        require_same_network(target, readouts[i], "conditional_variance");
        rhs(i) = covariance(target, readouts[i]);
        for (Eigen::Index j = 0; j <= i; j++) {
            cov(i, j) = cov(j, i) = covariance(readouts[i], readouts[j]);
        }
    }
    out.degenerate = std::abs(cov.determinant()) < 1e-12;
    const Eigen::VectorXd gains = cov.completeOrthogonalDecomposition().solve(rhs);
    out.gains.assign(gains.data(), gains.data() + n);

    // Evaluate the residual directly so the result is a sum of squares.
    QuadratureForm residual = target.linear_form();
    for (Eigen::Index i = 0; i < n; i++) {
        residual = residual.plus(readouts[i].linear_form(), -gains(i));
    }
    out.variance = residual.variance();
    return out;
}

double correlation(const Observable &o1, const Observable &o2) {
    require_same_network(o1, o2, "correlation");
    const double v1 = o1.linear_form().variance();
    const double v2 = o2.linear_form().variance();
    if (v1 <= 0.0 || v2 <= 0.0) {
        throw std::domain_error("correlation: undefined for a zero-variance observable");
    }
    return covariance(o1, o2) / std::sqrt(v1 * v2);
}

TransferCoefficients transfer_coefficients(std::span<const Observable> outputs, double reference_snr) {
    if (!(reference_snr > 0.0)) {
        throw std::invalid_argument("transfer_coefficients: reference SNR must be positive");
    }
    TransferCoefficients out;
    for (const auto &o : outputs) {
        out.per_port.push_back(snr(o) / reference_snr);
        out.total += out.per_port.back();
    }
    return out;
}

}  // namespace qtap
