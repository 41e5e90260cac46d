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

#include "qtap/gaussian.h"

#include <cmath>
#include <limits>
#include <string>

namespace qtap {

namespace {

void require_same_network(const FieldMode &m1, const FieldMode &m2, const char *op) {
    if (!m1.same_network(m2)) {
        throw std::invalid_argument(std::string(op) + ": modes belong to different networks");
    }
}

// Outputs of a transformation on physical, mutually independent inputs must be
// physical again; anything else means the inputs were not independent.
void check_physical_outputs(std::initializer_list<const FieldMode *> inputs,
                            std::initializer_list<const FieldMode *> outputs, const char *op) {
    for (const FieldMode *in : inputs) {
        if (!in->is_physical()) {
            return;
        }
    }
    for (const FieldMode *out : outputs) {
        if (!out->is_physical()) {
            throw InvariantError(std::string(op) + ": commutator not preserved (norm " +
                                 std::to_string(out->commutator_norm()) + "); inputs are not independent modes");
        }
    }
}

}  // namespace

Network::Network() : state_(std::make_shared<detail::NetworkState>()) {}

ModeId Network::allocate() { return ModeId{state_->vacuum_count++}; }

FieldMode::FieldMode(Network &net) : network_(net.state_) { coeffs_[net.allocate()] = VacuumCoefficient{1.0, 0.0}; }

double FieldMode::commutator_norm() const {
    double total = 0.0;
    for (const auto &[id, c] : coeffs_) {
        total += std::norm(c.ann) - std::norm(c.cre);
    }
    return total;
}

bool FieldMode::is_physical() const {
    const double rounding = 64.0 * std::numeric_limits<double>::epsilon() * scale_;
    return std::abs(commutator_norm() - 1.0) <= kPhysicalityTolerance + rounding;
}

FieldMode FieldMode::conjugated() const {
    FieldMode out;
    out.network_ = network_;
    out.displacement_ = std::conj(displacement_);
    out.scale_ = scale_;
    for (const auto &[id, c] : coeffs_) {
        out.coeffs_[id] = VacuumCoefficient{std::conj(c.cre), std::conj(c.ann)};
    }
    return out;
}

FieldMode FieldMode::scaled(Complex factor) const {
    FieldMode out = *this;
    out.displacement_ *= factor;
    out.scale_ *= std::norm(factor);
    for (auto &[id, c] : out.coeffs_) {
        c.ann *= factor;
        c.cre *= factor;
    }
    return out;
}

FieldMode FieldMode::displaced(Complex amount) const {
    FieldMode out = *this;
    out.displacement_ += amount;
    return out;
}

FieldMode FieldMode::linear_combination(Complex a, const FieldMode &other, Complex b) const {
    require_same_network(*this, other, "linear_combination");
    FieldMode out = scaled(a);
    out.displacement_ += b * other.displacement_;
    const double bound = std::abs(a) * std::sqrt(scale_) + std::abs(b) * std::sqrt(other.scale_);
    out.scale_ = bound * bound;
    for (const auto &[id, c] : other.coeffs_) {
        auto &dst = out.coeffs_[id];
        dst.ann += b * c.ann;
        dst.cre += b * c.cre;
    }
    return out;
}

QuadratureForm::QuadratureForm(const FieldMode &mode, double theta) : network_(mode.network_) {
    const Complex rot = std::polar(1.0, -theta);
    mean_ = 2.0 * (mode.displacement_ * rot).real();
    for (const auto &[id, c] : mode.coeffs_) {
        coeffs_[id] = c.ann * rot + std::conj(c.cre) * std::conj(rot);
    }
}

double QuadratureForm::variance() const {
    double total = 0.0;
    for (const auto &[id, f] : coeffs_) {
        total += std::norm(f);
    }
    return total;
}

double QuadratureForm::covariance(const QuadratureForm &other) const {
    if (!same_network(other)) {
        throw std::invalid_argument("covariance: quadratures belong to different networks");
    }
    double total = 0.0;
    // Both maps are ordered by ModeId; walk them together.
    auto it = coeffs_.begin();
    auto jt = other.coeffs_.begin();
    while (it != coeffs_.end() && jt != other.coeffs_.end()) {
        if (it->first < jt->first) {
            ++it;
        } else if (jt->first < it->first) {
            ++jt;
        } else {
            total += (it->second * std::conj(jt->second)).real();
            ++it;
            ++jt;
        }
    }
    return total;
}

Complex QuadratureForm::coefficient(ModeId id) const {
    auto it = coeffs_.find(id);
    return it == coeffs_.end() ? Complex{} : it->second;
}

QuadratureForm QuadratureForm::plus(const QuadratureForm &other, double weight) const {
    if (!same_network(other)) {
        throw std::invalid_argument("plus: quadratures belong to different networks");
    }
    QuadratureForm out = *this;
    out.mean_ += weight * other.mean_;
    for (const auto &[id, f] : other.coeffs_) {
        out.coeffs_[id] += weight * f;
    }
    return out;
}

QuadratureForm QuadratureForm::scaled(double weight) const {
    QuadratureForm out = *this;
    out.mean_ *= weight;
    for (auto &[id, f] : out.coeffs_) {
        f *= weight;
    }
    return out;
}

double amplitude_gain(double g) { return std::sqrt(1.0 + g * g); }

FieldMode fresh_vacuum(Network &net) { return FieldMode(net); }

FieldMode coherent(Network &net, Complex alpha) { return FieldMode(net).displaced(alpha); }

std::pair<FieldMode, FieldMode> beam_splitter(const FieldMode &m1, const FieldMode &m2, double transmissivity) {
    if (!(transmissivity >= 0.0 && transmissivity <= 1.0)) {
        throw std::invalid_argument("beam_splitter: transmissivity must lie in [0, 1], got " +
                                    std::to_string(transmissivity));
    }
    require_same_network(m1, m2, "beam_splitter");
    const double t = std::sqrt(transmissivity);
    const double r = std::sqrt(1.0 - transmissivity);
    std::pair<FieldMode, FieldMode> out{m1.linear_combination(t, m2, r), m2.linear_combination(t, m1, -r)};
    check_physical_outputs({&m1, &m2}, {&out.first, &out.second}, "beam_splitter");
    return out;
}

std::pair<FieldMode, FieldMode> two_mode_squeezer(const FieldMode &m1, const FieldMode &m2, double g) {
    if (!(g >= 0.0) || !std::isfinite(g)) {
        throw std::invalid_argument("two_mode_squeezer: gain parameter g must be finite and >= 0");
    }
    require_same_network(m1, m2, "two_mode_squeezer");
    const double G = amplitude_gain(g);
    std::pair<FieldMode, FieldMode> out{m1.linear_combination(G, m2.conjugated(), g),
                                        m2.linear_combination(G, m1.conjugated(), g)};
    check_physical_outputs({&m1, &m2}, {&out.first, &out.second}, "two_mode_squeezer");
    return out;
}

FieldMode single_mode_squeezer(const FieldMode &m, double nu) {
    if (!(nu >= 0.0) || !std::isfinite(nu)) {
        throw std::invalid_argument("single_mode_squeezer: nu must be finite and >= 0");
    }
    const double mu = amplitude_gain(nu);
    FieldMode out = m.linear_combination(mu, m.conjugated(), -nu);
    check_physical_outputs({&m}, {&out}, "single_mode_squeezer");
    return out;
}

FieldMode phase_shift(const FieldMode &m, double phi) { return m.scaled(std::polar(1.0, phi)); }

double mean_x(const FieldMode &m, double theta) { return QuadratureForm(m, theta).mean(); }

double variance_x(const FieldMode &m, double theta) { return QuadratureForm(m, theta).variance(); }

double covariance_x(const FieldMode &m1, double theta1, const FieldMode &m2, double theta2) {
    require_same_network(m1, m2, "covariance_x");
    return QuadratureForm(m1, theta1).covariance(QuadratureForm(m2, theta2));
}

double commutator_norm(const FieldMode &m) { return m.commutator_norm(); }

VacuumCoefficient vacuum_coefficient(const FieldMode &m, ModeId id) {
    auto it = m.coefficients().find(id);
    return it == m.coefficients().end() ? VacuumCoefficient{} : it->second;
}

}  // namespace qtap
