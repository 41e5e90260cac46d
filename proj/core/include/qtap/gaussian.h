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

#ifndef QTAP_GAUSSIAN_H
#define QTAP_GAUSSIAN_H

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <utility>

namespace qtap {

using Complex = std::complex<double>;

/// Absolute tolerance for physicality checks (commutator norm of a mode). The
/// check also admits a rounding budget proportional to the largest coefficient
/// scale met while building the mode, which matters only at extreme gains.
inline constexpr double kPhysicalityTolerance = 1e-9;

/// Raised when a transformation produces an unphysical mode, i.e. the bosonic
/// commutator is not preserved.
class InvariantError : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

/// Identifies one independent vacuum mode within a Network.
struct ModeId {
    std::uint32_t index = 0;
    auto operator<=>(const ModeId &) const = default;
};

namespace detail {
struct NetworkState {
    std::uint32_t vacuum_count = 0;
};
}  // namespace detail

/// Owns the basis of independent vacuum modes that FieldModes are expanded in.
///
/// A Network is move-only. Modes keep a shared reference to the network's
/// identity so they stay valid (and comparable) after the Network is gone.
class Network {
   public:
    Network();
    Network(const Network &) = delete;
    Network &operator=(const Network &) = delete;
    Network(Network &&) noexcept = default;
    Network &operator=(Network &&) noexcept = default;

    std::uint32_t vacuum_count() const { return state_->vacuum_count; }
    ModeId allocate();

   private:
    friend class FieldMode;
    std::shared_ptr<detail::NetworkState> state_;
};

/// Weights of a_i and a_i^dagger in a mode's expansion.
struct VacuumCoefficient {
    Complex ann{0.0, 0.0};
    Complex cre{0.0, 0.0};
};

/// An optical mode written as
///
///     m = displacement + sum_i (ann_i * a_i + cre_i * a_i^dagger)
///
/// over the independent vacuum modes a_i of one Network. Every Gaussian element
/// used here acts linearly on this representation, so moments are exact.
class FieldMode {
   public:
    using Coefficients = std::map<ModeId, VacuumCoefficient>;

    /// A fresh vacuum mode on `net` (allocates a new ModeId).
    explicit FieldMode(Network &net);

    Complex displacement() const { return displacement_; }
    const Coefficients &coefficients() const { return coeffs_; }
    bool same_network(const FieldMode &other) const { return network_ == other.network_; }

    /// sum_i (|ann_i|^2 - |cre_i|^2); equals 1 for a physical mode.
    double commutator_norm() const;
    bool is_physical() const;

    /// The Hermitian conjugate m^dagger, reinterpreted as an annihilation-type
    /// expression: displacement conjugated, ann/cre roles swapped and conjugated.
    FieldMode conjugated() const;

    /// Multiplies the whole expression by `factor`. Not a physical operation
    /// unless |factor| = 1.
    FieldMode scaled(Complex factor) const;

    /// Adds a classical amplitude to the mode.
    FieldMode displaced(Complex amount) const;

    /// a*this + b*other. Throws std::invalid_argument on mismatched networks.
    FieldMode linear_combination(Complex a, const FieldMode &other, Complex b) const;

   private:
    FieldMode() = default;
    friend class QuadratureForm;

    std::shared_ptr<const detail::NetworkState> network_;
    Complex displacement_{0.0, 0.0};
    Coefficients coeffs_;
    // Upper bound on sum_i (|ann_i|^2 + |cre_i|^2) before any cancellation in
    // the operations that built this mode; sets the rounding error budget of
    // the commutator norm.
    double scale_ = 1.0;
};

/// Real-valued quadrature observable expanded over the vacuum basis:
///
///     X = mean + sum_i (f_i a_i + conj(f_i) a_i^dagger)
///
/// so that <X> = mean, Var X = sum |f_i|^2 and the symmetrized covariance of two
/// forms is Re sum f_i conj(g_i).
class QuadratureForm {
   public:
    using Coefficients = std::map<ModeId, Complex>;

    /// Quadrature m e^{-i theta} + m^dagger e^{i theta} of `mode`.
    QuadratureForm(const FieldMode &mode, double theta);

    double mean() const { return mean_; }
    const Coefficients &coefficients() const { return coeffs_; }
    bool same_network(const QuadratureForm &other) const { return network_ == other.network_; }

    double variance() const;
    double covariance(const QuadratureForm &other) const;
    Complex coefficient(ModeId id) const;

    /// this + weight * other.
    QuadratureForm plus(const QuadratureForm &other, double weight) const;
    QuadratureForm scaled(double weight) const;

   private:
    std::shared_ptr<const detail::NetworkState> network_;
    double mean_ = 0.0;
    Coefficients coeffs_;
};

FieldMode fresh_vacuum(Network &net);
FieldMode coherent(Network &net, Complex alpha);

/// out1 = sqrt(T) m1 + sqrt(1-T) m2,  out2 = sqrt(T) m2 - sqrt(1-T) m1.
std::pair<FieldMode, FieldMode> beam_splitter(const FieldMode &m1, const FieldMode &m2, double transmissivity);

/// Non-degenerate parametric amplifier with G = sqrt(1 + g^2):
/// out1 = G m1 + g m2^dagger,  out2 = G m2 + g m1^dagger.
std::pair<FieldMode, FieldMode> two_mode_squeezer(const FieldMode &m1, const FieldMode &m2, double g);

/// out = mu m - nu m^dagger with mu = sqrt(1 + nu^2); squeezes the theta = 0
/// quadrature to (mu - nu)^2 for a vacuum input.
FieldMode single_mode_squeezer(const FieldMode &m, double nu);

/// m -> e^{i phi} m.
FieldMode phase_shift(const FieldMode &m, double phi);

double mean_x(const FieldMode &m, double theta);
double variance_x(const FieldMode &m, double theta);
double covariance_x(const FieldMode &m1, double theta1, const FieldMode &m2, double theta2);
double commutator_norm(const FieldMode &m);
VacuumCoefficient vacuum_coefficient(const FieldMode &m, ModeId id);

/// Amplitude gain sqrt(1 + g^2) paired with g.
double amplitude_gain(double g);

}  // namespace qtap

#endif
