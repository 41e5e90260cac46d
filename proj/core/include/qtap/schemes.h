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

#ifndef QTAP_SCHEMES_H
#define QTAP_SCHEMES_H

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qtap/detection.h"
#include "qtap/gaussian.h"

namespace qtap {

struct PortMetrics {
    std::string label;
    double mean = 0.0;
    double variance = 0.0;
    double snr = 0.0;
    double transfer = 0.0;
};

/// Per-port signal, noise, SNR and transfer coefficient of one tapping circuit.
struct SchemeMetrics {
    std::vector<PortMetrics> ports;
    double reference_snr = 0.0;
    double total_transfer = 0.0;
    /// Residual noise 1/(mu^2 + nu^2) of the correlated source after optimal
    /// subtraction of its partner beam; set only when such a source is used.
    std::optional<double> effective_squeezing;

    const PortMetrics &port(std::string_view label) const;
};

struct NamedObservable {
    std::string label;
    Observable observable;
};

/// The detected observables of a built circuit. `reference` is what defines
/// the input SNR; `ports` are the tapped outputs.
struct SchemeCircuit {
    std::string name;
    Observable reference;
    std::vector<NamedObservable> ports;
    /// Homodyne readouts (signal beam, partner beam) of the correlated source.
    std::optional<std::pair<Observable, Observable>> correlated_source;

    /// Reference followed by every port, in order.
    std::vector<Observable> observables() const;
};

SchemeMetrics evaluate(const SchemeCircuit &circuit);

/// Squeezing parameter nu whose single-mode squeezed vacuum has X-noise S.
/// S = 0 (infinite squeezing) maps to nu = 1e9, where (mu - nu)^2 underflows
/// the double-precision resolution of mu and the noise evaluates to exactly 0.
double squeezer_nu_for_degree(double S);

// Beam-splitter tap with a squeezed vacuum in the unused port.
SchemeCircuit build_bs_squeezed(double T, double nu_sq, double alpha);
SchemeMetrics scheme_bs_squeezed(double T, double nu_sq, double alpha);
SchemeMetrics scheme_bs_squeezed_degree(double T, double S, double alpha);

// Beam-splitter tap with one beam of a two-mode squeezed source in the unused
// port; the partner beam is subtracted electronically from each output.
SchemeCircuit build_bs_correlated(double T, double nu_src, double alpha);
SchemeMetrics scheme_bs_correlated(double T, double nu_src, double alpha);

// Non-degenerate parametric amplifier fed by a correlated pair, with the
// signal injected into the amplifier's signal beam. `r` is the amplitude
// reflectivity of the injection splitter; r = 0 injects a pure displacement.
SchemeCircuit build_npa_tap(double nu_src, double g_amp, double alpha, double r);
SchemeMetrics scheme_npa_tap(double nu_src, double g_amp, double alpha, double r = 0.0);

/// The two-tap three-way splitter with its internal modes exposed.
struct ThreeWayCircuit {
    SchemeCircuit circuit;
    FieldMode a_in;
    FieldMode c_out;
    FieldMode a_out;
    FieldMode b_out;
    /// Vacuum entering the 50:50 input splitter.
    ModeId split_vacuum;
};

struct ThreeWayResult {
    SchemeMetrics metrics;
    double T = 0.0;
    double g = 0.0;
    double G = 0.0;
    double nu_src = 0.0;
    double alpha = 0.0;
    // Closed-form values for the matched amplifier (G = mu, g = nu), carried
    // for cross-checking against the propagated metrics.
    double closed_form_transfer = 0.0;
    double closed_form_t_op = 0.0;
    double closed_form_transfer_max = 0.0;
};

ThreeWayCircuit build_three_way(double T, double g_amp, double nu_src, double alpha);
/// Amplifier gain matched to the source (nu = g).
ThreeWayResult scheme_three_way(double T, double g, double alpha);
/// Independent amplifier gain and source squeezing, for studying mismatch.
ThreeWayResult scheme_three_way_general(double T, double g_amp, double nu_src, double alpha);

// Single-tap variant: BS1 mixes the input with source beam a; BS2 (with
// transmissivity `split`) mixes source beam b with vacuum, sending one output
// into the amplifier's idler port and the other to the electronic subtraction
// arm of the transmitted port. Amplifier outputs are read directly.
SchemeCircuit build_three_way_single_tap(double T, double g, double alpha, double split, double nu_src);
SchemeMetrics scheme_three_way_single_tap(double T, double g, double alpha, double split = 0.5,
                                          std::optional<double> nu_src = std::nullopt);

struct QndReport {
    double c_in_c = 0.0;
    double c_in_a = 0.0;
    double c_in_b = 0.0;
    double c_ab = 0.0;
    double v_c_given_a = 0.0;
    double v_c_given_b = 0.0;
    double v_c_given_ab = 0.0;
    double sum_rule = 0.0;
    double sequential_ratio = 0.0;
};

QndReport qnd_report(double T, double g, double alpha = 1.0);

struct LeakageReport {
    /// sqrt(|ann|^2 + |cre|^2) of the split vacuum in c_out.
    double c_out_coefficient = 0.0;
    /// Variance contributed by the split vacuum to X_{a_out} and X_{b_out}.
    double a_out_variance = 0.0;
    double b_out_variance = 0.0;
};

LeakageReport vacuum_leakage(double T, double g);

struct TransmissivityOptimum {
    double t_op = 0.0;
    double transfer_max = 0.0;
};

/// Numerically maximizes the three-way total transfer over T in [0, 1].
TransmissivityOptimum optimize_transmissivity(double g);

}  // namespace qtap

#endif
