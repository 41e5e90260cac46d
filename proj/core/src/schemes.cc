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

#include "qtap/schemes.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qtap/optimize.h"

namespace qtap {

namespace {

constexpr double kPi = std::numbers::pi;

void require(bool ok, const std::string &message) {
    if (!ok) {
        throw std::invalid_argument(message);
    }
}

void require_transmissivity(double T, const char *name = "T") {
    require(T >= 0.0 && T <= 1.0, std::string(name) + " must lie in [0, 1]");
}

void require_gain(double g, const char *name) {
    require(g >= 0.0 && std::isfinite(g), std::string(name) + " must be finite and >= 0");
}

void require_alpha(double alpha) { require(alpha != 0.0 && std::isfinite(alpha), "alpha must be finite and nonzero"); }

// The two entangled beams of a non-degenerate parametric amplifier fed with
// vacuum: a = mu a0 + nu b0^dagger, b = mu b0 + nu a0^dagger.
std::pair<FieldMode, FieldMode> correlated_source(Network &net, double nu) {
    FieldMode a0 = fresh_vacuum(net);
    FieldMode b0 = fresh_vacuum(net);
    return two_mode_squeezer(a0, b0, nu);
}

// Signal minus its optimally weighted partner-beam photocurrent.
Observable subtract_optimally(const Observable &signal, const Observable &aux) {
    const double lambda = optimal_gain(signal, aux);
    return combine({{signal, 1.0}, {aux, -lambda}});
}

double closed_form_three_way(double T, double g) {
    const double G = amplitude_gain(g);
    const double s = (G + g) * (G + g);
    return T * s / (T * s + (1.0 - T)) + s * (1.0 - T) / (2.0 * (1.0 - T) * g * g + 1.0);
}

}  // namespace

const PortMetrics &SchemeMetrics::port(std::string_view label) const {
    for (const auto &p : ports) {
        if (p.label == label) {
            return p;
        }
    }
    throw std::out_of_range("SchemeMetrics: no port named " + std::string(label));
}

std::vector<Observable> SchemeCircuit::observables() const {
    std::vector<Observable> out{reference};
    for (const auto &p : ports) {
        out.push_back(p.observable);
    }
    return out;
}

SchemeMetrics evaluate(const SchemeCircuit &circuit) {
    SchemeMetrics out;
    out.reference_snr = snr(circuit.reference);
    std::vector<Observable> outputs;
    for (const auto &p : circuit.ports) {
        outputs.push_back(p.observable);
    }
    const TransferCoefficients tc = transfer_coefficients(outputs, out.reference_snr);
    for (size_t k = 0; k < circuit.ports.size(); k++) {
        const Moments m = moments(circuit.ports[k].observable);
        out.ports.push_back(PortMetrics{circuit.ports[k].label, m.mean, m.variance, snr(circuit.ports[k].observable),
                                        tc.per_port[k]});
    }
    out.total_transfer = tc.total;
    if (circuit.correlated_source) {
        const Observable partner[] = {circuit.correlated_source->second};
        out.effective_squeezing = conditional_variance(circuit.correlated_source->first, partner).variance;
    }
    return out;
}

double squeezer_nu_for_degree(double S) {
    require(S >= 0.0 && S <= 1.0, "squeezing degree S must lie in [0, 1]");
    if (S == 0.0) {
        return 1e9;
    }
    const double root = std::sqrt(S);
    return 0.5 * (1.0 / root - root);
}

SchemeCircuit build_bs_squeezed(double T, double nu_sq, double alpha) {
    require_transmissivity(T);
    require_gain(nu_sq, "nu");
    require_alpha(alpha);
    Network net;
    FieldMode a_in = coherent(net, alpha);
    FieldMode squeezed = single_mode_squeezer(fresh_vacuum(net), nu_sq);
    auto [out1, out2] = beam_splitter(a_in, squeezed, T);
    return SchemeCircuit{"bs-squeezed",
                         observe(a_in, 0.0),
                         {{"port1", observe(out1, 0.0)}, {"port2", observe(out2, 0.0)}},
                         std::nullopt};
}

SchemeMetrics scheme_bs_squeezed(double T, double nu_sq, double alpha) {
    return evaluate(build_bs_squeezed(T, nu_sq, alpha));
}

SchemeMetrics scheme_bs_squeezed_degree(double T, double S, double alpha) {
    return scheme_bs_squeezed(T, squeezer_nu_for_degree(S), alpha);
}

SchemeCircuit build_bs_correlated(double T, double nu_src, double alpha) {
    require_transmissivity(T);
    require_gain(nu_src, "nu");
    require_alpha(alpha);
    Network net;
    auto [a, b] = correlated_source(net, nu_src);
    FieldMode a_in = coherent(net, alpha);
    auto [a1, a2] = beam_splitter(a_in, a, T);
    const Observable xb = observe(b, 0.0);
    return SchemeCircuit{"bs-correlated",
                         observe(a_in, 0.0),
                         {{"port1", subtract_optimally(observe(a1, 0.0), xb)},
                          {"port2", subtract_optimally(observe(a2, 0.0), xb)}},
                         std::pair{observe(a, 0.0), xb}};
}

SchemeMetrics scheme_bs_correlated(double T, double nu_src, double alpha) {
    return evaluate(build_bs_correlated(T, nu_src, alpha));
}

SchemeCircuit build_npa_tap(double nu_src, double g_amp, double alpha, double r) {
    require_gain(nu_src, "nu");
    require_gain(g_amp, "g");
    require_alpha(alpha);
    require(r >= 0.0 && r < 1.0, "r must lie in [0, 1)");
    Network net;
    auto [a, b] = correlated_source(net, nu_src);
    // Relative phase of the partner beam chosen so the amplifier's idler adds
    // anti-correlated noise (the low-noise quadrature of the pair).
    const FieldMode b_int = phase_shift(b, kPi);
    FieldMode a_in = a.displaced(alpha);
    if (r > 0.0) {
        FieldMode injected = coherent(net, alpha / r);
        a_in = beam_splitter(a, injected, 1.0 - r * r).first;
    }
    auto [a_out, b_out] = two_mode_squeezer(a_in, b_int, g_amp);
    const Observable x_int = observe(b_int, 0.0);
    return SchemeCircuit{"npa-tap",
                         subtract_optimally(observe(a_in, 0.0), x_int),
                         {{"a_out", observe(a_out, 0.0)}, {"b_out", observe(b_out, 0.0)}},
                         std::pair{observe(a, 0.0), x_int}};
}

SchemeMetrics scheme_npa_tap(double nu_src, double g_amp, double alpha, double r) {
    return evaluate(build_npa_tap(nu_src, g_amp, alpha, r));
}

ThreeWayCircuit build_three_way(double T, double g_amp, double nu_src, double alpha) {
    require_transmissivity(T);
    require_gain(g_amp, "g");
    require_gain(nu_src, "nu");
    require_alpha(alpha);
    Network net;
    auto [a, b] = correlated_source(net, nu_src);
    FieldMode a_in = coherent(net, alpha);
    FieldMode a_v = fresh_vacuum(net);
    const ModeId split_vacuum = a_v.coefficients().begin()->first;

    // a01 = (a_in + a_v)/sqrt2, a02 = (a_in - a_v)/sqrt2.
    auto [a01, minus_a02] = beam_splitter(a_in, a_v, 0.5);
    const FieldMode a02 = phase_shift(minus_a02, kPi);

    // BS1: c1 = sqrt(T) a01 + sqrt(1-T) a; reflected port delayed by pi.
    auto [c1, bs1_reflected] = beam_splitter(a01, a, T);
    const FieldMode a1 = phase_shift(bs1_reflected, kPi);
    // BS2: b1 = sqrt(T) b + sqrt(1-T) a02, c2 = sqrt(T) a02 - sqrt(1-T) b.
    auto [b1, c2] = beam_splitter(b, a02, T);

    FieldMode c_out = beam_splitter(c1, c2, 0.5).first;
    auto [a_out, b_out] = two_mode_squeezer(a1, b1, g_amp);

    SchemeCircuit circuit{"three-way",
                          observe(a_in, 0.0),
                          {{"c_out", observe(c_out, 0.0)}, {"a_out", observe(a_out, 0.0)}, {"b_out", observe(b_out, 0.0)}},
                          std::pair{observe(a, 0.0), observe(b, 0.0)}};
    return ThreeWayCircuit{std::move(circuit), a_in, c_out, a_out, b_out, split_vacuum};
}

ThreeWayResult scheme_three_way_general(double T, double g_amp, double nu_src, double alpha) {
    ThreeWayResult out;
    out.metrics = evaluate(build_three_way(T, g_amp, nu_src, alpha).circuit);
    out.T = T;
    out.g = g_amp;
    out.G = amplitude_gain(g_amp);
    out.nu_src = nu_src;
    out.alpha = alpha;
    out.closed_form_transfer = closed_form_three_way(T, g_amp);
    out.closed_form_t_op = g_amp / (out.G + 2.0 * g_amp);
    out.closed_form_transfer_max = 1.0 + 2.0 * g_amp / out.G;
    return out;
}

ThreeWayResult scheme_three_way(double T, double g, double alpha) { return scheme_three_way_general(T, g, g, alpha); }

SchemeCircuit build_three_way_single_tap(double T, double g, double alpha, double split, double nu_src) {
    require_transmissivity(T);
    require_transmissivity(split, "split");
    require_gain(g, "g");
    require_gain(nu_src, "nu");
    require_alpha(alpha);
    Network net;
    auto [a, b] = correlated_source(net, nu_src);
    FieldMode a_in = coherent(net, alpha);
    FieldMode v = fresh_vacuum(net);

    auto [c1, bs1_reflected] = beam_splitter(a_in, a, T);
    const FieldMode a1 = phase_shift(bs1_reflected, kPi);
    auto [b1, b2] = beam_splitter(b, v, split);
    auto [a_out, b_out] = two_mode_squeezer(a1, b1, g);

    return SchemeCircuit{"three-way-single-tap",
                         observe(a_in, 0.0),
                         {{"c_out", subtract_optimally(observe(c1, 0.0), observe(b2, 0.0))},
                          {"a_out", observe(a_out, 0.0)},
                          {"b_out", observe(b_out, 0.0)}},
                         std::pair{observe(a, 0.0), observe(b, 0.0)}};
}

SchemeMetrics scheme_three_way_single_tap(double T, double g, double alpha, double split,
                                          std::optional<double> nu_src) {
    return evaluate(build_three_way_single_tap(T, g, alpha, split, nu_src.value_or(g)));
}

QndReport qnd_report(double T, double g, double alpha) {
    require(T > 0.0 && T < 1.0, "qnd_report: T must lie in (0, 1)");
    require(g > 0.0 && std::isfinite(g), "qnd_report: g must be finite and > 0");
    const ThreeWayCircuit tw = build_three_way(T, g, g, alpha);
    const Observable &x_in = tw.circuit.reference;
    const Observable &x_c = tw.circuit.ports[0].observable;
    const Observable &x_a = tw.circuit.ports[1].observable;
    const Observable &x_b = tw.circuit.ports[2].observable;

    QndReport out;
    out.c_in_c = correlation(x_in, x_c);
    out.c_in_a = correlation(x_in, x_a);
    out.c_in_b = correlation(x_in, x_b);
    out.c_ab = correlation(x_a, x_b);
    const Observable only_a[] = {x_a};
    const Observable only_b[] = {x_b};
    const Observable both[] = {x_a, x_b};
    out.v_c_given_a = conditional_variance(x_c, only_a).variance;
    out.v_c_given_b = conditional_variance(x_c, only_b).variance;
    out.v_c_given_ab = conditional_variance(x_c, both).variance;
    out.sum_rule = out.c_in_a * out.c_in_a + out.c_in_b * out.c_in_b + out.c_in_c * out.c_in_c;
    out.sequential_ratio = out.v_c_given_ab / out.v_c_given_a;
    return out;
}

LeakageReport vacuum_leakage(double T, double g) {
    const ThreeWayCircuit tw = build_three_way(T, g, g, 1.0);
    const VacuumCoefficient in_c = vacuum_coefficient(tw.c_out, tw.split_vacuum);
    LeakageReport out;
    out.c_out_coefficient = std::sqrt(std::norm(in_c.ann) + std::norm(in_c.cre));
    out.a_out_variance = std::norm(QuadratureForm(tw.a_out, 0.0).coefficient(tw.split_vacuum));
    out.b_out_variance = std::norm(QuadratureForm(tw.b_out, 0.0).coefficient(tw.split_vacuum));
    return out;
}

TransmissivityOptimum optimize_transmissivity(double g) {
    require(g > 0.0 && std::isfinite(g), "optimize_transmissivity: g must be finite and > 0");
    const ScalarMaximum best =
        maximize_scalar([g](double T) { return scheme_three_way(T, g, 1.0).metrics.total_transfer; }, 0.0, 1.0);
    return TransmissivityOptimum{best.argmax, best.value};
}

}  // namespace qtap
