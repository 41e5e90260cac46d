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

#include "gtest/gtest.h"
#include "oracle.h"

using namespace qtap;

namespace {

double closed_t3(double T, double g) {
    const double G = std::sqrt(1 + g * g);
    const double s = (G + g) * (G + g);
    return T * s / (T * s + (1 - T)) + s * (1 - T) / (2 * (1 - T) * g * g + 1);
}

double closed_bs(double T, double S) { return T / (T + (1 - T) * S) + (1 - T) / (T * S + 1 - T); }

}  // namespace

TEST(schemes, bs_squeezed_examples) {
    EXPECT_NEAR(scheme_bs_squeezed_degree(0.5, 1.0, 1.0).total_transfer, 1.0, 1e-15);
    EXPECT_DOUBLE_EQ(scheme_bs_squeezed_degree(0.5, 0.0, 1.0).total_transfer, 2.0);
    EXPECT_NEAR(scheme_bs_squeezed_degree(0.5, 0.5, 1.0).total_transfer, 4.0 / 3.0, 1e-12);

    const SchemeMetrics m = scheme_bs_squeezed(0.3, 0.8, 1.7);
    const double mu = std::sqrt(1 + 0.64);
    const double S = (mu - 0.8) * (mu - 0.8);
    EXPECT_NEAR(m.port("port1").snr, 0.3 * 4 * 1.7 * 1.7 / (0.3 + 0.7 * S), 1e-12);
    EXPECT_NEAR(m.port("port2").snr, 0.7 * 4 * 1.7 * 1.7 / (0.7 + 0.3 * S), 1e-12);
    EXPECT_NEAR(m.total_transfer, closed_bs(0.3, S), 1e-12);
    EXPECT_FALSE(m.effective_squeezing.has_value());

    EXPECT_THROW(scheme_bs_squeezed(1.2, 0.5, 1.0), std::invalid_argument);
    EXPECT_THROW(scheme_bs_squeezed(0.5, -0.5, 1.0), std::invalid_argument);
    EXPECT_THROW(scheme_bs_squeezed_degree(0.5, 1.5, 1.0), std::invalid_argument);
    EXPECT_THROW(scheme_bs_squeezed(0.5, 0.5, 0.0), std::invalid_argument);
}

TEST(schemes, bs_correlated_examples) {
    const SchemeMetrics m = scheme_bs_correlated(0.5, 1.0, 1.0);
    ASSERT_TRUE(m.effective_squeezing.has_value());
    EXPECT_NEAR(*m.effective_squeezing, 1.0 / 3.0, 1e-14);
    for (double T : {0.0, 0.2, 0.5, 1.0}) {
        EXPECT_NEAR(scheme_bs_correlated(T, 0.0, 1.0).total_transfer, 1.0, 1e-14);
    }
    EXPECT_NEAR(m.port("port1").variance, 0.5 + 0.5 / 3.0, 1e-14);
    EXPECT_THROW(scheme_bs_correlated(-0.1, 1.0, 1.0), std::invalid_argument);
}

TEST(schemes, bs_correlated_equals_squeezed) {
    for (double T : {0.05, 0.3, 0.5, 0.75, 0.95}) {
        for (double nu : {0.2, 0.7, 1.0, 1.8}) {
            const double mu = std::sqrt(1 + nu * nu);
            const double S = 1 / (mu * mu + nu * nu);
            const SchemeMetrics corr = scheme_bs_correlated(T, nu, 1.0);
            const SchemeMetrics sq = scheme_bs_squeezed_degree(T, S, 1.0);
            EXPECT_NEAR(corr.total_transfer, sq.total_transfer, 1e-12);
            for (size_t p = 0; p < 2; p++) {
                EXPECT_NEAR(corr.ports[p].snr, sq.ports[p].snr, 1e-12);
                EXPECT_NEAR(corr.ports[p].variance, sq.ports[p].variance, 1e-12);
            }
        }
    }
}

TEST(schemes, npa_tap_matched_gain) {
    // mu = sqrt2, nu = 1: G = mu^2 + nu^2 = 3, g = sqrt(8).
    const SchemeMetrics m = scheme_npa_tap(1.0, std::sqrt(8.0), 1.0);
    EXPECT_NEAR(m.reference_snr, 12.0, 1e-12);
    EXPECT_NEAR(m.port("a_out").snr, 12.0, 1e-12);
    EXPECT_NEAR(m.total_transfer, 1.0 + 8.0 / 9.0, 1e-12);
    EXPECT_NEAR(m.port("b_out").snr, 8.0 * 4.0 / 3.0, 1e-12);
}

TEST(schemes, npa_tap_idler_noise_general_gain) {
    for (double nu : {0.3, 1.0, 2.0}) {
        for (double g : {0.0, 0.5, 1.5, 4.0}) {
            const double mu = std::sqrt(1 + nu * nu);
            const double G = std::sqrt(1 + g * g);
            const SchemeMetrics m = scheme_npa_tap(nu, g, 1.0);
            const double expected = (G * G + g * g) * (mu * mu + nu * nu) - 4 * G * g * mu * nu;
            EXPECT_NEAR(m.port("b_out").variance, expected, 1e-12 * expected);
            EXPECT_NEAR(m.port("a_out").variance, expected, 1e-12 * expected);
            const double closed = (G * G + g * g) / (mu * mu + nu * nu) / expected;
            EXPECT_NEAR(m.total_transfer, closed, 1e-12);
        }
    }
}

TEST(schemes, npa_tap_without_gain) {
    // No amplification: idler carries no signal; total = 1/(mu^2+nu^2)^2.
    const SchemeMetrics m = scheme_npa_tap(1.0, 0.0, 1.0);
    EXPECT_DOUBLE_EQ(m.port("b_out").snr, 0.0);
    EXPECT_NEAR(m.total_transfer, 1.0 / 9.0, 1e-14);
    EXPECT_LE(m.total_transfer, 1.0);
}

TEST(schemes, npa_tap_finite_reflectivity) {
    // A weak injection splitter approaches the displacement limit.
    const double r0 = scheme_npa_tap(1.0, 1.0, 1.0, 0.0).total_transfer;
    const double r_small = scheme_npa_tap(1.0, 1.0, 1.0, 1e-3).total_transfer;
    const double r_large = scheme_npa_tap(1.0, 1.0, 1.0, 0.5).total_transfer;
    EXPECT_NEAR(r_small, r0, 1e-5);
    EXPECT_NE(r_large, r0);
    EXPECT_THROW(scheme_npa_tap(1.0, 1.0, 1.0, 1.0), std::invalid_argument);
    EXPECT_THROW(scheme_npa_tap(1.0, -1.0, 1.0), std::invalid_argument);
}

TEST(schemes, three_way_matches_closed_form_and_oracle) {
    for (double T = 0.05; T < 1.0; T += 0.1) {
        for (double g : {0.25, 1.0, 3.0, 10.0}) {
            const ThreeWayResult r = scheme_three_way(T, g, 1.0);
            EXPECT_NEAR(r.metrics.total_transfer, closed_t3(T, g), 1e-12);
            EXPECT_NEAR(r.metrics.port("a_out").snr, r.metrics.port("b_out").snr, 1e-12);

            const oracle::ThreeWay ref = oracle::three_way(T, g, g, 1.0);
            EXPECT_NEAR(r.metrics.port("c_out").variance, oracle::var(ref.c_out), 1e-12);
            EXPECT_NEAR(r.metrics.port("a_out").variance, oracle::var(ref.a_out), 1e-10);
            EXPECT_NEAR(r.metrics.port("a_out").mean, ref.a_out.mean, 1e-12);

            const double G = r.G;
            EXPECT_NEAR(r.metrics.port("c_out").mean, 2 * std::sqrt(T), 1e-14);
            EXPECT_NEAR(r.metrics.port("a_out").mean, (G + g) * std::sqrt(2 * (1 - T)), 1e-12);
            EXPECT_NEAR(r.metrics.port("c_out").variance, T + (1 - T) * (G - g) * (G - g), 1e-12);
            EXPECT_NEAR(r.metrics.port("a_out").variance, (1 - T) * (G * G + g * g) + T, 1e-10);
        }
    }
}

TEST(schemes, three_way_mismatched_noise) {
    for (double g : {0.5, 2.0}) {
        for (double nu : {0.0, 1.0, 3.0}) {
            const double T = 0.4;
            const double G = std::sqrt(1 + g * g);
            const double mu = std::sqrt(1 + nu * nu);
            const ThreeWayResult r = scheme_three_way_general(T, g, nu, 1.0);
            const double expected =
                (1 - T) * (G * G + g * g) + T * (G * G + g * g) * (mu * mu + nu * nu) - 4 * T * G * g * mu * nu;
            EXPECT_NEAR(r.metrics.port("a_out").variance, expected, 1e-12 * expected);
            EXPECT_NEAR(r.metrics.port("b_out").variance, expected, 1e-12 * expected);
        }
    }
}

TEST(schemes, three_way_examples) {
    const ThreeWayResult high = scheme_three_way(0.9, 10.0, 1.0);
    const double approx = 3 - 1 / ((1 - 0.9) * 100);
    EXPECT_NEAR(high.metrics.total_transfer, approx, 0.02 * approx);

    const ThreeWayResult two_way = scheme_three_way(0.0, 1.0, 1.0);
    EXPECT_DOUBLE_EQ(two_way.metrics.port("c_out").snr, 0.0);

    const double t_op = 1 / (std::sqrt(2.0) + 2);
    const ThreeWayResult best = scheme_three_way(t_op, 1.0, 1.0);
    EXPECT_NEAR(t_op, 0.292893, 1e-6);
    EXPECT_NEAR(best.metrics.total_transfer, 1 + std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(best.closed_form_t_op, t_op, 1e-15);
    EXPECT_NEAR(best.closed_form_transfer_max, 1 + std::sqrt(2.0), 1e-15);

    EXPECT_THROW(scheme_three_way(1.5, 1.0, 1.0), std::invalid_argument);
    EXPECT_THROW(scheme_three_way(0.5, -1.0, 1.0), std::invalid_argument);
}

TEST(schemes, alpha_invariance) {
    for (double alpha : {0.5, 1.0, 3.0}) {
        const ThreeWayResult r = scheme_three_way(0.4, 2.0, alpha);
        const ThreeWayResult ref = scheme_three_way(0.4, 2.0, 1.0);
        EXPECT_NEAR(r.metrics.total_transfer, ref.metrics.total_transfer, 1e-12);
        EXPECT_NEAR(r.metrics.port("a_out").snr, ref.metrics.port("a_out").snr * alpha * alpha, 1e-10 * alpha * alpha);
        const QndReport q = qnd_report(0.4, 2.0, alpha);
        const QndReport q1 = qnd_report(0.4, 2.0, 1.0);
        EXPECT_NEAR(q.c_in_c, q1.c_in_c, 1e-12);
        EXPECT_NEAR(q.v_c_given_ab, q1.v_c_given_ab, 1e-12);
        EXPECT_NEAR(scheme_npa_tap(1.0, 2.0, alpha).total_transfer, scheme_npa_tap(1.0, 2.0, 1.0).total_transfer,
                    1e-12);
        EXPECT_NEAR(scheme_bs_correlated(0.3, 1.0, alpha).total_transfer,
                    scheme_bs_correlated(0.3, 1.0, 1.0).total_transfer, 1e-12);
    }
}

TEST(schemes, single_tap_examples) {
    for (double T : {0.1, 0.5, 0.9}) {
        EXPECT_LE(scheme_three_way_single_tap(T, 0.0, 1.0).total_transfer, 1.0 + 1e-12);
    }
    for (double g : {0.0, 1.0, 5.0}) {
        EXPECT_NEAR(scheme_three_way_single_tap(1.0, g, 1.0).total_transfer, 1.0, 1e-12);
    }
    const SchemeMetrics m = scheme_three_way_single_tap(0.3, 10.0, 1.0, 0.3);
    EXPECT_GT(m.total_transfer, 1.4);
    EXPECT_LE(m.total_transfer, 1.5);
    EXPECT_THROW(scheme_three_way_single_tap(0.5, 1.0, 1.0, 1.5), std::invalid_argument);
}

TEST(schemes, qnd_report_examples) {
    const QndReport q = qnd_report(0.9, 1.0);
    const double mu = std::sqrt(2.0);
    EXPECT_NEAR(q.c_in_c, std::sqrt(0.9) / std::sqrt(0.9 + 0.1 * (mu - 1) * (mu - 1)), 1e-12);
    EXPECT_NEAR(q.c_in_c, 0.990602, 1e-6);
    EXPECT_NEAR(q.c_in_a, q.c_in_b, 1e-12);

    const QndReport big = qnd_report(0.5, 100.0);
    EXPECT_NEAR(big.sequential_ratio, 0.8, 0.008);

    EXPECT_THROW(qnd_report(0.0, 1.0), std::invalid_argument);
    EXPECT_THROW(qnd_report(0.5, 0.0), std::invalid_argument);
}

TEST(schemes, qnd_closed_forms) {
    for (double T = 0.05; T < 1.0; T += 0.15) {
        for (double g : {0.3, 1.0, 2.5, 8.0}) {
            const QndReport q = qnd_report(T, g);
            const double G = std::sqrt(1 + g * g);
            const double t3 = scheme_three_way(T, g, 1.0).metrics.total_transfer;
            EXPECT_NEAR(q.sum_rule, t3, 1e-12);
            const double v1 = (1 - T) / ((G + g) * (G + g)) + T / (2 * (1 - T) * g * g + 1);
            const double v2 = (1 - T) / ((G + g) * (G + g)) +
                              (T + 2 * T * (1 - T) * g / (G + g)) / (2 * (1 - T) * g * (G + g) + 1);
            EXPECT_NEAR(q.v_c_given_a, v1, 1e-12);
            EXPECT_NEAR(q.v_c_given_b, v1, 1e-12);
            EXPECT_NEAR(q.v_c_given_ab, v2, 1e-12);
            EXPECT_LE(q.v_c_given_ab, q.v_c_given_a + 1e-15);
            EXPECT_NEAR(q.c_ab, 2 * G * g * (1 - T) / (2 * (1 - T) * g * g + 1), 1e-12);
            const double c_in_a = (G + g) * std::sqrt((1 - T) / 2) / std::sqrt(2 * (1 - T) * g * g + 1);
            EXPECT_NEAR(q.c_in_a, c_in_a, 1e-12);

            const oracle::ThreeWay ref = oracle::three_way(T, g, g, 1.0);
            EXPECT_NEAR(q.v_c_given_ab, oracle::cond_var2(ref.c_out, ref.a_out, ref.b_out), 1e-12);
        }
    }
}

TEST(schemes, vacuum_leakage) {
    for (double T : {0.0, 0.3, 0.7, 1.0}) {
        for (double g : {0.0, 1.0, 5.0}) {
            EXPECT_LT(vacuum_leakage(T, g).c_out_coefficient, 1e-12);
        }
    }
    // Brute-force extraction from the oracle: (1-T)(G-g)^2/2.
    const LeakageReport l = vacuum_leakage(0.5, 1.0);
    const oracle::ThreeWay ref = oracle::three_way(0.5, 1.0, 1.0, 1.0);
    EXPECT_NEAR(l.a_out_variance, oracle::var(ref.v_part_a), 1e-14);
    EXPECT_NEAR(l.a_out_variance, 0.0429, 1e-4);
    EXPECT_NEAR(l.b_out_variance, l.a_out_variance, 1e-14);
    double previous = INFINITY;
    for (double g : {1.0, 2.0, 5.0, 10.0}) {
        const double v = vacuum_leakage(0.5, g).a_out_variance;
        EXPECT_LT(v, previous);
        previous = v;
    }
    EXPECT_LT(previous, 1e-3);
}

TEST(schemes, optimize_transmissivity) {
    const TransmissivityOptimum one = optimize_transmissivity(1.0);
    EXPECT_NEAR(one.t_op, 0.292893, 1e-6);
    EXPECT_NEAR(one.transfer_max, 2.414214, 1e-6);
    const TransmissivityOptimum ten = optimize_transmissivity(10.0);
    EXPECT_NEAR(ten.transfer_max, 1 + 20 / std::sqrt(101.0), 1e-9);
    EXPECT_NEAR(ten.transfer_max, 2.990074, 1e-6);
    EXPECT_NEAR(optimize_transmissivity(1e-6).transfer_max, 1.0, 1e-5);
    EXPECT_THROW(optimize_transmissivity(0.0), std::invalid_argument);
}
