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

#include "cli.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <stdexcept>

#include "CLI11.hpp"
#include "parallel.h"
#include "qtap/gaussian.h"
#include "qtap/montecarlo.h"
#include "qtap/schemes.h"

namespace qtap::cli {

namespace {

/// Bad arguments or I/O problems; mapped to exit code 1.
class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

const std::map<std::string, std::vector<std::string>> &parameter_table() {
    static const std::map<std::string, std::vector<std::string>> table{
        {"bs-squeezed", {"T", "nu", "S", "alpha"}},
        {"bs-correlated", {"T", "nu", "alpha"}},
        {"npa-tap", {"nu", "g", "alpha", "r"}},
        {"three-way", {"T", "g", "nu", "alpha"}},
        {"three-way-single-tap", {"T", "g", "nu", "alpha", "split"}},
    };
    return table;
}

void require_scheme(const std::string &scheme) {
    if (!parameter_table().contains(scheme)) {
        throw UsageError("unknown scheme '" + scheme + "'");
    }
}

void append_ports(std::vector<std::pair<std::string, double>> &out, const SchemeMetrics &m, const char *total_name) {
    out.emplace_back("ref_snr", m.reference_snr);
    for (const auto &p : m.ports) {
        out.emplace_back(p.label + "_mean", p.mean);
        out.emplace_back(p.label + "_variance", p.variance);
        out.emplace_back(p.label + "_snr", p.snr);
        out.emplace_back(p.label + "_transfer", p.transfer);
    }
    out.emplace_back(total_name, m.total_transfer);
    if (m.effective_squeezing) {
        out.emplace_back("s_e", *m.effective_squeezing);
    }
}

SchemeCircuit build_circuit(const std::string &scheme, const SchemeParams &p) {
    require_scheme(scheme);
    if (scheme == "bs-squeezed") {
        return build_bs_squeezed(p.T, p.S ? squeezer_nu_for_degree(*p.S) : p.nu.value_or(1.0), p.alpha);
    }
    if (scheme == "bs-correlated") {
        return build_bs_correlated(p.T, p.nu.value_or(1.0), p.alpha);
    }
    if (scheme == "npa-tap") {
        return build_npa_tap(p.nu.value_or(1.0), p.g, p.alpha, p.r);
    }
    if (scheme == "three-way") {
        return build_three_way(p.T, p.g, p.nu.value_or(p.g), p.alpha).circuit;
    }
    return build_three_way_single_tap(p.T, p.g, p.alpha, p.split, p.nu.value_or(p.g));
}

void write_output(const std::string &text, const std::string &path, std::ostream &out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    file << text;
    file.close();
    if (!file) {
        throw UsageError("cannot write output file '" + path + "'");
    }
}

Format parse_format(const std::string &name) { return name == "json" ? Format::kJson : Format::kCsv; }

std::vector<std::pair<std::string, Cell>> echo_parameters(const std::string &scheme, const SchemeParams &p) {
    std::vector<std::pair<std::string, Cell>> out;
    for (const auto &name : scheme_parameters(scheme)) {
        if ((name == "S" && !p.S) || (name == "nu" && scheme == "bs-squeezed" && p.S)) {
            continue;
        }
        if (name == "nu" && !p.nu) {
            out.emplace_back(name, scheme.starts_with("three-way") ? p.g : 1.0);
            continue;
        }
        out.emplace_back(name, get_parameter(p, name));
    }
    return out;
}

// Registers the circuit parameter flags on a subcommand.
void add_parameter_flags(CLI::App *cmd, SchemeParams &p, std::optional<double> &nu, std::optional<double> &S) {
    cmd->add_option("--T", p.T, "beam-splitter transmissivity")->capture_default_str();
    cmd->add_option("--g", p.g, "amplifier gain parameter g (G = sqrt(1 + g^2))")->capture_default_str();
    cmd->add_option("--nu", nu, "source squeezing parameter nu (mu = sqrt(1 + nu^2)); defaults to g where matched");
    cmd->add_option("--alpha", p.alpha, "coherent input amplitude")->capture_default_str();
    cmd->add_option("--r", p.r, "injection amplitude reflectivity (npa-tap)")->capture_default_str();
    cmd->add_option("--split", p.split, "BS2 transmissivity (three-way-single-tap)")->capture_default_str();
    cmd->add_option("--S", S, "squeezing degree in [0, 1] (bs-squeezed)");
}

}  // namespace

const std::vector<std::string> &scheme_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto &[name, params] : parameter_table()) {
            out.push_back(name);
        }
        return out;
    }();
    return names;
}

std::vector<std::string> scheme_parameters(const std::string &scheme) {
    require_scheme(scheme);
    return parameter_table().at(scheme);
}

double get_parameter(const SchemeParams &p, const std::string &name) {
    if (name == "T") return p.T;
    if (name == "g") return p.g;
    if (name == "nu") return p.nu.value_or(std::nan(""));
    if (name == "alpha") return p.alpha;
    if (name == "r") return p.r;
    if (name == "split") return p.split;
    if (name == "S") return p.S.value_or(std::nan(""));
    throw UsageError("unknown parameter '" + name + "'");
}

void set_parameter(SchemeParams &p, const std::string &name, double value) {
    if (name == "T") p.T = value;
    else if (name == "g") p.g = value;
    else if (name == "nu") p.nu = value;
    else if (name == "alpha") p.alpha = value;
    else if (name == "r") p.r = value;
    else if (name == "split") p.split = value;
    else if (name == "S") p.S = value;
    else throw UsageError("unknown parameter '" + name + "'");
}

std::vector<std::pair<std::string, double>> scheme_metrics(const std::string &scheme, const SchemeParams &p) {
    require_scheme(scheme);
    std::vector<std::pair<std::string, double>> out;
    if (scheme == "three-way") {
        const ThreeWayResult r = scheme_three_way_general(p.T, p.g, p.nu.value_or(p.g), p.alpha);
        append_ports(out, r.metrics, "t3_total");
        out.emplace_back("G", r.G);
        out.emplace_back("t3_closed_form", r.closed_form_transfer);
        out.emplace_back("t_op_closed_form", r.closed_form_t_op);
        out.emplace_back("t3_max_closed_form", r.closed_form_transfer_max);
        return out;
    }
    const SchemeMetrics m = evaluate(build_circuit(scheme, p));
    append_ports(out, m, scheme == "three-way-single-tap" ? "t3_total" : "t_total");
    return out;
}

unsigned thread_budget() {
    if (const char *env = std::getenv("QTAP_THREADS")) {
        char *end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && n > 0) {
            return static_cast<unsigned>(n);
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void write_fig4(std::span<const double> g_list, const std::filesystem::path &out_dir) {
    if (g_list.empty()) {
        throw UsageError("fig4: need at least one g value");
    }
    for (double g : g_list) {
        if (!(g > 0.0) || !std::isfinite(g)) {
            throw UsageError("fig4: every g must be finite and > 0");
        }
    }
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw UsageError("fig4: cannot create output directory '" + out_dir.string() + "'");
    }
    const unsigned workers = thread_budget();

    Records curves;
    curves.scheme = "three-way";
    curves.columns.push_back("T");
    for (double g : g_list) {
        curves.columns.push_back("g=" + format_number(g));
    }
    curves.rows = parallel_map<std::vector<Cell>>(99, workers, [&](size_t k) {
        const double T = static_cast<double>(k + 1) / 100.0;
        std::vector<Cell> row{T};
        for (double g : g_list) {
            row.emplace_back(scheme_three_way(T, g, 1.0).metrics.total_transfer);
        }
        return row;
    });

    // Twenty points per decade over [0.1, 100], plus the curve gains.
    std::set<double> gains(g_list.begin(), g_list.end());
    for (int k = -20; k <= 40; k++) {
        gains.insert(std::pow(10.0, k / 20.0));
    }
    const std::vector<double> grid(gains.begin(), gains.end());
    Records optimum;
    optimum.scheme = "three-way";
    optimum.columns = {"g", "T3_max", "T_op"};
    optimum.rows = parallel_map<std::vector<Cell>>(grid.size(), workers, [&](size_t k) {
        const TransmissivityOptimum best = optimize_transmissivity(grid[k]);
        return std::vector<Cell>{grid[k], best.transfer_max, best.t_op};
    });

    write_output(emit(curves, Format::kCsv), (out_dir / "fig4a.csv").string(), std::cout);
    write_output(emit(optimum, Format::kCsv), (out_dir / "fig4b.csv").string(), std::cout);
}

int run(std::vector<std::string> args, std::ostream &out, std::ostream &err) {
    CLI::App app{"qtap: Gaussian quantum-optical tapping network simulator"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "expanded help for all subcommands");

    SchemeParams params;
    std::optional<double> nu;
    std::optional<double> S;
    std::string format = "csv";
    std::string out_path;
    auto add_output_flags = [&](CLI::App *cmd) {
        cmd->add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
        cmd->add_option("--out", out_path, "output file (default: stdout)");
    };

    std::string scheme;
    auto *scheme_cmd = app.add_subcommand("scheme", "evaluate one tapping scheme");
    scheme_cmd->add_option("name", scheme, "scheme name")->required()->check(CLI::IsMember(scheme_names()));
    add_parameter_flags(scheme_cmd, params, nu, S);
    add_output_flags(scheme_cmd);

    std::string sweep_param;
    double from = 0.0;
    double to = 1.0;
    int steps = 0;
    auto *sweep_cmd = app.add_subcommand("sweep", "evaluate a scheme over a parameter range");
    sweep_cmd->add_option("name", scheme, "scheme name")->required()->check(CLI::IsMember(scheme_names()));
    sweep_cmd->add_option("--param", sweep_param, "swept parameter")->required();
    sweep_cmd->add_option("--from", from, "first value")->required();
    sweep_cmd->add_option("--to", to, "last value")->required();
    sweep_cmd->add_option("--steps", steps, "number of points (>= 2)")->required();
    add_parameter_flags(sweep_cmd, params, nu, S);
    add_output_flags(sweep_cmd);

    std::vector<double> g_list{0.5, 1.0, 2.0, 5.0, 10.0};
    std::string out_dir = ".";
    auto *fig4_cmd = app.add_subcommand("fig4", "transfer-vs-T curves and optimum-vs-g data as CSV");
    fig4_cmd->add_option("--g", g_list, "gain parameters for the T curves")->delimiter(',')->capture_default_str();
    fig4_cmd->add_option("--out-dir", out_dir, "directory for fig4a.csv and fig4b.csv")->capture_default_str();

    auto *qnd_cmd = app.add_subcommand("qnd", "QND criteria of the three-way splitter");
    qnd_cmd->add_option("--T", params.T, "beam-splitter transmissivity")->capture_default_str();
    qnd_cmd->add_option("--g", params.g, "amplifier gain parameter")->capture_default_str();
    qnd_cmd->add_option("--alpha", params.alpha, "coherent input amplitude")->capture_default_str();
    add_output_flags(qnd_cmd);

    auto *leak_cmd = app.add_subcommand("leakage", "split-vacuum leakage of the three-way splitter");
    leak_cmd->add_option("--T", params.T, "beam-splitter transmissivity")->capture_default_str();
    leak_cmd->add_option("--g", params.g, "amplifier gain parameter")->capture_default_str();
    add_output_flags(leak_cmd);

    std::string mc_scheme = "all";
    MCConfig mc;
    auto *mc_cmd = app.add_subcommand("mc-verify", "cross-check analytic moments against Monte Carlo sampling");
    std::vector<std::string> mc_choices = scheme_names();
    mc_choices.push_back("all");
    mc_cmd->add_option("--scheme", mc_scheme, "scheme to verify")->check(CLI::IsMember(mc_choices))->capture_default_str();
    mc_cmd->add_option("--samples", mc.samples, "samples per scheme")->capture_default_str();
    mc_cmd->add_option("--seed", mc.seed, "64-bit seed")->capture_default_str();
    add_parameter_flags(mc_cmd, params, nu, S);
    add_output_flags(mc_cmd);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }
    params.nu = nu;
    params.S = S;

    try {
        if (scheme_cmd->parsed()) {
            Records rec{scheme, echo_parameters(scheme, params), {}, {{}}};
            for (const auto &[name, value] : scheme_metrics(scheme, params)) {
                rec.columns.push_back(name);
                rec.rows[0].emplace_back(value);
            }
            write_output(emit(rec, parse_format(format)), out_path, out);
        } else if (sweep_cmd->parsed()) {
            const auto allowed = scheme_parameters(scheme);
            if (std::find(allowed.begin(), allowed.end(), sweep_param) == allowed.end()) {
                throw UsageError("parameter '" + sweep_param + "' is not used by scheme '" + scheme + "'");
            }
            if (!(from < to) || steps < 2) {
                throw UsageError("sweep needs --from < --to and --steps >= 2");
            }
            Records rec{scheme, echo_parameters(scheme, params), {sweep_param}, {}};
            rec.parameters.erase(std::remove_if(rec.parameters.begin(), rec.parameters.end(),
                                                [&](const auto &kv) { return kv.first == sweep_param; }),
                                 rec.parameters.end());
            rec.parameters.emplace_back("param", sweep_param);
            rec.parameters.emplace_back("from", from);
            rec.parameters.emplace_back("to", to);
            rec.parameters.emplace_back("steps", static_cast<double>(steps));
            const auto points = parallel_map<std::vector<std::pair<std::string, double>>>(
                static_cast<size_t>(steps), thread_budget(), [&](size_t k) {
                    SchemeParams local = params;
                    set_parameter(local, sweep_param, from + (to - from) * static_cast<double>(k) / (steps - 1));
                    auto metrics = scheme_metrics(scheme, local);
                    metrics.insert(metrics.begin(), {sweep_param, get_parameter(local, sweep_param)});
                    return metrics;
                });
            for (size_t c = 1; c < points.front().size(); c++) {
                rec.columns.push_back(points.front()[c].first);
            }
            for (const auto &point : points) {
                std::vector<Cell> row;
                for (const auto &[name, value] : point) {
                    row.emplace_back(value);
                }
                rec.rows.push_back(std::move(row));
            }
            write_output(emit(rec, parse_format(format)), out_path, out);
        } else if (fig4_cmd->parsed()) {
            write_fig4(g_list, out_dir);
        } else if (qnd_cmd->parsed()) {
            const QndReport q = qnd_report(params.T, params.g, params.alpha);
            Records rec{"three-way",
                        {{"T", params.T}, {"g", params.g}, {"alpha", params.alpha}},
                        {"c_in_c", "c_in_a", "c_in_b", "c_ab", "v_c_given_a", "v_c_given_b", "v_c_given_ab", "sum_rule",
                         "sequential_ratio"},
                        {{q.c_in_c, q.c_in_a, q.c_in_b, q.c_ab, q.v_c_given_a, q.v_c_given_b, q.v_c_given_ab,
                          q.sum_rule, q.sequential_ratio}}};
            write_output(emit(rec, parse_format(format)), out_path, out);
        } else if (leak_cmd->parsed()) {
            const LeakageReport l = vacuum_leakage(params.T, params.g);
            Records rec{"three-way",
                        {{"T", params.T}, {"g", params.g}},
                        {"c_out_coefficient", "a_out_variance", "b_out_variance"},
                        {{l.c_out_coefficient, l.a_out_variance, l.b_out_variance}}};
            write_output(emit(rec, parse_format(format)), out_path, out);
        } else if (mc_cmd->parsed()) {
            if (mc.samples == 0) {
                throw UsageError("--samples must be >= 1");
            }
            mc.workers = thread_budget();
            const std::vector<std::string> targets =
                mc_scheme == "all" ? scheme_names() : std::vector<std::string>{mc_scheme};
            Records rec{mc_scheme,
                        {{"samples", static_cast<double>(mc.samples)}, {"seed", std::to_string(mc.seed)}},
                        {"scheme", "quantity", "analytic", "estimate", "standard_error", "deviation", "status"},
                        {}};
            bool passed = true;
            for (const auto &name : targets) {
                const SchemeCircuit circuit = build_circuit(name, params);
                const std::vector<Observable> obs = circuit.observables();
                std::vector<std::string> labels{"reference"};
                for (const auto &p : circuit.ports) {
                    labels.push_back(p.label);
                }
                const ValidationReport report =
                    mc_validate(obs, analytic_moments(obs), mc, analytic_covariances(obs), labels);
                passed = passed && report.passed;
                for (const auto &item : report.items) {
                    rec.rows.push_back({name, item.quantity, item.analytic, item.estimate, item.standard_error,
                                        item.deviation, std::string(item.pass ? "pass" : "FAIL")});
                }
            }
            write_output(emit(rec, parse_format(format)), out_path, out);
            if (!passed) {
                err << "mc-verify: at least one analytic moment lies outside " << kMonteCarloGate
                    << " standard errors\n";
                return kExitValidation;
            }
        }
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    }
    return kExitOk;
}

}  // namespace qtap::cli
