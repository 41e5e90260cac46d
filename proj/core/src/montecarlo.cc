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

#include "qtap/montecarlo.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

#include <Eigen/Dense>

namespace qtap {

namespace {

// Observables flattened to x = offset + weights * z over a dense vacuum basis,
// z ~ N(0, I).
struct RealLinearModel {
    Eigen::VectorXd offset;
    Eigen::MatrixXd weights;
};

RealLinearModel flatten(std::span<const Observable> observables) {
    std::map<ModeId, Eigen::Index> basis;
    for (const auto &o : observables) {
        if (!o.same_network(observables.front())) {
            throw std::invalid_argument("mc_estimate: observables belong to different networks");
        }
        for (const auto &[id, f] : o.linear_form().coefficients()) {
            basis.emplace(id, 0);
        }
    }
    Eigen::Index next = 0;
    for (auto &[id, column] : basis) {
        column = next++;
    }

    const auto k = static_cast<Eigen::Index>(observables.size());
    RealLinearModel model{Eigen::VectorXd::Zero(k), Eigen::MatrixXd::Zero(k, next)};
    for (Eigen::Index i = 0; i < k; i++) {
        const QuadratureForm &form = observables[i].linear_form();
        model.offset(i) = form.mean();
        for (const auto &[id, f] : form.coefficients()) {
            if (std::abs(f.imag()) > 1e-12 * (1.0 + std::abs(f))) {
                throw std::invalid_argument(
                    "mc_estimate: observable has complex quadrature coefficients; the classical sampling oracle "
                    "only covers commuting X-quadrature observables");
            }
            model.weights(i, basis.at(id)) = f.real();
        }
    }
    return model;
}

std::mt19937_64 block_engine(std::uint64_t seed, std::uint64_t block) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
    return std::mt19937_64(seq);
}

template <typename Visit>
void for_each_sample(const RealLinearModel &model, const MCConfig &cfg, std::uint64_t block, Visit &&visit) {
    const std::uint64_t begin = block * kMonteCarloBlockSize;
    const std::uint64_t end = std::min(cfg.samples, begin + kMonteCarloBlockSize);
    auto engine = block_engine(cfg.seed, block);
    std::normal_distribution<double> normal;
    Eigen::VectorXd z(model.weights.cols());
    Eigen::VectorXd x(model.weights.rows());
    for (std::uint64_t s = begin; s < end; s++) {
        for (Eigen::Index j = 0; j < z.size(); j++) {
            z(j) = normal(engine);
        }
        x.noalias() = model.offset + model.weights * z;
        visit(x);
    }
}

unsigned worker_count(const MCConfig &cfg, std::uint64_t blocks) {
    unsigned w = cfg.workers != 0 ? cfg.workers : std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::uint64_t>(w, blocks));
}

// Runs `job(block)` for every block across workers. Results land in per-block
// slots, so merging in block order is independent of scheduling.
template <typename Job>
void run_blocks(std::uint64_t blocks, unsigned workers, Job &&job) {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; w++) {
        pool.emplace_back([&, w] {
            for (std::uint64_t b = w; b < blocks; b += workers) {
                job(b);
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
}

}  // namespace

EmpiricalMoments mc_estimate(std::span<const Observable> observables, const MCConfig &cfg) {
    if (cfg.samples == 0) {
        throw std::invalid_argument("mc_estimate: samples must be >= 1");
    }
    if (observables.empty()) {
        throw std::invalid_argument("mc_estimate: no observables");
    }
    const RealLinearModel model = flatten(observables);
    const auto k = model.offset.size();
    const std::uint64_t blocks = (cfg.samples + kMonteCarloBlockSize - 1) / kMonteCarloBlockSize;
    const unsigned workers = worker_count(cfg, blocks);
    const double n = static_cast<double>(cfg.samples);

    // Pass 1: sample means.
    std::vector<Eigen::VectorXd> block_sums(blocks);
    run_blocks(blocks, workers, [&](std::uint64_t b) {
        Eigen::VectorXd sum = Eigen::VectorXd::Zero(k);
        for_each_sample(model, cfg, b, [&](const Eigen::VectorXd &x) { sum += x; });
        block_sums[b] = std::move(sum);
    });
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(k);
    for (const auto &s : block_sums) {
        mean += s;
    }
    mean /= n;

    // Pass 2: regenerate the identical stream for centered second and fourth
    // order sums.
    std::vector<Eigen::MatrixXd> block_second(blocks);
    std::vector<Eigen::MatrixXd> block_fourth(blocks);
    run_blocks(blocks, workers, [&](std::uint64_t b) {
        Eigen::MatrixXd second = Eigen::MatrixXd::Zero(k, k);
        Eigen::MatrixXd fourth = Eigen::MatrixXd::Zero(k, k);
        for_each_sample(model, cfg, b, [&](const Eigen::VectorXd &x) {
            const Eigen::VectorXd d = x - mean;
            const Eigen::VectorXd d2 = d.cwiseProduct(d);
            second.noalias() += d * d.transpose();
            fourth.noalias() += d2 * d2.transpose();
        });
        block_second[b] = std::move(second);
        block_fourth[b] = std::move(fourth);
    });
    Eigen::MatrixXd second = Eigen::MatrixXd::Zero(k, k);
    Eigen::MatrixXd fourth = Eigen::MatrixXd::Zero(k, k);
    for (std::uint64_t b = 0; b < blocks; b++) {
        second += block_second[b];
        fourth += block_fourth[b];
    }

    EmpiricalMoments out;
    out.samples = cfg.samples;
    out.covariances.assign(k, std::vector<Estimate>(k));
    const double dof = cfg.samples > 1 ? n - 1.0 : n;
    for (Eigen::Index i = 0; i < k; i++) {
        for (Eigen::Index j = 0; j < k; j++) {
            const double pop = second(i, j) / n;
            const double spread = std::max(fourth(i, j) / n - pop * pop, 0.0);
            out.covariances[i][j] = Estimate{second(i, j) / dof, std::sqrt(spread / n)};
        }
        out.variances.push_back(out.covariances[i][i]);
        out.means.push_back(Estimate{mean(i), std::sqrt(out.variances.back().value / n)});
    }
    return out;
}

std::vector<Moments> analytic_moments(std::span<const Observable> observables) {
    std::vector<Moments> out;
    for (const auto &o : observables) {
        out.push_back(moments(o));
    }
    return out;
}

std::vector<std::vector<double>> analytic_covariances(std::span<const Observable> observables) {
    std::vector<std::vector<double>> out(observables.size(), std::vector<double>(observables.size()));
    for (size_t i = 0; i < observables.size(); i++) {
        for (size_t j = 0; j < observables.size(); j++) {
            out[i][j] = covariance(observables[i], observables[j]);
        }
    }
    return out;
}

ValidationReport mc_validate(std::span<const Observable> observables, std::span<const Moments> analytic,
                             const MCConfig &cfg,
                             const std::optional<std::vector<std::vector<double>>> &analytic_covariances,
                             std::span<const std::string> labels) {
    if (analytic.size() != observables.size()) {
        throw std::invalid_argument("mc_validate: analytic moments and observables differ in length");
    }
    if (!labels.empty() && labels.size() != observables.size()) {
        throw std::invalid_argument("mc_validate: labels and observables differ in length");
    }
    if (analytic_covariances) {
        if (analytic_covariances->size() != observables.size()) {
            throw std::invalid_argument("mc_validate: covariance matrix has the wrong size");
        }
        for (const auto &row : *analytic_covariances) {
            if (row.size() != observables.size()) {
                throw std::invalid_argument("mc_validate: covariance matrix has the wrong size");
            }
        }
    }
    const EmpiricalMoments empirical = mc_estimate(observables, cfg);
    auto name = [&](size_t i) { return labels.empty() ? "obs" + std::to_string(i) : labels[i]; };

    ValidationReport report;
    auto check = [&](std::string quantity, double expected, const Estimate &est) {
        ValidationItem item{std::move(quantity), expected, est.value, est.standard_error, 0.0, false};
        const double diff = std::abs(expected - est.value);
        if (est.standard_error > 0.0) {
            item.deviation = diff / est.standard_error;
            item.pass = item.deviation <= kMonteCarloGate;
        } else {
            // Noiseless quantity: the estimate is exact up to rounding.
            item.pass = diff <= 1e-9 * (1.0 + std::abs(expected));
            item.deviation = item.pass ? 0.0 : INFINITY;
        }
        report.passed = report.passed && item.pass;
        report.items.push_back(std::move(item));
    };
    for (size_t i = 0; i < observables.size(); i++) {
        check("mean(" + name(i) + ")", analytic[i].mean, empirical.means[i]);
        check("var(" + name(i) + ")", analytic[i].variance, empirical.variances[i]);
    }
    if (analytic_covariances) {
        for (size_t i = 0; i < observables.size(); i++) {
            for (size_t j = i + 1; j < observables.size(); j++) {
                check("cov(" + name(i) + "," + name(j) + ")", (*analytic_covariances)[i][j],
                      empirical.covariances[i][j]);
            }
        }
    }
    return report;
}

}  // namespace qtap
