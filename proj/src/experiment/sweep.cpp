// Copyright 2026 The Hypermux Authors
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

#include <cmath>
#include <cstdio>
#include <exception>
#include <sstream>

#include "hypermux/channels.hpp"
#include "hypermux/experiment.hpp"
#include "json.hpp"

namespace hypermux {
namespace {

using Json = nlohmann::ordered_json;

double grid_point(const EpsilonGrid& g, std::size_t i) {
    if (g.steps == 1) return g.min;
    return g.min + static_cast<double>(i) * (g.max - g.min) / static_cast<double>(g.steps - 1);
}

SweepPoint aggregate(double epsilon, const double* fid, const char* lost, std::size_t n, LostPolicy policy) {
    std::vector<double> kept;
    kept.reserve(n);
    for (std::size_t t = 0; t < n; ++t)
        if (policy == LostPolicy::MaximallyMixed || !lost[t]) kept.push_back(fid[t]);
    if (kept.empty()) return {epsilon, 0.0, 0.0, 0};
    double sum = 0.0;
    for (double f : kept) sum += f;
    return {epsilon, sum / static_cast<double>(kept.size()), standard_error(kept), kept.size()};
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// output_path is left out so the same run written to two places is byte-identical.
Json config_json(const ExperimentConfig& c) {
    Json sites = Json::array();
    for (auto s : c.noise_sites) sites.push_back(to_string(s));
    return Json{{"seed", c.seed},
                {"trials_per_point", c.trials_per_point},
                {"epsilon_min", c.epsilon_grid.min},
                {"epsilon_max", c.epsilon_grid.max},
                {"epsilon_steps", c.epsilon_grid.steps},
                {"n_dofs", c.n_dofs},
                {"noise_sites", sites},
                {"lost_policy", to_string(c.lost_policy)},
                {"output_format", to_string(c.output_format)}};
}

}  // namespace

double standard_error(const std::vector<double>& samples) {
    const std::size_t n = samples.size();
    if (n < 2) return 0.0;
    double mean = 0.0;
    for (double x : samples) mean += x;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double x : samples) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n));
}

double trial_fidelity(const ExperimentConfig& config, std::size_t point, std::size_t trial, const ProtocolLayout& layout,
                      const CorrectionTable& table, bool* lost) {
    Rng rng = make_substream(config.seed, point, trial);
    const StateVector input = haar_random_state(layout.sources, rng);
    const NoiseConfig noise{grid_point(config.epsilon_grid, point), config.noise_sites, config.lost_policy};
    const ProtocolTrace trace = run_protocol(input, noise, layout, table, rng);
    if (lost) *lost = trace.carrier_lost;
    return trace.final_fidelity;
}

SweepResult run_fidelity_sweep_serial(const ExperimentConfig& config) {
    config.validate();
    const auto layout = ProtocolLayout::standard(config.n_dofs);
    const auto table = CorrectionTable::derive();
    const std::size_t trials = config.trials_per_point;
    SweepResult result{config, {}, version()};
    std::vector<double> fid(trials);
    std::vector<char> lost(trials);
    for (std::size_t p = 0; p < config.epsilon_grid.steps; ++p) {
        for (std::size_t t = 0; t < trials; ++t) {
            bool l = false;
            fid[t] = trial_fidelity(config, p, t, layout, table, &l);
            lost[t] = l;
        }
        result.points.push_back(aggregate(grid_point(config.epsilon_grid, p), fid.data(), lost.data(), trials,
                                          config.lost_policy));
    }
    return result;
}

SweepResult run_fidelity_sweep(const ExperimentConfig& config) {
    config.validate();
    const auto layout = ProtocolLayout::standard(config.n_dofs);
    const auto table = CorrectionTable::derive();
    const std::size_t trials = config.trials_per_point;
    const std::size_t steps = config.epsilon_grid.steps;
    const auto total = static_cast<long long>(steps * trials);
    std::vector<double> fid(steps * trials);
    std::vector<char> lost(steps * trials);
    std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < total; ++i) {
        const auto k = static_cast<std::size_t>(i);
        try {
            bool l = false;
            fid[k] = trial_fidelity(config, k / trials, k % trials, layout, table, &l);
            lost[k] = l;
        } catch (...) {
#pragma omp critical(hypermux_sweep_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    SweepResult result{config, {}, version()};
    for (std::size_t p = 0; p < steps; ++p)
        result.points.push_back(aggregate(grid_point(config.epsilon_grid, p), fid.data() + p * trials,
                                          lost.data() + p * trials, trials, config.lost_policy));
    return result;
}

std::vector<CapacityRow> run_capacity_table(const EpsilonGrid& grid, const std::vector<std::size_t>& n_list) {
    if (grid.steps < 1 || !(grid.min >= 0.0 && grid.max <= 1.0 && grid.min <= grid.max))
        throw std::invalid_argument("capacity table: invalid epsilon grid");
    std::vector<CapacityRow> rows;
    for (std::size_t i = 0; i < grid.steps; ++i) {
        const double eps = grid_point(grid, i);
        for (std::size_t n : n_list) {
            if (n < 1 || n > 6) throw std::invalid_argument("capacity table: n must lie in [1, 6]");
            const std::size_t d = std::size_t{1} << n;
            const double ic =
                coherent_information(joint_carrier_erasure(eps, n), maximally_entangled_input(d), {channel_input_label(d)});
            const double analytic = erasure_capacity_formula(eps, static_cast<int>(n));
            const double numeric = std::max(0.0, ic);
            rows.push_back({eps, n, analytic, numeric, std::abs(analytic - numeric)});
        }
    }
    return rows;
}

std::string sweep_to_csv(const SweepResult& result) {
    std::ostringstream out;
    out << "epsilon,mean_fidelity,std_error,trials\n";
    for (const auto& p : result.points)
        out << fmt(p.epsilon) << ',' << fmt(p.mean_fidelity) << ',' << fmt(p.std_error) << ',' << p.trials << '\n';
    return out.str();
}

std::string sweep_to_json(const SweepResult& result) {
    Json rows = Json::array();
    for (const auto& p : result.points)
        rows.push_back({{"epsilon", p.epsilon},
                        {"mean_fidelity", p.mean_fidelity},
                        {"std_error", p.std_error},
                        {"trials", p.trials}});
    const Json doc{{"config", config_json(result.config)}, {"results", rows}, {"version", result.version}};
    return doc.dump(2) + "\n";
}

std::string capacity_to_csv(const std::vector<CapacityRow>& rows) {
    std::ostringstream out;
    out << "epsilon,n,analytic,numeric,abs_diff\n";
    for (const auto& r : rows)
        out << fmt(r.epsilon) << ',' << r.n << ',' << fmt(r.analytic) << ',' << fmt(r.numeric) << ',' << fmt(r.abs_diff)
            << '\n';
    return out.str();
}

std::string capacity_to_json(const std::vector<CapacityRow>& rows) {
    Json doc = Json::array();
    for (const auto& r : rows)
        doc.push_back(
            {{"epsilon", r.epsilon}, {"n", r.n}, {"analytic", r.analytic}, {"numeric", r.numeric}, {"abs_diff", r.abs_diff}});
    return doc.dump(2) + "\n";
}

}  // namespace hypermux
