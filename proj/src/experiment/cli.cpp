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

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "hypermux/experiment.hpp"

namespace hypermux {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open output file '" + path + "'");
    file << text;
    file.close();
    if (!file) throw std::runtime_error("failed writing output file '" + path + "'");
}

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12f", v);
    return buf;
}

std::string teleport_report(const ExperimentConfig& config, double epsilon) {
    const auto layout = ProtocolLayout::standard(config.n_dofs);
    const auto table = CorrectionTable::derive();
    Rng rng = make_substream(config.seed, 0, 0);
    const auto input = haar_random_state(layout.sources, rng);
    const auto trace =
        run_protocol(input, NoiseConfig{epsilon, config.noise_sites, config.lost_policy}, layout, table, rng);
    if (config.output_format == OutputFormat::Json) return to_json(trace) + "\n";

    std::ostringstream out;
    out << "teleport demo: " << config.n_dofs << " DoF(s), seed " << config.seed << ", epsilon " << epsilon << "\n";
    for (std::size_t i = 0; i < trace.bsm_outcomes.size(); ++i) {
        const auto& b = trace.bsm_outcomes[i];
        const auto& c = trace.corrections[i];
        out << "  " << to_string(b.stage) << " " << to_string(b.dof) << ": outcome " << to_string(b.outcome)
            << ", correction " << to_string(c.correction) << " on " << to_string(c.target) << "\n";
    }
    for (const auto& e : trace.erasure_events)
        out << "  " << to_string(e.site) << ": " << (e.occurred ? "photon lost" : "photon kept") << "\n";
    out << "carrier lost: " << (trace.carrier_lost ? "yes" : "no") << "\n";
    out << "fidelity: " << fixed(trace.final_fidelity) << "\n";
    return out.str();
}

std::string entgen_report(const ExperimentConfig& config, double epsilon) {
    const auto table = CorrectionTable::derive();
    Rng rng = make_substream(config.seed, 0, 0);
    const auto r = entanglement_generation(BellKind::PhiPlus, BellKind::PhiPlus,
                                           NoiseConfig{epsilon, config.noise_sites, config.lost_policy}, table, rng);
    std::ostringstream out;
    out << "entanglement generation demo: seed " << config.seed << ", epsilon " << epsilon << "\n";
    out << "carrier lost: " << (r.trace.carrier_lost ? "yes" : "no") << "\n";
    out << "pair E.SAM - P3.SAM: Bell fidelity " << fixed(r.sam_pair_fidelity) << ", entanglement entropy "
        << fixed(r.sam_pair_entropy) << " bits\n";
    out << "pair F.OAM - P4.OAM: Bell fidelity " << fixed(r.oam_pair_fidelity) << ", entanglement entropy "
        << fixed(r.oam_pair_entropy) << " bits\n";
    return out.str();
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hyperentanglement multiplexing simulator", "hypermux"};
    app.set_version_flag("--version", std::string(version()));
    app.fallthrough();
    app.require_subcommand(1);

    std::string config_path, out_path, format;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    double epsilon = 0.0;
    auto* config_opt = app.add_option("--config", config_path, "Config file (key = value lines)");
    auto* seed_opt = app.add_option("--seed", seed, "Master seed");
    auto* trials_opt = app.add_option("--trials", trials, "Trials per epsilon point")->check(CLI::PositiveNumber);
    auto* out_opt = app.add_option("--out", out_path, "Output file; stdout when absent");
    auto* format_opt = app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));

    auto* sweep = app.add_subcommand("sweep", "Monte-Carlo fidelity sweep over the epsilon grid");
    auto* capacity = app.add_subcommand("capacity", "Analytic vs numeric capacity table");
    auto* teleport = app.add_subcommand("teleport-demo", "One traced multiplex / demultiplex run");
    auto* entgen = app.add_subcommand("entgen-demo", "Two-pair entanglement generation report");
    for (auto* demo : {teleport, entgen})
        demo->add_option("--epsilon", epsilon, "Erasure probability per noise site")->check(CLI::Range(0.0, 1.0));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    ExperimentConfig config;
    try {
        if (config_opt->count()) config = load_config(config_path);
        if (seed_opt->count()) config.seed = seed;
        if (trials_opt->count()) config.trials_per_point = trials;
        if (out_opt->count()) config.output_path = out_path;
        if (format_opt->count()) config.output_format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
        config.validate();
    } catch (const std::exception& e) {
        err << "config error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        std::string text;
        if (sweep->parsed()) {
            const auto result = run_fidelity_sweep(config);
            text = config.output_format == OutputFormat::Json ? sweep_to_json(result) : sweep_to_csv(result);
        } else if (capacity->parsed()) {
            std::vector<std::size_t> ns;
            for (std::size_t n = 1; n <= config.capacity_n_max; ++n) ns.push_back(n);
            const auto rows = run_capacity_table(config.epsilon_grid, ns);
            text = config.output_format == OutputFormat::Json ? capacity_to_json(rows) : capacity_to_csv(rows);
        } else if (teleport->parsed()) {
            text = teleport_report(config, epsilon);
        } else {
            text = entgen_report(config, epsilon);
        }
        write_output(text, config.output_path, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}

}  // namespace hypermux
