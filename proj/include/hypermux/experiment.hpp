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

/**
 * @file
 * Experiment configuration plus the two experiments (Monte-Carlo fidelity
 * sweep and capacity table) with their CSV / JSON renderings.
 *
 * Config grammar: one `key = value` per line; `#` starts a comment that runs
 * to the end of the line; blank lines are ignored. Keys:
 *
 *   seed              unsigned 64-bit integer            (0)
 *   trials_per_point  integer >= 1                        (70)
 *   epsilon_min       real in [0, 1]                      (0)
 *   epsilon_max       real in [epsilon_min, 1]            (0.5)
 *   epsilon_steps     integer >= 1                        (11)
 *   n_dofs            integer in [1, 4]                   (2)
 *   noise_sites       comma list of after_multiplex,
 *                     after_transmission, after_demultiplex (all three)
 *   lost_policy       maximally_mixed | conditional       (maximally_mixed)
 *   output_path       file path, empty for stdout         ("")
 *   output_format     csv | json                          (csv)
 *   capacity_n_max    integer in [1, 4]                   (3)
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hypermux/teleport.hpp"

namespace hypermux {

/// Library version, taken from the build.
const char* version();

enum class OutputFormat { Csv, Json };

std::string to_string(OutputFormat f);

struct EpsilonGrid {
    double min = 0.0;
    double max = 0.5;
    std::size_t steps = 11;

    /// min + i (max - min) / (steps - 1); a single step yields {min}.
    std::vector<double> points() const;
    bool operator==(const EpsilonGrid&) const = default;
};

struct ExperimentConfig {
    std::uint64_t seed = 0;
    std::size_t trials_per_point = 70;
    EpsilonGrid epsilon_grid;
    std::size_t n_dofs = 2;
    std::vector<NoiseSite> noise_sites = kDefaultNoiseSites;
    LostPolicy lost_policy = LostPolicy::MaximallyMixed;
    std::string output_path;
    OutputFormat output_format = OutputFormat::Csv;
    std::size_t capacity_n_max = 3;

    /// Throws std::invalid_argument naming the offending key.
    void validate() const;
    bool operator==(const ExperimentConfig&) const = default;
};

/// Parse failure carrying the 1-based line it refers to.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::size_t line, const std::string& message);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);
/// Every key, fixed order, values printed so that parsing gives them back.
std::string serialize_config(const ExperimentConfig& config);

struct SweepPoint {
    double epsilon;
    double mean_fidelity;
    double std_error;
    /// Runs entering the mean; below trials_per_point only under the
    /// conditional lost policy.
    std::size_t trials;
};

struct SweepResult {
    ExperimentConfig config;
    std::vector<SweepPoint> points;
    std::string version;
};

/// Sample standard deviation (n - 1 denominator) over sqrt(n); 0 for n < 2.
double standard_error(const std::vector<double>& samples);

/// Fidelity of trial `trial` at grid point `point`. Seeds come from
/// (config.seed, point, trial) alone, so evaluation order does not matter.
double trial_fidelity(const ExperimentConfig& config, std::size_t point, std::size_t trial, const ProtocolLayout& layout,
                      const CorrectionTable& table, bool* lost = nullptr);

/// Trials fan out over OpenMP threads; aggregation runs in trial order.
SweepResult run_fidelity_sweep(const ExperimentConfig& config);
/// Single-threaded reference with identical output.
SweepResult run_fidelity_sweep_serial(const ExperimentConfig& config);

struct CapacityRow {
    double epsilon;
    std::size_t n;
    double analytic;
    double numeric;
    double abs_diff;
};

/// analytic = max(0, n (1 - 2 eps)); numeric = clamped coherent information
/// of the joint-carrier erasure at the maximally entangled input.
std::vector<CapacityRow> run_capacity_table(const EpsilonGrid& grid, const std::vector<std::size_t>& n_list);

std::string sweep_to_csv(const SweepResult& result);
std::string sweep_to_json(const SweepResult& result);
std::string capacity_to_csv(const std::vector<CapacityRow>& rows);
std::string capacity_to_json(const std::vector<CapacityRow>& rows);

/// Exit codes: 0 ok, 1 usage or config error, 2 runtime or I/O failure.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hypermux
