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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "hypermux/experiment.hpp"
#include "hypermux/version.hpp"

namespace hypermux {
namespace {

constexpr std::size_t kMaxDofs = 4;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
    if (text.empty() || text.front() == '-' || text.front() == '+') return false;
    const auto* end = text.data() + text.size();
    const auto r = std::from_chars(text.data(), end, out);
    return r.ec == std::errc() && r.ptr == end;
}

bool parse_real(std::string_view text, double& out) {
    if (!text.empty() && text.front() == '+') return false;
    const auto* end = text.data() + text.size();
    const auto r = std::from_chars(text.data(), end, out);
    return !text.empty() && r.ec == std::errc() && r.ptr == end && std::isfinite(out);
}

std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

const char* version() { return HYPERMUX_VERSION; }

std::string to_string(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "json"; }

std::vector<double> EpsilonGrid::points() const {
    std::vector<double> out;
    out.reserve(steps);
    for (std::size_t i = 0; i < steps; ++i)
        out.push_back(steps == 1 ? min : min + static_cast<double>(i) * (max - min) / static_cast<double>(steps - 1));
    return out;
}

void ExperimentConfig::validate() const {
    if (trials_per_point < 1) throw std::invalid_argument("trials_per_point must be >= 1");
    const auto& g = epsilon_grid;
    if (!(g.min >= 0.0 && g.min <= 1.0)) throw std::invalid_argument("epsilon_min must lie in [0, 1]");
    if (!(g.max >= 0.0 && g.max <= 1.0)) throw std::invalid_argument("epsilon_max must lie in [0, 1]");
    if (g.min > g.max) throw std::invalid_argument("epsilon_max must not be below epsilon_min");
    if (g.steps < 1) throw std::invalid_argument("epsilon_steps must be >= 1");
    if (n_dofs < 1 || n_dofs > kMaxDofs) throw std::invalid_argument("n_dofs must lie in [1, 4]");
    if (noise_sites.empty()) throw std::invalid_argument("noise_sites must name at least one site");
    for (std::size_t i = 0; i < noise_sites.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (noise_sites[i] == noise_sites[j]) throw std::invalid_argument("noise_sites lists a site twice");
    if (capacity_n_max < 1 || capacity_n_max > kMaxDofs) throw std::invalid_argument("capacity_n_max must lie in [1, 4]");
}

ConfigError::ConfigError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig c;
    std::map<std::string, std::size_t, std::less<>> seen;
    std::vector<std::string_view> lines;
    for (std::size_t start = 0;;) {
        const auto nl = text.find('\n', start);
        lines.push_back(text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start));
        if (nl == std::string_view::npos) break;
        start = nl + 1;
    }
    std::size_t line_no = 0;
    for (std::string_view line : lines) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(line_no, "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(line_no, "missing key before '='");
        if (!seen.emplace(key, line_no).second)
            throw ConfigError(line_no, key + ": duplicate key (first set on line " + std::to_string(seen[key]) + ")");

        auto bad = [&](const std::string& why) { return ConfigError(line_no, key + ": " + why + " (got '" + std::string(value) + "')"); };
        auto count = [&](std::size_t lo, std::size_t hi) {
            std::size_t v = 0;
            if (!parse_number(value, v)) throw bad("expected a non-negative integer");
            if (v < lo || v > hi) throw bad("must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
            return v;
        };
        auto probability = [&] {
            double v = 0;
            if (!parse_real(value, v)) throw bad("expected a real number");
            if (v < 0.0 || v > 1.0) throw bad("must lie in [0, 1]");
            return v;
        };

        if (key == "seed") {
            if (!parse_number(value, c.seed)) throw bad("expected an unsigned 64-bit integer");
        } else if (key == "trials_per_point") {
            c.trials_per_point = count(1, 100000000);
        } else if (key == "epsilon_min") {
            c.epsilon_grid.min = probability();
        } else if (key == "epsilon_max") {
            c.epsilon_grid.max = probability();
        } else if (key == "epsilon_steps") {
            c.epsilon_grid.steps = count(1, 1000000);
        } else if (key == "n_dofs") {
            c.n_dofs = count(1, kMaxDofs);
        } else if (key == "capacity_n_max") {
            c.capacity_n_max = count(1, kMaxDofs);
        } else if (key == "noise_sites") {
            c.noise_sites.clear();
            std::string_view rest = value;
            while (true) {
                const auto comma = rest.find(',');
                const std::string item(trim(rest.substr(0, comma)));
                const auto site = parse_noise_site(item);
                if (!site) throw bad("unknown noise site '" + item + "'");
                if (std::find(c.noise_sites.begin(), c.noise_sites.end(), *site) != c.noise_sites.end())
                    throw bad("site '" + item + "' listed twice");
                c.noise_sites.push_back(*site);
                if (comma == std::string_view::npos) break;
                rest = rest.substr(comma + 1);
            }
        } else if (key == "lost_policy") {
            const auto p = parse_lost_policy(std::string(value));
            if (!p) throw bad("expected maximally_mixed or conditional");
            c.lost_policy = *p;
        } else if (key == "output_path") {
            c.output_path = std::string(value);
        } else if (key == "output_format") {
            if (value == "csv")
                c.output_format = OutputFormat::Csv;
            else if (value == "json")
                c.output_format = OutputFormat::Json;
            else
                throw bad("expected csv or json");
        } else {
            throw ConfigError(line_no, "unknown key '" + key + "'");
        }
    }

    if (c.epsilon_grid.min > c.epsilon_grid.max) {
        const auto it = seen.count("epsilon_max") ? seen.find("epsilon_max") : seen.find("epsilon_min");
        throw ConfigError(it->second, "epsilon_max must not be below epsilon_min");
    }
    try {
        c.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(line_no, e.what());
    }
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const ExperimentConfig& c) {
    if (c.output_path.find_first_of("#\n") != std::string::npos || trim(c.output_path) != c.output_path)
        throw std::invalid_argument("serialize_config: output_path cannot be written in the config grammar");
    std::string sites;
    for (auto s : c.noise_sites) sites += (sites.empty() ? "" : ",") + to_string(s);
    std::ostringstream out;
    out << "seed = " << c.seed << "\n"
        << "trials_per_point = " << c.trials_per_point << "\n"
        << "epsilon_min = " << format_real(c.epsilon_grid.min) << "\n"
        << "epsilon_max = " << format_real(c.epsilon_grid.max) << "\n"
        << "epsilon_steps = " << c.epsilon_grid.steps << "\n"
        << "n_dofs = " << c.n_dofs << "\n"
        << "noise_sites = " << sites << "\n"
        << "lost_policy = " << to_string(c.lost_policy) << "\n"
        << "output_path = " << c.output_path << "\n"
        << "output_format = " << to_string(c.output_format) << "\n"
        << "capacity_n_max = " << c.capacity_n_max << "\n";
    return out.str();
}

}  // namespace hypermux
