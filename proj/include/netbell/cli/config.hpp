// Copyright 2026 The netbell Authors
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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "netbell/cli/json_io.hpp"

namespace netbell::cli {

struct NetworkSpec {
    int parties = 0;
    std::vector<SourceEdge> sources;
};

struct SweepSpec {
    double from = 0.0;
    double to = 1.0;
    int steps = 11;
};

struct RunOptions {
    std::uint64_t seed = 0;
    std::optional<int> restarts;
    std::int64_t budget = 0;
    double tol = kSaturationTol;
    OracleMode mode = OracleMode::Exhaustive;
    int threads = 1;
    std::vector<int> cardinalities;
    std::optional<SweepSpec> sweep;
    std::optional<std::pair<double, double>> reference_window;
    bool allow_disconnected = false;
};

/// Parsed configuration. Sections are kept as validated JSON until a command
/// asks for them, because which sections are required depends on the command.
struct RunConfig {
    NetworkSpec network;
    std::optional<NetworkSpec> compare_network;
    std::optional<Json> inequality;
    std::optional<Json> states;
    std::optional<Json> strategy;
    RunOptions options;
};

/// Throws Error(InvalidConfig) on malformed input or unknown keys.
RunConfig parse_config(const Json &doc);
RunConfig load_config(const std::string &path);

NetworkTopology make_topology(const NetworkSpec &spec, const RunOptions &options);
std::map<SourceIndex, CoefficientMatrix> parse_fcbi_map(const Json &fcbi, const SeesawOptions &options);
NetworkInequality make_inequality(const RunConfig &config, const SeesawOptions &options);
/// One state per source of `topology`; a "*" entry fills unlisted sources.
SourceStates make_states(const Json &states, const NetworkTopology &topology);
TwoQubitState parse_state(const Json &spec);
/// Explicit per-slot vectors on `physical`; nullopt for "auto".
std::optional<MeasurementStrategy> parse_strategy(const Json &strategy, const NetworkTopology &physical,
                                                  const std::vector<int> &input_counts);
bool strategy_is_auto(const Json &strategy);

} // namespace netbell::cli
