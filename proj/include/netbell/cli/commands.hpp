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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "netbell/cli/config.hpp"

namespace netbell::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNonConvergence = 3;

const std::vector<std::string> &command_names();

struct CommandResult {
    Json json;
    std::string csv; // only for visibility sweeps
    int status = kExitOk;
};

/// Runs one command on a parsed config. Library errors propagate.
CommandResult execute(const std::string &command, const RunConfig &config);

/// Command-line overrides applied on top of the config's options.
struct Overrides {
    std::optional<int> restarts;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> budget;
    std::optional<std::string> mode;
    std::optional<double> tol;
    std::optional<int> threads;
    std::string format = "json";
    std::optional<std::string> output;
    bool allow_disconnected = false;
};

/// Loads, executes and writes the result, mapping errors to exit codes and
/// JSON error objects on `err`.
int run(const std::string &command, const std::string &config_path, const Overrides &overrides, std::ostream &out,
        std::ostream &err);

} // namespace netbell::cli
