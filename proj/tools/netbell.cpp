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

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "netbell/cli/commands.hpp"

int main(int argc, char **argv) {
    CLI::App app{"netbell: nonlinear Bell inequalities for multi-source networks"};

    std::string command;
    std::string config;
    netbell::cli::Overrides ov;
    int restarts = 0;
    long long seed = 0;
    long long budget = 0;
    std::string mode;
    double tol = 0.0;
    int threads = 0;
    std::string output;

    app.add_option("command", command, "analyze | build | eval | bounds | oracle | optimize | visibility | discriminate")
        ->required()
        ->check(CLI::IsMember(netbell::cli::command_names()));
    app.add_option("config", config, "JSON config file")->required();
    auto *o_restarts = app.add_option("--restarts", restarts, "see-saw restarts");
    auto *o_seed = app.add_option("--seed", seed, "master seed")->check(CLI::NonNegativeNumber);
    auto *o_budget = app.add_option("--budget", budget, "random local models to sample")->check(CLI::NonNegativeNumber);
    auto *o_mode = app.add_option("--mode", mode, "oracle mode")->check(CLI::IsMember({"exhaustive", "random"}));
    auto *o_tol = app.add_option("--tol", tol, "saturation tolerance");
    auto *o_threads = app.add_option("--threads", threads, "worker threads (results do not depend on it)");
    app.add_option("--format", ov.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    auto *o_output = app.add_option("--output", output, "write the report here instead of stdout");
    app.add_flag("--allow-disconnected", ov.allow_disconnected, "accept disconnected networks with a warning");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);
        }
        std::cerr << R"({"error":{"code":"InvalidArgument","message":)" << nlohmann::json(e.what()).dump() << "}}\n";
        return netbell::cli::kExitValidation;
    }
    if (*o_restarts) ov.restarts = restarts;
    if (*o_seed) ov.seed = static_cast<std::uint64_t>(seed);
    if (*o_budget) ov.budget = budget;
    if (*o_mode) ov.mode = mode;
    if (*o_tol) ov.tol = tol;
    if (*o_threads) ov.threads = threads;
    if (*o_output) ov.output = output;
    return netbell::cli::run(command, config, ov, std::cout, std::cerr);
}
