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

#include "netbell/cli/commands.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "netbell/error.hpp"

namespace netbell::cli {

namespace {

SeesawOptions fcbi_options(const RunConfig &cfg) {
    SeesawOptions o;
    o.seed = cfg.options.seed;
    return o;
}

const Json &need(const std::optional<Json> &section, const char *name, const std::string &command) {
    if (!section) {
        fail(ErrorCode::InvalidConfig, "'" + command + "' needs a '" + name + "' section");
    }
    return *section;
}

NetworkTopology compare_topology(const RunConfig &cfg, const std::string &command) {
    if (!cfg.compare_network) {
        fail(ErrorCode::InvalidConfig, "'" + command + "' needs a 'compare_network' section");
    }
    return make_topology(*cfg.compare_network, cfg.options);
}

MeasurementStrategy resolve_strategy(const RunConfig &cfg, const NetworkInequality &ineq, const SourceStates &states,
                                     std::string &source) {
    const auto &spec = need(cfg.strategy, "strategy", "eval");
    if (auto explicit_strategy = parse_strategy(spec, ineq.topology(), ineq.input_counts())) {
        source = "explicit";
        return std::move(*explicit_strategy);
    }
    source = "optimal";
    return optimal_strategy(ineq, states);
}

bool all_catalog(const NetworkInequality &ineq) {
    return std::all_of(ineq.fcbi_map().begin(), ineq.fcbi_map().end(),
                       [](const auto &kv) { return kv.second.tag().kind != FcbiKind::Custom; });
}

SourceStates uniform_werner(const NetworkTopology &topo, double v) {
    return SourceStates(static_cast<std::size_t>(topo.n_sources()), werner({v}));
}

Json cmd_analyze(const RunConfig &cfg) {
    const auto topo = make_topology(cfg.network, cfg.options);
    Json out;
    out["command"] = "analyze";
    out["network"] = to_json(topo, find_leaves(topo));
    if (cfg.compare_network) {
        const auto other = make_topology(*cfg.compare_network, cfg.options);
        out["compare_network"] = to_json(other, find_leaves(other));
    }
    return out;
}

Json cmd_build(const RunConfig &cfg) {
    const auto ineq = make_inequality(cfg, fcbi_options(cfg));
    Json out;
    out["command"] = "build";
    out["network"] = to_json(ineq.topology(), ineq.leaves());
    out["inequality"] = to_json(ineq);
    return out;
}

Json cmd_bounds(const RunConfig &cfg) {
    const auto so = fcbi_options(cfg);
    const auto ineq = make_inequality(cfg, so);
    const auto states = make_states(need(cfg.states, "states", "bounds"), ineq.topology());
    Json out;
    out["command"] = "bounds";
    out["classical"] = number(ineq.classical_bound());
    out["quantum"] = number(ineq.quantum_bound());
    out["mixed"] = number(mixed_state_bound(ineq, states, so));
    Json per = Json::array();
    for (SourceIndex s = 1; s <= ineq.topology().n_sources(); ++s) {
        const auto &rho = states[static_cast<std::size_t>(s - 1)];
        Json e;
        e["source"] = s;
        e["t0"] = number(rho.t0());
        e["singular_values"] = {number(rho.singular_values()(0)), number(rho.singular_values()(1)),
                                number(rho.singular_values()(2))};
        if (const auto leaf = ineq.leaves().leaf_of_source(s)) {
            const Side side = ineq.topology().source(s).first == *leaf ? Side::First : Side::Second;
            e["leaf"] = *leaf;
            e["state_max"] = number(state_max(ineq.fcbi_map().at(s), rho, so, side));
        }
        per.push_back(std::move(e));
    }
    out["sources"] = per;
    return out;
}

Json cmd_eval(const RunConfig &cfg) {
    const auto so = fcbi_options(cfg);
    const auto ineq = make_inequality(cfg, so);
    const auto states = make_states(need(cfg.states, "states", "eval"), ineq.topology());
    std::string source;
    const auto strategy = resolve_strategy(cfg, ineq, states, source);
    Json out;
    out["command"] = "eval";
    out["report"] = to_json(report(ineq, states, strategy, source, so, cfg.options.tol));
    out["strategy"] = to_json(strategy);
    return out;
}

Json cmd_oracle(const RunConfig &cfg) {
    const auto ineq = make_inequality(cfg, fcbi_options(cfg));
    OracleOptions oo;
    oo.mode = cfg.options.mode;
    oo.budget = cfg.options.budget;
    oo.seed = cfg.options.seed;
    oo.threads = cfg.options.threads;
    const auto rep = classical_oracle(ineq, cfg.options.cardinalities, oo);
    Json out;
    out["command"] = "oracle";
    out["mode"] = cfg.options.mode == OracleMode::Exhaustive ? "exhaustive" : "random";
    out["classical_bound"] = number(ineq.classical_bound());
    out["within_bound"] = rep.best_value <= ineq.classical_bound() + 1e-9;
    out["report"] = to_json(rep);
    return out;
}

CommandResult cmd_optimize(const RunConfig &cfg) {
    const auto so = fcbi_options(cfg);
    const auto ineq = make_inequality(cfg, so);
    const auto states = make_states(need(cfg.states, "states", "optimize"), ineq.topology());
    SeesawNetworkOptions opts;
    opts.restarts = cfg.options.restarts.value_or(32);
    opts.seed = cfg.options.seed;
    opts.threads = cfg.options.threads;
    if (cfg.strategy) {
        opts.warm_start = parse_strategy(*cfg.strategy, ineq.topology(), ineq.input_counts());
        if (!opts.warm_start && all_catalog(ineq)) {
            opts.warm_start = optimal_strategy(ineq, states);
        }
    }
    const auto rep = seesaw_network(ineq, states, opts);
    CommandResult res;
    res.json["command"] = "optimize";
    res.json["quantum_bound"] = number(ineq.quantum_bound());
    res.json["mixed_bound"] = number(mixed_state_bound(ineq, states, so));
    res.json["report"] = to_json(rep);
    if (!rep.converged) {
        res.status = kExitNonConvergence;
    }
    return res;
}

CommandResult cmd_visibility(const RunConfig &cfg) {
    const auto so = fcbi_options(cfg);
    const auto ineq = make_inequality(cfg, so);
    CommandResult res;
    auto &out = res.json;
    out["command"] = "visibility";
    out["l"] = ineq.l();
    out["sources"] = ineq.topology().n_sources();
    try {
        out["critical_visibility_uniform"] = number(critical_visibility_uniform(ineq));
    } catch (const Error &e) {
        if (e.code() != ErrorCode::UnsupportedMap) {
            throw;
        }
        out["critical_visibility_uniform"] = nullptr;
    }
    const auto bis = critical_visibility_bisection(ineq, std::sqrt(0.5), 1e-12, so);
    out["critical_visibility_bisection"] = bis ? number(*bis) : Json(nullptr);
    out["product_visibility_threshold"] = number(werner_violation_threshold(ineq, {}, so));
    if (cfg.compare_network) {
        const auto other = compare_topology(cfg, "visibility");
        const auto window = visibility_window(ineq.topology(), other);
        out["window"] = to_json(window);
        if (cfg.options.reference_window) {
            const auto [lo, hi] = *cfg.options.reference_window;
            out["reference_window"] = {{"quoted", {number(lo), number(hi)}},
                                       {"comparison", to_json(compare_window(window, lo, hi))}};
        }
    }
    if (cfg.options.sweep) {
        const auto &sw = *cfg.options.sweep;
        const bool can_eval = all_catalog(ineq);
        std::ostringstream csv;
        csv << "v,S,mixed_bound,classical_bound\n";
        Json rows = Json::array();
        for (int i = 0; i < sw.steps; ++i) {
            const double v = sw.steps == 1 ? sw.from : sw.from + (sw.to - sw.from) * i / (sw.steps - 1);
            const auto states = uniform_werner(ineq.topology(), v);
            const double mixed = mixed_state_bound(ineq, states, so);
            const Json s = can_eval ? number(evaluate_S(ineq, states, optimal_strategy(ineq, states)).S) : Json(nullptr);
            rows.push_back({{"v", number(v)}, {"S", s}, {"mixed_bound", number(mixed)}});
            csv << number(v).dump() << "," << s.dump() << "," << number(mixed).dump() << ","
                << number(ineq.classical_bound()).dump() << "\n";
        }
        out["sweep"] = rows;
        res.csv = csv.str();
    }
    return res;
}

Json cmd_discriminate(const RunConfig &cfg) {
    const auto so = fcbi_options(cfg);
    const auto target = make_inequality(cfg, so);
    const auto physical = compare_topology(cfg, "discriminate");
    const auto states = make_states(need(cfg.states, "states", "discriminate"), physical);
    SeesawNetworkOptions opts;
    opts.restarts = cfg.options.restarts.value_or(64);
    opts.seed = cfg.options.seed;
    opts.threads = cfg.options.threads;
    Json out;
    out["command"] = "discriminate";
    if (cfg.strategy && !strategy_is_auto(*cfg.strategy)) {
        auto explicit_strategy = parse_strategy(*cfg.strategy, physical, target.input_counts());
        const auto eval = evaluate_S_on(target, physical, states, *explicit_strategy, cfg.options.tol);
        out["explicit"] = {{"S", number(eval.S)}, {"I", numbers(eval.I)}};
        opts.warm_start = std::move(explicit_strategy);
    }
    const auto rep = discriminate(target, physical, states, opts);
    out["target_bound"] = number(rep.target_bound);
    out["verdict"] = std::string(to_string(rep.verdict));
    out["exceeds_bound"] = rep.verdict == Verdict::Violated;
    out["report"] = to_json(rep.search);
    const auto tl = find_leaves(target.topology());
    const auto pl = find_leaves(physical);
    if (tl.l() >= 2 && pl.l() >= 2) {
        const auto window = visibility_window(target.topology(), physical);
        out["window"] = to_json(window);
        if (cfg.options.reference_window) {
            const auto [lo, hi] = *cfg.options.reference_window;
            out["reference_window"] = {{"quoted", {number(lo), number(hi)}},
                                       {"comparison", to_json(compare_window(window, lo, hi))}};
        }
    }
    return out;
}

Json error_json(const std::string &code, const std::string &message) {
    Json j;
    j["error"] = {{"code", code}, {"message", message}};
    return j;
}

} // namespace

const std::vector<std::string> &command_names() {
    static const std::vector<std::string> names{"analyze",  "build",      "eval",        "bounds",
                                                "oracle",   "optimize",   "visibility",  "discriminate"};
    return names;
}

CommandResult execute(const std::string &command, const RunConfig &config) {
    if (command == "analyze") {
        return {cmd_analyze(config), {}, kExitOk};
    }
    if (command == "build") {
        return {cmd_build(config), {}, kExitOk};
    }
    if (command == "bounds") {
        return {cmd_bounds(config), {}, kExitOk};
    }
    if (command == "eval") {
        return {cmd_eval(config), {}, kExitOk};
    }
    if (command == "oracle") {
        return {cmd_oracle(config), {}, kExitOk};
    }
    if (command == "optimize") {
        return cmd_optimize(config);
    }
    if (command == "visibility") {
        return cmd_visibility(config);
    }
    if (command == "discriminate") {
        return {cmd_discriminate(config), {}, kExitOk};
    }
    fail(ErrorCode::InvalidArgument, "unknown command '" + command + "'");
}

int run(const std::string &command, const std::string &config_path, const Overrides &overrides, std::ostream &out,
        std::ostream &err) {
    try {
        auto cfg = load_config(config_path);
        auto &o = cfg.options;
        if (overrides.restarts) {
            if (*overrides.restarts < 1) {
                fail(ErrorCode::InvalidArgument, "--restarts must be positive");
            }
            o.restarts = overrides.restarts;
        }
        if (overrides.seed) {
            o.seed = *overrides.seed;
        }
        if (overrides.budget) {
            if (*overrides.budget < 0) {
                fail(ErrorCode::InvalidArgument, "--budget must be non-negative");
            }
            o.budget = *overrides.budget;
        }
        if (overrides.mode) {
            if (*overrides.mode == "exhaustive") {
                o.mode = OracleMode::Exhaustive;
            } else if (*overrides.mode == "random") {
                o.mode = OracleMode::Random;
            } else {
                fail(ErrorCode::InvalidArgument, "--mode must be exhaustive or random");
            }
        }
        if (overrides.tol) {
            if (!(*overrides.tol > 0.0)) {
                fail(ErrorCode::InvalidArgument, "--tol must be positive");
            }
            o.tol = *overrides.tol;
        }
        if (overrides.threads) {
            o.threads = std::max(1, *overrides.threads);
        }
        o.allow_disconnected = o.allow_disconnected || overrides.allow_disconnected;
        if (overrides.format != "json" && overrides.format != "csv") {
            fail(ErrorCode::InvalidArgument, "--format must be json or csv");
        }

        const auto result = execute(command, cfg);
        std::string text;
        if (overrides.format == "csv") {
            if (result.csv.empty()) {
                fail(ErrorCode::InvalidArgument, "csv output is only available for visibility sweeps");
            }
            text = result.csv;
        } else {
            text = dump(result.json);
        }
        if (overrides.output) {
            std::ofstream f(*overrides.output, std::ios::binary);
            if (!f) {
                fail(ErrorCode::InvalidArgument, "cannot write '" + *overrides.output + "'");
            }
            f << text;
        } else {
            out << text;
        }
        if (result.status == kExitNonConvergence) {
            err << error_json("NonConvergence", "best restart did not meet the stagnation criterion").dump() << "\n";
        }
        return result.status;
    } catch (const NonConvergenceError &e) {
        Json j = error_json(std::string(to_string(e.code())), e.what());
        j["error"]["best_value"] = number(e.best_value());
        err << j.dump() << "\n";
        return kExitNonConvergence;
    } catch (const Error &e) {
        err << error_json(std::string(to_string(e.code())), e.what()).dump() << "\n";
        return kExitValidation;
    } catch (const Json::exception &e) {
        err << error_json("InvalidConfig", e.what()).dump() << "\n";
        return kExitValidation;
    }
}

} // namespace netbell::cli
