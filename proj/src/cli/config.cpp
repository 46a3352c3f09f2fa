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

#include "netbell/cli/config.hpp"

#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "netbell/error.hpp"

namespace netbell::cli {

namespace {

[[noreturn]] void bad(const std::string &msg) { fail(ErrorCode::InvalidConfig, msg); }

void only_keys(const Json &obj, const std::string &where, std::initializer_list<const char *> allowed) {
    if (!obj.is_object()) {
        bad(where + " must be an object");
    }
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto &[key, value] : obj.items()) {
        if (!ok.count(key)) {
            bad("unknown key '" + key + "' in " + where);
        }
    }
}

const Json &require(const Json &obj, const char *key, const std::string &where) {
    if (!obj.contains(key)) {
        bad(where + " is missing '" + key + "'");
    }
    return obj.at(key);
}

double get_number(const Json &v, const std::string &where) {
    if (!v.is_number()) {
        bad(where + " must be a number");
    }
    return v.get<double>();
}

std::int64_t get_integer(const Json &v, const std::string &where) {
    if (!v.is_number_integer()) {
        bad(where + " must be an integer");
    }
    return v.get<std::int64_t>();
}

int parse_index(const std::string &key, const std::string &where) {
    static const std::regex digits("[1-9][0-9]{0,8}");
    if (!std::regex_match(key, digits)) {
        bad(where + " key '" + key + "' is not a positive index");
    }
    return std::stoi(key);
}

NetworkSpec parse_network(const Json &j, const std::string &where) {
    only_keys(j, where, {"parties", "sources"});
    NetworkSpec spec;
    const auto n = get_integer(require(j, "parties", where), where + ".parties");
    if (n < 1 || n > 100000000) {
        bad(where + ".parties out of range");
    }
    spec.parties = static_cast<int>(n);
    const auto &src = require(j, "sources", where);
    if (!src.is_array()) {
        bad(where + ".sources must be an array of [a, b] pairs");
    }
    for (const auto &e : src) {
        if (!e.is_array() || e.size() != 2) {
            bad(where + ".sources entries must be [a, b] pairs");
        }
        spec.sources.push_back({static_cast<PartyIndex>(get_integer(e[0], where + ".sources")),
                                static_cast<PartyIndex>(get_integer(e[1], where + ".sources"))});
    }
    return spec;
}

RunOptions parse_options(const Json &j) {
    only_keys(j, "options", {"seed", "restarts", "budget", "tol", "mode", "threads", "cardinalities", "sweep",
                             "reference_window", "allow_disconnected"});
    RunOptions o;
    if (j.contains("seed")) {
        const auto s = get_integer(j["seed"], "options.seed");
        if (s < 0) {
            bad("options.seed must be non-negative");
        }
        o.seed = static_cast<std::uint64_t>(s);
    }
    if (j.contains("restarts")) {
        const auto r = get_integer(j["restarts"], "options.restarts");
        if (r < 1 || r > 1000000) {
            bad("options.restarts out of range");
        }
        o.restarts = static_cast<int>(r);
    }
    if (j.contains("budget")) {
        o.budget = get_integer(j["budget"], "options.budget");
        if (o.budget < 0) {
            bad("options.budget must be non-negative");
        }
    }
    if (j.contains("tol")) {
        o.tol = get_number(j["tol"], "options.tol");
        if (!(o.tol > 0.0)) {
            bad("options.tol must be positive");
        }
    }
    if (j.contains("mode")) {
        const auto &m = j["mode"];
        if (m == "exhaustive") {
            o.mode = OracleMode::Exhaustive;
        } else if (m == "random") {
            o.mode = OracleMode::Random;
        } else {
            bad("options.mode must be \"exhaustive\" or \"random\"");
        }
    }
    if (j.contains("threads")) {
        const auto t = get_integer(j["threads"], "options.threads");
        if (t < 1 || t > 1024) {
            bad("options.threads out of range");
        }
        o.threads = static_cast<int>(t);
    }
    if (j.contains("cardinalities")) {
        if (!j["cardinalities"].is_array()) {
            bad("options.cardinalities must be an array");
        }
        for (const auto &c : j["cardinalities"]) {
            const auto v = get_integer(c, "options.cardinalities");
            if (v < 1 || v > 4096) {
                bad("options.cardinalities entries out of range");
            }
            o.cardinalities.push_back(static_cast<int>(v));
        }
    }
    if (j.contains("sweep")) {
        const auto &s = j["sweep"];
        only_keys(s, "options.sweep", {"from", "to", "steps"});
        SweepSpec sw;
        sw.from = get_number(require(s, "from", "options.sweep"), "options.sweep.from");
        sw.to = get_number(require(s, "to", "options.sweep"), "options.sweep.to");
        const auto steps = get_integer(require(s, "steps", "options.sweep"), "options.sweep.steps");
        if (!(sw.from >= 0.0 && sw.to <= 1.0 && sw.from <= sw.to) || steps < 1 || steps > 100000) {
            bad("options.sweep needs 0 <= from <= to <= 1 and 1 <= steps");
        }
        sw.steps = static_cast<int>(steps);
        o.sweep = sw;
    }
    if (j.contains("reference_window")) {
        const auto &w = j["reference_window"];
        if (!w.is_array() || w.size() != 2) {
            bad("options.reference_window must be [lower, upper]");
        }
        o.reference_window = std::pair{get_number(w[0], "options.reference_window"),
                                       get_number(w[1], "options.reference_window")};
    }
    if (j.contains("allow_disconnected")) {
        if (!j["allow_disconnected"].is_boolean()) {
            bad("options.allow_disconnected must be a boolean");
        }
        o.allow_disconnected = j["allow_disconnected"].get<bool>();
    }
    return o;
}

Eigen::Matrix4d real_block(const Json &m, const std::string &where) {
    if (!m.is_array() || m.size() != 4) {
        bad(where + " must be a 4x4 array");
    }
    Eigen::Matrix4d out;
    for (int r = 0; r < 4; ++r) {
        if (!m[static_cast<std::size_t>(r)].is_array() || m[static_cast<std::size_t>(r)].size() != 4) {
            bad(where + " must be a 4x4 array");
        }
        for (int c = 0; c < 4; ++c) {
            out(r, c) = get_number(m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)], where);
        }
    }
    return out;
}

CoefficientMatrix parse_fcbi(const Json &spec, const SeesawOptions &options) {
    static const std::regex chained_re("chained\\(([0-9]+)\\)");
    if (spec.is_string()) {
        const auto s = spec.get<std::string>();
        std::smatch m;
        if (s == "chsh") {
            return make_chsh();
        }
        if (s == "ebi") {
            return make_ebi();
        }
        if (std::regex_match(s, m, chained_re)) {
            return make_chained(std::stoi(m[1].str()));
        }
        bad("unknown FCBI '" + s + "'");
    }
    if (spec.is_object() && spec.size() == 1) {
        if (spec.contains("chained")) {
            return make_chained(static_cast<int>(get_integer(spec["chained"], "fcbi.chained")));
        }
        if (spec.contains("custom")) {
            const auto &rows = spec["custom"];
            if (!rows.is_array() || rows.empty() || !rows[0].is_array() || rows[0].empty()) {
                bad("custom FCBI must be a non-empty matrix");
            }
            Eigen::MatrixXd e(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
            for (std::size_t r = 0; r < rows.size(); ++r) {
                if (!rows[r].is_array() || rows[r].size() != rows[0].size()) {
                    bad("custom FCBI rows must have equal length");
                }
                for (std::size_t c = 0; c < rows[r].size(); ++c) {
                    e(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                        get_number(rows[r][c], "custom FCBI entry");
                }
            }
            return make_custom(e, options);
        }
    }
    bad("FCBI must be \"chsh\", \"ebi\", \"chained(k)\", {\"chained\": k} or {\"custom\": [[...]]}");
}

} // namespace

RunConfig parse_config(const Json &doc) {
    only_keys(doc, "config", {"network", "compare_network", "inequality", "states", "strategy", "options"});
    RunConfig cfg;
    cfg.network = parse_network(require(doc, "network", "config"), "network");
    if (doc.contains("compare_network")) {
        cfg.compare_network = parse_network(doc["compare_network"], "compare_network");
    }
    if (doc.contains("inequality")) {
        const auto &ineq = doc["inequality"];
        only_keys(ineq, "inequality", {"k", "fcbi"});
        get_integer(require(ineq, "k", "inequality"), "inequality.k");
        if (!require(ineq, "fcbi", "inequality").is_object()) {
            bad("inequality.fcbi must map source indices to FCBI specs");
        }
        cfg.inequality = ineq;
    }
    if (doc.contains("states")) {
        if (!doc["states"].is_object()) {
            bad("states must map source indices to state specs");
        }
        cfg.states = doc["states"];
    }
    if (doc.contains("strategy")) {
        cfg.strategy = doc["strategy"];
    }
    if (doc.contains("options")) {
        cfg.options = parse_options(doc["options"]);
    }
    return cfg;
}

RunConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        bad("cannot open config file '" + path + "'");
    }
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
        bad(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(doc);
}

NetworkTopology make_topology(const NetworkSpec &spec, const RunOptions &options) {
    return build_topology(spec.parties, spec.sources, {options.allow_disconnected});
}

std::map<SourceIndex, CoefficientMatrix> parse_fcbi_map(const Json &fcbi, const SeesawOptions &options) {
    std::map<SourceIndex, CoefficientMatrix> out;
    for (const auto &[key, spec] : fcbi.items()) {
        out.emplace(parse_index(key, "inequality.fcbi"), parse_fcbi(spec, options));
    }
    return out;
}

NetworkInequality make_inequality(const RunConfig &config, const SeesawOptions &options) {
    if (!config.inequality) {
        bad("this command needs an 'inequality' section");
    }
    const auto &ineq = *config.inequality;
    return build_inequality(make_topology(config.network, config.options),
                            static_cast<int>(ineq["k"].get<std::int64_t>()), parse_fcbi_map(ineq["fcbi"], options));
}

TwoQubitState parse_state(const Json &spec) {
    if (spec.is_string()) {
        const auto s = spec.get<std::string>();
        if (s == "max_entangled" || s == "phi_plus") {
            return maximally_entangled();
        }
        if (s == "classical_zz") {
            return classical_zz();
        }
        if (s == "product_00") {
            return product_zero();
        }
        if (s == "maximally_mixed") {
            return werner({0.0});
        }
        bad("unknown state '" + s + "'");
    }
    if (!spec.is_object()) {
        bad("state spec must be a string or an object");
    }
    const auto &type = require(spec, "type", "state");
    if (type == "werner") {
        only_keys(spec, "werner state", {"type", "v", "a"});
        WernerSpec w;
        w.visibility = get_number(require(spec, "v", "werner state"), "werner.v");
        if (spec.contains("a")) {
            w.schmidt_a = get_number(spec["a"], "werner.a");
        }
        return werner(w);
    }
    if (type == "pure") {
        only_keys(spec, "pure state", {"type", "a"});
        return pure_schmidt(get_number(require(spec, "a", "pure state"), "pure.a"));
    }
    if (type == "classical_zz" || type == "product_00" || type == "max_entangled" || type == "maximally_mixed") {
        only_keys(spec, "state", {"type"});
        return parse_state(Json(type.get<std::string>()));
    }
    if (type == "random") {
        only_keys(spec, "random state", {"type", "seed"});
        const auto seed = get_integer(require(spec, "seed", "random state"), "random.seed");
        if (seed < 0) {
            bad("random.seed must be non-negative");
        }
        return random_mixed(static_cast<std::uint64_t>(seed));
    }
    if (type == "matrix") {
        only_keys(spec, "matrix state", {"type", "re", "im"});
        const Eigen::Matrix4d re = real_block(require(spec, "re", "matrix state"), "matrix.re");
        const Eigen::Matrix4d im = spec.contains("im") ? real_block(spec["im"], "matrix.im") : Eigen::Matrix4d::Zero();
        Eigen::Matrix4cd m;
        m.real() = re;
        m.imag() = im;
        return TwoQubitState::from_matrix(m);
    }
    bad("unknown state type");
}

SourceStates make_states(const Json &states, const NetworkTopology &topology) {
    std::vector<std::optional<TwoQubitState>> slots(static_cast<std::size_t>(topology.n_sources()));
    std::optional<TwoQubitState> fallback;
    for (const auto &[key, spec] : states.items()) {
        if (key == "*") {
            fallback = parse_state(spec);
            continue;
        }
        const int s = parse_index(key, "states");
        if (s > topology.n_sources()) {
            bad("states lists source " + key + " but the network has " + std::to_string(topology.n_sources()) +
                " sources");
        }
        slots[static_cast<std::size_t>(s - 1)] = parse_state(spec);
    }
    SourceStates out;
    for (std::size_t s = 0; s < slots.size(); ++s) {
        if (slots[s]) {
            out.push_back(*slots[s]);
        } else if (fallback) {
            out.push_back(*fallback);
        } else {
            bad("no state for source " + std::to_string(s + 1));
        }
    }
    return out;
}

bool strategy_is_auto(const Json &strategy) {
    return strategy == "auto" || (strategy.is_object() && strategy.size() == 1 && strategy.contains("auto") &&
                                  strategy["auto"] == "optimal");
}

std::optional<MeasurementStrategy> parse_strategy(const Json &strategy, const NetworkTopology &physical,
                                                  const std::vector<int> &input_counts) {
    if (strategy_is_auto(strategy)) {
        return std::nullopt;
    }
    if (!strategy.is_object()) {
        bad("strategy must be \"auto\" or {party: {input: {source: [nx, ny, nz]}}}");
    }
    MeasurementStrategy out(physical, input_counts);
    for (const auto &[pkey, inputs] : strategy.items()) {
        const int p = parse_index(pkey, "strategy");
        if (p > physical.n_parties() || !inputs.is_object()) {
            bad("strategy party '" + pkey + "' is out of range or not an object");
        }
        for (const auto &[xkey, sources] : inputs.items()) {
            const int x = parse_index(xkey, "strategy party " + pkey);
            if (!sources.is_object()) {
                bad("strategy input '" + xkey + "' of party " + pkey + " must be an object");
            }
            for (const auto &[skey, vec] : sources.items()) {
                const int s = parse_index(skey, "strategy input");
                if (!vec.is_array() || vec.size() != 3) {
                    bad("strategy entries must be 3-vectors");
                }
                const Eigen::Vector3d n(get_number(vec[0], "strategy"), get_number(vec[1], "strategy"),
                                        get_number(vec[2], "strategy"));
                out.set(p, x, s, QubitObservable::along(n));
            }
        }
    }
    out.validate();
    return out;
}

} // namespace netbell::cli
