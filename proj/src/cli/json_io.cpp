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

#include "netbell/cli/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace netbell::cli {

Json number(double value) {
    if (!std::isfinite(value)) {
        return nullptr;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    const double rounded = std::stod(buf);
    return rounded == 0.0 ? 0.0 : rounded;
}

Json numbers(const std::vector<double> &values) {
    Json out = Json::array();
    for (const double v : values) {
        out.push_back(number(v));
    }
    return out;
}

Json matrix(const Eigen::MatrixXd &m) {
    Json out = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(number(m(r, c)));
        }
        out.push_back(std::move(row));
    }
    return out;
}

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

Json to_json(const NetworkTopology &topology, const LeafAnalysis &leaves) {
    Json out;
    out["parties"] = topology.n_parties();
    out["sources"] = topology.n_sources();
    Json edges = Json::array();
    for (const auto &e : topology.edges()) {
        edges.push_back({e.first, e.second});
    }
    out["edges"] = edges;
    out["connected"] = topology.connected();
    out["warnings"] = topology.warnings();
    Json degrees = Json::array();
    for (PartyIndex p = 1; p <= topology.n_parties(); ++p) {
        degrees.push_back(topology.degree(p));
    }
    out["degrees"] = degrees;
    out["l"] = leaves.l();
    out["leaves"] = leaves.leaf_set;
    out["intermediate"] = leaves.intermediate_set;
    Json pmap = Json::array();
    for (const auto &[leaf, src] : leaves.peripheral_map) {
        pmap.push_back({{"leaf", leaf}, {"source", src}});
    }
    out["peripheral_map"] = pmap;
    out["peripheral_sources"] = leaves.peripheral_sources();
    out["source_joins_two_leaves"] = leaves.source_joins_two_leaves;
    return out;
}

Json to_json(const NetworkInequality &ineq) {
    Json out;
    out["k"] = ineq.k();
    out["l"] = ineq.l();
    Json fcbi = Json::array();
    for (const auto &[src, m] : ineq.fcbi_map()) {
        Json f;
        f["source"] = src;
        f["leaf"] = *ineq.leaves().leaf_of_source(src);
        f["name"] = m.tag().name();
        f["rows"] = m.rows();
        f["cols"] = m.cols();
        f["classical_bound"] = number(m.classical_bound());
        f["quantum_opt"] = number(m.quantum_opt());
        f["matrix"] = matrix(m.entries());
        fcbi.push_back(std::move(f));
    }
    out["fcbi"] = fcbi;
    out["classical_bound"] = number(ineq.classical_bound());
    out["quantum_bound"] = number(ineq.quantum_bound());
    Json terms = Json::array();
    for (int j = 1; j <= ineq.k(); ++j) {
        terms.push_back(ineq.term(j).describe());
    }
    out["terms"] = terms;
    return out;
}

Json to_json(const MeasurementStrategy &strategy) {
    Json out = Json::object();
    for (PartyIndex p = 1; p <= strategy.n_parties(); ++p) {
        Json party = Json::object();
        for (int x = 1; x <= strategy.input_count(p); ++x) {
            Json input = Json::object();
            for (const SourceIndex s : strategy.sources_of(p)) {
                const auto &n = strategy.at(p, x, s).bloch();
                input[std::to_string(s)] = {number(n(0)), number(n(1)), number(n(2))};
            }
            party[std::to_string(x)] = std::move(input);
        }
        out[std::to_string(p)] = std::move(party);
    }
    return out;
}

Json to_json(const LocalModel &model) {
    Json out;
    out["cardinalities"] = model.cardinalities;
    Json weights = Json::array();
    for (const auto &w : model.weights) {
        weights.push_back(numbers(w));
    }
    out["weights"] = weights;
    Json responses = Json::array();
    for (const auto &t : model.responses) {
        Json row = Json::array();
        for (const auto a : t) {
            row.push_back(static_cast<int>(a));
        }
        responses.push_back(std::move(row));
    }
    out["responses"] = responses;
    return out;
}

Json to_json(const ConditionReport &report) {
    Json out;
    out["X"] = matrix(report.X);
    out["alignment"] = matrix(report.X_alignment);
    out["x_singvals"] = numbers(std::vector<double>(report.x_singvals.data(),
                                                    report.x_singvals.data() + report.x_singvals.size()));
    out["rank1"] = report.rank1;
    out["zero_column"] = report.zero_column;
    Json res = Json::array();
    for (const auto &r : report.intermediate_residuals) {
        res.push_back({{"source", r.source}, {"input", r.input}, {"residual", number(r.residual)}});
    }
    out["intermediate_residuals"] = res;
    out["saturated"] = report.saturated;
    return out;
}

Json to_json(const ViolationReport &report) {
    Json out;
    out["S"] = number(report.S);
    out["I"] = numbers(report.I);
    out["classical_bound"] = number(report.classical_bound);
    out["quantum_bound"] = number(report.quantum_bound);
    out["mixed_bound"] = number(report.mixed_bound);
    out["flags"] = {{"violates_classical", report.violates_classical},
                    {"saturates_quantum", report.saturates_quantum},
                    {"saturates_mixed", report.saturates_mixed},
                    {"conditions_met", report.conditions_met}};
    out["conditions"] = to_json(report.conditions);
    out["provenance"] = {{"strategy", report.strategy_source}, {"seed", report.seed}, {"tol", number(report.tol)}};
    return out;
}

Json to_json(const SearchReport &report) {
    Json out;
    out["best_value"] = number(report.best_value);
    out["restarts_used"] = report.restarts_used;
    out["seed"] = report.seed;
    out["converged"] = report.converged;
    out["history"] = numbers(report.history);
    if (report.best_strategy) {
        out["best_strategy"] = to_json(*report.best_strategy);
    }
    if (report.best_model) {
        out["best_model"] = to_json(*report.best_model);
    }
    return out;
}

Json to_json(const VisibilityWindow &window) {
    Json out;
    out["threshold_a"] = number(window.threshold_a);
    out["threshold_b"] = number(window.threshold_b);
    out["l_a"] = window.l_a;
    out["sources_a"] = window.m_a;
    out["l_b"] = window.l_b;
    out["sources_b"] = window.m_b;
    out["window"] = {number(window.lower), number(window.upper)};
    return out;
}

Json to_json(const WindowComparison &comparison) {
    Json out;
    out["matches"] = comparison.matches;
    out["implied_sources_lower"] = number(comparison.implied_sources_lower);
    out["implied_sources_upper"] = number(comparison.implied_sources_upper);
    out["l_lower"] = comparison.l_lower;
    out["l_upper"] = comparison.l_upper;
    return out;
}

} // namespace netbell::cli
