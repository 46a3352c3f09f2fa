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

#include "netbell/builder.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "netbell/error.hpp"

namespace netbell {

std::string CorrelatorTerm::describe() const {
    std::ostringstream os;
    os << "I_" << column << " = <";
    bool first = true;
    for (const auto p : fixed_parties) {
        os << (first ? "" : " ") << "A" << p << "[" << column << "]";
        first = false;
    }
    for (const auto &leaf : leaf_terms) {
        os << (first ? "" : " ") << "(";
        bool first_coeff = true;
        for (std::size_t x = 0; x < leaf.coefficients.size(); ++x) {
            const double c = leaf.coefficients[x];
            if (c == 0.0) {
                continue;
            }
            os << (first_coeff ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
            if (std::abs(c) != 1.0) {
                os << std::abs(c) << "*";
            }
            os << "A" << leaf.party << "[" << x + 1 << "]";
            first_coeff = false;
        }
        if (first_coeff) {
            os << "0";
        }
        os << ")";
        first = false;
    }
    os << ">";
    return os.str();
}

const CoefficientMatrix &NetworkInequality::fcbi_for_leaf(PartyIndex leaf) const {
    const auto src = leaves_.peripheral_source(leaf);
    if (!src) {
        fail(ErrorCode::InvalidArgument, "party " + std::to_string(leaf) + " is not a leaf");
    }
    return fcbi_.at(*src);
}

int NetworkInequality::input_count(PartyIndex p) const {
    return is_leaf(p) ? fcbi_for_leaf(p).rows() : k_;
}

std::vector<int> NetworkInequality::input_counts() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(topology_.n_parties()));
    for (PartyIndex p = 1; p <= topology_.n_parties(); ++p) {
        out.push_back(input_count(p));
    }
    return out;
}

CorrelatorTerm NetworkInequality::term(int j) const {
    if (j < 1 || j > k_) {
        fail(ErrorCode::InvalidArgument, "column " + std::to_string(j) + " outside [1, k]");
    }
    CorrelatorTerm out;
    out.column = j;
    out.fixed_parties = leaves_.intermediate_set;
    for (const auto &[leaf, src] : leaves_.peripheral_map) {
        const auto &m = fcbi_.at(src);
        LeafTerm t{leaf, src, {}};
        for (int x = 0; x < m.rows(); ++x) {
            t.coefficients.push_back(m.entries()(x, j - 1));
        }
        out.leaf_terms.push_back(std::move(t));
    }
    return out;
}

double geometric_root(const std::vector<double> &values, int l) {
    double log_sum = 0.0;
    for (const double v : values) {
        if (v < 0.0) {
            fail(ErrorCode::InvalidArgument, "geometric root of a negative factor");
        }
        if (v == 0.0) {
            return 0.0;
        }
        log_sum += std::log(v);
    }
    return std::exp(log_sum / l);
}

NetworkInequality build_inequality(NetworkTopology topology, int k, std::map<SourceIndex, CoefficientMatrix> fcbi_map) {
    if (topology.n_parties() == 2) {
        fail(ErrorCode::DegenerateBipartite,
             "a single source joining two leaves is a plain FCBI; evaluate it directly");
    }
    if (k < 1) {
        fail(ErrorCode::BadK, "intermediate parties need at least one input");
    }
    auto leaves = find_leaves(topology);
    if (leaves.l() < 2) {
        fail(ErrorCode::TooFewLeaves, "the construction needs at least two leaf parties, found " +
                                          std::to_string(leaves.l()));
    }
    if (leaves.source_joins_two_leaves) {
        fail(ErrorCode::LeafPairSource, "a source joins two leaf parties");
    }
    for (const auto &[leaf, src] : leaves.peripheral_map) {
        const auto it = fcbi_map.find(src);
        if (it == fcbi_map.end()) {
            fail(ErrorCode::MissingFcbi, "no FCBI given for peripheral source " + std::to_string(src) +
                                             " (leaf party " + std::to_string(leaf) + ")");
        }
        if (it->second.cols() != k) {
            fail(ErrorCode::ColumnMismatch, "FCBI for source " + std::to_string(src) + " has " +
                                                std::to_string(it->second.cols()) + " columns, expected k = " +
                                                std::to_string(k));
        }
    }
    for (const auto &[src, m] : fcbi_map) {
        if (!leaves.leaf_of_source(src)) {
            fail(ErrorCode::ExtraFcbi, "source " + std::to_string(src) + " is not a peripheral source");
        }
    }

    NetworkInequality out;
    out.topology_ = std::move(topology);
    out.leaves_ = std::move(leaves);
    out.k_ = k;
    out.fcbi_ = std::move(fcbi_map);
    out.classical_bound_ = classical_bound_network(out);
    out.quantum_bound_ = quantum_bound_network(out);
    return out;
}

double classical_bound_network(const NetworkInequality &ineq) {
    std::vector<double> betas;
    for (const auto &[src, m] : ineq.fcbi_map()) {
        betas.push_back(m.classical_bound());
    }
    return geometric_root(betas, ineq.l());
}

double quantum_bound_network(const NetworkInequality &ineq) {
    std::vector<double> opts;
    for (const auto &[src, m] : ineq.fcbi_map()) {
        opts.push_back(m.quantum_opt());
    }
    return geometric_root(opts, ineq.l());
}

void check_states(const NetworkTopology &topology, const SourceStates &states) {
    if (static_cast<int>(states.size()) != topology.n_sources()) {
        fail(ErrorCode::InvalidArgument, "expected " + std::to_string(topology.n_sources()) +
                                             " source states, got " + std::to_string(states.size()));
    }
}

double mixed_state_bound(const NetworkInequality &ineq, const SourceStates &states, const SeesawOptions &options) {
    const auto &topo = ineq.topology();
    check_states(topo, states);
    std::vector<double> factors;
    factors.reserve(static_cast<std::size_t>(topo.n_sources()));
    for (SourceIndex s = 1; s <= topo.n_sources(); ++s) {
        const auto &rho = states[static_cast<std::size_t>(s - 1)];
        const auto leaf = ineq.leaves().leaf_of_source(s);
        if (leaf) {
            const Side side = topo.source(s).first == *leaf ? Side::First : Side::Second;
            factors.push_back(state_max(ineq.fcbi_map().at(s), rho, options, side));
        } else {
            factors.push_back(rho.t0());
        }
    }
    return geometric_root(factors, ineq.l());
}

} // namespace netbell
