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

// Reference computations for the test suites. Everything here is written
// against dense matrices or brute-force loops so it shares no code path with
// the library routines it checks.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <queue>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "netbell/builder.hpp"
#include "netbell/evaluator.hpp"
#include "netbell/fcbi.hpp"
#include "netbell/qstate.hpp"
#include "netbell/topology.hpp"

namespace netbell::ref {

inline Eigen::Matrix2cd pauli_dot(const Eigen::Vector3d &n) {
    using C = std::complex<double>;
    Eigen::Matrix2cd m;
    m << C(n(2), 0), C(n(0), -n(1)), C(n(0), n(1)), C(-n(2), 0);
    return m;
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// ⊗_s ρ_s in the order (source 1 first, source 1 second, source 2 first, ...).
inline Eigen::MatrixXcd dense_state(const SourceStates &states) {
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(1, 1);
    for (const auto &s : states) {
        rho = kron(rho, s.matrix());
    }
    return rho;
}

/// Embeds ⊗_p A_p (each A_p on the party's qubits in ascending source order)
/// into the global qubit order by explicit index permutation.
inline Eigen::MatrixXcd dense_operator(const NetworkTopology &topo, const std::vector<Eigen::MatrixXcd> &party_ops) {
    const int nq = 2 * topo.n_sources();
    std::vector<int> order; // party-ordered list of global qubits
    for (PartyIndex p = 1; p <= topo.n_parties(); ++p) {
        for (const auto &inc : topo.incident(p)) {
            order.push_back(2 * (inc.source - 1) + (inc.side == Side::First ? 0 : 1));
        }
    }
    Eigen::MatrixXcd party_order = Eigen::MatrixXcd::Identity(1, 1);
    for (const auto &a : party_ops) {
        party_order = kron(party_order, a);
    }
    const Eigen::Index dim = Eigen::Index{1} << nq;
    const auto to_party = [&](Eigen::Index g) {
        Eigen::Index h = 0;
        for (int pos = 0; pos < nq; ++pos) {
            const int q = order[static_cast<std::size_t>(pos)];
            const auto bit = (g >> (nq - 1 - q)) & 1;
            h |= bit << (nq - 1 - pos);
        }
        return h;
    };
    std::vector<Eigen::Index> map(static_cast<std::size_t>(dim));
    for (Eigen::Index g = 0; g < dim; ++g) {
        map[static_cast<std::size_t>(g)] = to_party(g);
    }
    Eigen::MatrixXcd out(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c) {
            out(r, c) = party_order(map[static_cast<std::size_t>(r)], map[static_cast<std::size_t>(c)]);
        }
    }
    return out;
}

inline double dense_correlator(const NetworkTopology &topo, const SourceStates &states,
                               const MeasurementStrategy &strategy, const std::vector<int> &inputs) {
    std::vector<Eigen::MatrixXcd> ops;
    for (PartyIndex p = 1; p <= topo.n_parties(); ++p) {
        Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(1, 1);
        for (const auto &inc : topo.incident(p)) {
            a = kron(a, pauli_dot(strategy.at(p, inputs[static_cast<std::size_t>(p - 1)], inc.source).bloch()));
        }
        ops.push_back(a);
    }
    return (dense_operator(topo, ops) * dense_state(states)).trace().real();
}

/// max over A = ±1 of Σ_y |Σ_x M_xy A_x|, every sign pattern.
inline double brute_classical_bound(const Eigen::MatrixXd &m) {
    double best = -1.0;
    const auto rows = static_cast<int>(m.rows());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << rows); ++mask) {
        double v = 0.0;
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            double d = 0.0;
            for (int x = 0; x < rows; ++x) {
                d += m(x, j) * (((mask >> x) & 1U) ? -1.0 : 1.0);
            }
            v += std::abs(d);
        }
        best = std::max(best, v);
    }
    return best;
}

/// Horodecki closed form for the CHSH maximum in the ½-normalized convention.
inline double chsh_closed_form(const TwoQubitState &rho) {
    const Eigen::Matrix3d t = rho.correlation();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(t.transpose() * t);
    const Eigen::Vector3d ev = es.eigenvalues(); // ascending
    return std::sqrt(std::max(0.0, ev(2)) + std::max(0.0, ev(1)));
}

inline Eigen::Vector3d random_unit(std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::Vector3d v;
    do {
        v = Eigen::Vector3d(g(rng), g(rng), g(rng));
    } while (v.norm() < 1e-6);
    return v.normalized();
}

inline TwoQubitState random_state(std::mt19937_64 &rng) { return random_mixed(rng()); }

inline SourceStates random_states(int m, std::mt19937_64 &rng) {
    SourceStates out;
    for (int s = 0; s < m; ++s) {
        out.push_back(random_state(rng));
    }
    return out;
}

inline MeasurementStrategy random_strategy(const NetworkTopology &physical, const std::vector<int> &input_counts,
                                           std::mt19937_64 &rng) {
    MeasurementStrategy s(physical, input_counts);
    for (PartyIndex p = 1; p <= physical.n_parties(); ++p) {
        for (int x = 1; x <= input_counts[static_cast<std::size_t>(p - 1)]; ++x) {
            for (const auto &inc : physical.incident(p)) {
                s.set(p, x, inc.source, QubitObservable::along(random_unit(rng)));
            }
        }
    }
    return s;
}

/// Uniform random labelled tree on n vertices via a random Prüfer sequence.
inline std::vector<SourceEdge> random_tree(int n, std::mt19937_64 &rng) {
    std::vector<SourceEdge> edges;
    if (n == 2) {
        edges.push_back({1, 2});
        return edges;
    }
    std::uniform_int_distribution<int> pick(1, n);
    std::vector<int> prufer(static_cast<std::size_t>(n - 2));
    std::vector<int> degree(static_cast<std::size_t>(n + 1), 1);
    for (auto &v : prufer) {
        v = pick(rng);
        ++degree[static_cast<std::size_t>(v)];
    }
    // O(n log n) decoding with a min-heap of current leaves.
    std::priority_queue<int, std::vector<int>, std::greater<>> leaves;
    for (int v = 1; v <= n; ++v) {
        if (degree[static_cast<std::size_t>(v)] == 1) {
            leaves.push(v);
        }
    }
    for (const int v : prufer) {
        const int leaf = leaves.top();
        leaves.pop();
        edges.push_back({leaf, v});
        if (--degree[static_cast<std::size_t>(v)] == 1) {
            leaves.push(v);
        }
    }
    const int a = leaves.top();
    leaves.pop();
    edges.push_back({a, leaves.top()});
    return edges;
}

/// Random connected network with at most `max_sources` sources on which a
/// CHSH-map inequality can be built (l >= 2, no source joining two leaves).
inline NetworkInequality random_chsh_network(std::mt19937_64 &rng, int max_parties, int max_sources) {
    std::uniform_int_distribution<int> parties(3, max_parties);
    while (true) {
        const int n = parties(rng);
        auto edges = random_tree(n, rng);
        std::uniform_int_distribution<int> pick(1, n);
        std::uniform_int_distribution<int> extra(0, 2);
        for (int e = extra(rng); e > 0 && static_cast<int>(edges.size()) < max_sources; --e) {
            const int a = pick(rng);
            const int b = pick(rng);
            bool dup = a == b;
            for (const auto &ed : edges) {
                dup = dup || (ed.first == a && ed.second == b) || (ed.first == b && ed.second == a);
            }
            if (!dup) {
                edges.push_back({a, b});
            }
        }
        if (static_cast<int>(edges.size()) > max_sources) {
            continue;
        }
        std::shuffle(edges.begin(), edges.end(), rng);
        for (auto &e : edges) {
            if (rng() & 1U) {
                std::swap(e.first, e.second);
            }
        }
        auto topo = build_topology(n, edges);
        const auto leaves = find_leaves(topo);
        if (leaves.l() < 2 || leaves.source_joins_two_leaves) {
            continue;
        }
        std::map<SourceIndex, CoefficientMatrix> map;
        for (const auto &[leaf, src] : leaves.peripheral_map) {
            map.emplace(src, make_chsh());
        }
        return build_inequality(std::move(topo), 2, std::move(map));
    }
}

} // namespace netbell::ref
