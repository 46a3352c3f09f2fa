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

// Explicit-trace evaluation. Deliberately independent of the factorized
// contraction so the two can cross-check each other.

#include <cmath>
#include <complex>
#include <string>

#include "netbell/error.hpp"
#include "netbell/evaluator.hpp"

namespace netbell {

namespace {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

struct Entry {
    int r;
    int c;
    std::complex<double> value;
};

} // namespace

FullTensorStrategy::FullTensorStrategy(const NetworkTopology &physical,
                                       std::vector<std::vector<Eigen::MatrixXcd>> operators)
    : ops_(std::move(operators)) {
    if (static_cast<int>(ops_.size()) != physical.n_parties()) {
        fail(ErrorCode::PartyCountMismatch, "need operators for every party");
    }
    for (PartyIndex p = 1; p <= physical.n_parties(); ++p) {
        const Eigen::Index dim = Eigen::Index{1} << physical.degree(p);
        const auto &list = ops_[static_cast<std::size_t>(p - 1)];
        if (list.empty()) {
            fail(ErrorCode::IncompleteStrategy, "party " + std::to_string(p) + " has no operators");
        }
        for (std::size_t x = 0; x < list.size(); ++x) {
            const auto &a = list[x];
            const std::string where = "party " + std::to_string(p) + ", input " + std::to_string(x + 1);
            if (a.rows() != dim || a.cols() != dim) {
                fail(ErrorCode::BadObservable, where + ": expected a " + std::to_string(dim) + "x" +
                                                   std::to_string(dim) + " operator");
            }
            if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
                fail(ErrorCode::BadObservable, where + ": operator is not Hermitian");
            }
            if ((a * a - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff() > 1e-10) {
                fail(ErrorCode::BadObservable, where + ": operator does not square to the identity");
            }
        }
    }
}

FullTensorStrategy FullTensorStrategy::from_separable(const NetworkTopology &physical,
                                                      const MeasurementStrategy &strategy) {
    strategy.validate();
    std::vector<std::vector<Eigen::MatrixXcd>> ops(static_cast<std::size_t>(physical.n_parties()));
    for (PartyIndex p = 1; p <= physical.n_parties(); ++p) {
        for (int x = 1; x <= strategy.input_count(p); ++x) {
            Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(1, 1);
            for (const auto &inc : physical.incident(p)) {
                a = kron(a, strategy.at(p, x, inc.source).matrix());
            }
            ops[static_cast<std::size_t>(p - 1)].push_back(std::move(a));
        }
    }
    return FullTensorStrategy(physical, std::move(ops));
}

double correlator_full(const NetworkTopology &topology, const SourceStates &states,
                       const FullTensorStrategy &strategy, std::span<const int> inputs) {
    check_states(topology, states);
    const int m = topology.n_sources();
    const int n = topology.n_parties();
    if (m > kFullTensorMaxSources) {
        fail(ErrorCode::TooLarge, "full-tensor evaluation is limited to " + std::to_string(kFullTensorMaxSources) +
                                      " sources");
    }
    if (static_cast<int>(inputs.size()) != n) {
        fail(ErrorCode::InvalidArgument, "need one input per party");
    }
    std::vector<const Eigen::MatrixXcd *> ops(static_cast<std::size_t>(n));
    std::vector<std::vector<int>> qubits(static_cast<std::size_t>(n));
    std::vector<std::vector<int>> completes(static_cast<std::size_t>(m));
    for (PartyIndex p = 1; p <= n; ++p) {
        const int x = inputs[static_cast<std::size_t>(p - 1)];
        if (x < 1 || x > strategy.input_count(p)) {
            fail(ErrorCode::IndexOutOfRange, "input " + std::to_string(x) + " out of range for party " +
                                                 std::to_string(p));
        }
        ops[static_cast<std::size_t>(p - 1)] = &strategy.op(p, x);
        SourceIndex last = 0;
        for (const auto &inc : topology.incident(p)) {
            qubits[static_cast<std::size_t>(p - 1)].push_back(2 * (inc.source - 1) +
                                                              (inc.side == Side::First ? 0 : 1));
            last = inc.source;
        }
        completes[static_cast<std::size_t>(last - 1)].push_back(p - 1);
    }
    std::vector<std::vector<Entry>> entries(static_cast<std::size_t>(m));
    for (int s = 0; s < m; ++s) {
        const auto &rho = states[static_cast<std::size_t>(s)].matrix();
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) {
                if (rho(r, c) != std::complex<double>(0.0, 0.0)) {
                    entries[static_cast<std::size_t>(s)].push_back({r, c, rho(r, c)});
                }
            }
        }
    }

    // Tr[O ρ] = Σ O[i, i'] ρ[i', i]; ρ[i', i] = Π_s ρ_s[r_s, c_s].
    std::vector<int> row_bit(static_cast<std::size_t>(2 * m));
    std::vector<int> col_bit(static_cast<std::size_t>(2 * m));
    const auto party_factor = [&](int p) {
        int ri = 0;
        int ci = 0;
        for (const int q : qubits[static_cast<std::size_t>(p)]) {
            ri = 2 * ri + row_bit[static_cast<std::size_t>(q)];
            ci = 2 * ci + col_bit[static_cast<std::size_t>(q)];
        }
        return (*ops[static_cast<std::size_t>(p)])(ci, ri);
    };
    std::complex<double> total = 0.0;
    const auto recurse = [&](const auto &self, int s, std::complex<double> acc) -> void {
        if (s == m) {
            total += acc;
            return;
        }
        for (const auto &e : entries[static_cast<std::size_t>(s)]) {
            row_bit[static_cast<std::size_t>(2 * s)] = e.r >> 1;
            row_bit[static_cast<std::size_t>(2 * s + 1)] = e.r & 1;
            col_bit[static_cast<std::size_t>(2 * s)] = e.c >> 1;
            col_bit[static_cast<std::size_t>(2 * s + 1)] = e.c & 1;
            std::complex<double> next = acc * e.value;
            for (const int p : completes[static_cast<std::size_t>(s)]) {
                next *= party_factor(p);
            }
            if (next != std::complex<double>(0.0, 0.0)) {
                self(self, s + 1, next);
            }
        }
    };
    recurse(recurse, 0, 1.0);
    return total.real();
}

EvaluationResult evaluate_S_full(const NetworkInequality &ineq, const NetworkTopology &physical,
                                 const SourceStates &states, const FullTensorStrategy &strategy, double tol) {
    const int n = physical.n_parties();
    if (ineq.topology().n_parties() != n) {
        fail(ErrorCode::PartyCountMismatch, "inequality and network have different party counts");
    }
    for (PartyIndex p = 1; p <= n; ++p) {
        if (strategy.input_count(p) != ineq.input_count(p)) {
            fail(ErrorCode::InvalidArgument, "party " + std::to_string(p) + " has the wrong number of inputs");
        }
    }
    const auto &leaves = ineq.leaves().leaf_set;
    EvaluationResult out;
    for (int j = 1; j <= ineq.k(); ++j) {
        std::vector<int> inputs(static_cast<std::size_t>(n), j);
        std::vector<int> choice(leaves.size(), 0);
        double value = 0.0;
        while (true) {
            double coeff = 1.0;
            for (std::size_t i = 0; i < leaves.size(); ++i) {
                coeff *= ineq.fcbi_for_leaf(leaves[i]).entries()(choice[i], j - 1);
                inputs[static_cast<std::size_t>(leaves[i] - 1)] = choice[i] + 1;
            }
            if (coeff != 0.0) {
                value += coeff * correlator_full(physical, states, strategy, inputs);
            }
            std::size_t i = 0;
            for (; i < leaves.size(); ++i) {
                if (++choice[i] < ineq.input_count(leaves[i])) {
                    break;
                }
                choice[i] = 0;
            }
            if (i == leaves.size()) {
                break;
            }
        }
        out.I.push_back(value);
        out.S += std::pow(std::abs(value), 1.0 / ineq.l());
    }
    out.classical_violation = out.S > ineq.classical_bound() + tol;
    out.quantum_saturation = std::abs(out.S - ineq.quantum_bound()) <= tol;
    return out;
}

} // namespace netbell
