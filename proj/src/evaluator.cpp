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

#include "netbell/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "netbell/error.hpp"

namespace netbell {

namespace {

std::string slot_name(PartyIndex p, int input, SourceIndex s) {
    return "party " + std::to_string(p) + ", input " + std::to_string(input) + ", source " + std::to_string(s);
}

void check_same_layout(const MeasurementStrategy &strategy, const NetworkTopology &physical,
                       const std::vector<int> &input_counts) {
    if (strategy.n_parties() != physical.n_parties()) {
        fail(ErrorCode::PartyCountMismatch, "strategy has " + std::to_string(strategy.n_parties()) +
                                                " parties, network has " + std::to_string(physical.n_parties()));
    }
    for (PartyIndex p = 1; p <= physical.n_parties(); ++p) {
        const auto &srcs = strategy.sources_of(p);
        const auto inc = physical.incident(p);
        bool same = srcs.size() == inc.size();
        for (std::size_t i = 0; same && i < srcs.size(); ++i) {
            same = srcs[i] == inc[i].source;
        }
        if (!same) {
            fail(ErrorCode::InvalidArgument, "strategy layout for party " + std::to_string(p) +
                                                 " does not match the network's incident sources");
        }
        if (strategy.input_count(p) != input_counts[static_cast<std::size_t>(p - 1)]) {
            fail(ErrorCode::InvalidArgument, "party " + std::to_string(p) + " has " +
                                                 std::to_string(strategy.input_count(p)) + " inputs, expected " +
                                                 std::to_string(input_counts[static_cast<std::size_t>(p - 1)]));
        }
    }
}

EvaluationResult assemble(const NetworkInequality &ineq, std::vector<double> I, double tol) {
    EvaluationResult out;
    out.I = std::move(I);
    for (const double v : out.I) {
        out.S += std::pow(std::abs(v), 1.0 / ineq.l());
    }
    out.classical_violation = out.S > ineq.classical_bound() + tol;
    out.quantum_saturation = std::abs(out.S - ineq.quantum_bound()) <= tol;
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// MeasurementStrategy

MeasurementStrategy::MeasurementStrategy(const NetworkTopology &physical, std::vector<int> input_counts)
    : input_counts_(std::move(input_counts)) {
    if (static_cast<int>(input_counts_.size()) != physical.n_parties()) {
        fail(ErrorCode::PartyCountMismatch, "need one input count per party");
    }
    sources_.resize(input_counts_.size());
    offsets_.assign(input_counts_.size() + 1, 0);
    for (PartyIndex p = 1; p <= physical.n_parties(); ++p) {
        const auto idx = static_cast<std::size_t>(p - 1);
        if (input_counts_[idx] < 1) {
            fail(ErrorCode::InvalidArgument, "party " + std::to_string(p) + " needs at least one input");
        }
        for (const auto &inc : physical.incident(p)) {
            sources_[idx].push_back(inc.source);
        }
        offsets_[idx + 1] = offsets_[idx] + static_cast<std::size_t>(input_counts_[idx]) * sources_[idx].size();
    }
    slots_.resize(offsets_.back());
    set_.assign(offsets_.back(), 0);
}

std::size_t MeasurementStrategy::slot_index(PartyIndex p, int input, int position) const {
    const auto idx = static_cast<std::size_t>(p - 1);
    return offsets_[idx] + static_cast<std::size_t>(input - 1) * sources_[idx].size() +
           static_cast<std::size_t>(position);
}

std::size_t MeasurementStrategy::checked_index(PartyIndex p, int input, SourceIndex s) const {
    if (p < 1 || p > n_parties()) {
        fail(ErrorCode::IndexOutOfRange, "party " + std::to_string(p) + " out of range");
    }
    if (input < 1 || input > input_count(p)) {
        fail(ErrorCode::IndexOutOfRange, "input " + std::to_string(input) + " out of range for party " +
                                             std::to_string(p));
    }
    const auto &srcs = sources_of(p);
    const auto it = std::lower_bound(srcs.begin(), srcs.end(), s);
    if (it == srcs.end() || *it != s) {
        fail(ErrorCode::IndexOutOfRange, "source " + std::to_string(s) + " is not incident to party " +
                                             std::to_string(p));
    }
    return slot_index(p, input, static_cast<int>(it - srcs.begin()));
}

void MeasurementStrategy::set(PartyIndex p, int input, SourceIndex s, const QubitObservable &obs) {
    const auto i = checked_index(p, input, s);
    slots_[i] = obs;
    set_[i] = 1;
}

bool MeasurementStrategy::has(PartyIndex p, int input, SourceIndex s) const {
    return set_[checked_index(p, input, s)] != 0;
}

const QubitObservable &MeasurementStrategy::at(PartyIndex p, int input, SourceIndex s) const {
    const auto i = checked_index(p, input, s);
    if (!set_[i]) {
        fail(ErrorCode::IncompleteStrategy, "no observable for " + slot_name(p, input, s));
    }
    return slots_[i];
}

void MeasurementStrategy::validate() const {
    for (PartyIndex p = 1; p <= n_parties(); ++p) {
        for (int x = 1; x <= input_count(p); ++x) {
            for (std::size_t pos = 0; pos < sources_of(p).size(); ++pos) {
                if (!set_[slot_index(p, x, static_cast<int>(pos))]) {
                    fail(ErrorCode::IncompleteStrategy,
                         "no observable for " + slot_name(p, x, sources_of(p)[pos]));
                }
            }
        }
    }
}

std::vector<Eigen::Vector3d> MeasurementStrategy::slot_vectors() const {
    validate();
    std::vector<Eigen::Vector3d> out;
    out.reserve(slots_.size());
    for (const auto &o : slots_) {
        out.push_back(o.bloch());
    }
    return out;
}

void MeasurementStrategy::assign_slot_vectors(std::span<const Eigen::Vector3d> vectors) {
    if (vectors.size() != slots_.size()) {
        fail(ErrorCode::InvalidArgument, "slot vector count mismatch");
    }
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        slots_[i] = QubitObservable::along(vectors[i]);
        set_[i] = 1;
    }
}

// ---------------------------------------------------------------------------
// CorrelatorPlan

namespace detail {

CorrelatorPlan::CorrelatorPlan(const NetworkInequality &ineq, const NetworkTopology &physical,
                               const SourceStates &states) {
    n_ = ineq.topology().n_parties();
    if (physical.n_parties() != n_) {
        fail(ErrorCode::PartyCountMismatch, "inequality has " + std::to_string(n_) + " parties, network has " +
                                                std::to_string(physical.n_parties()));
    }
    check_states(physical, states);
    k_ = ineq.k();
    l_ = ineq.l();
    input_counts_ = ineq.input_counts();
    roles_.resize(static_cast<std::size_t>(n_));
    matrices_.resize(static_cast<std::size_t>(n_));
    degree_.resize(static_cast<std::size_t>(n_));
    offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
    for (int p = 0; p < n_; ++p) {
        const auto up = static_cast<std::size_t>(p);
        degree_[up] = physical.degree(p + 1);
        if (ineq.is_leaf(p + 1)) {
            matrices_[up] = ineq.fcbi_for_leaf(p + 1).entries();
            roles_[up] = degree_[up] == 1 ? Role::Folded : Role::Expanded;
            (roles_[up] == Role::Folded ? folded_ : expanded_).push_back(p);
        } else {
            roles_[up] = Role::Fixed;
        }
        offsets_[up + 1] = offsets_[up] + static_cast<std::size_t>(input_counts_[up] * degree_[up]);
    }
    slot_count_ = offsets_.back();

    ends_.resize(static_cast<std::size_t>(physical.n_sources()));
    correlations_.resize(ends_.size());
    for (SourceIndex s = 1; s <= physical.n_sources(); ++s) {
        const auto &e = physical.source(s);
        const auto us = static_cast<std::size_t>(s - 1);
        ends_[us][0] = {e.first - 1, *physical.incidence_position(e.first, s)};
        ends_[us][1] = {e.second - 1, *physical.incidence_position(e.second, s)};
        correlations_[us] = states[us].correlation();
    }

    slot_columns_.resize(slot_count_);
    for (int p = 0; p < n_; ++p) {
        const auto up = static_cast<std::size_t>(p);
        for (int x = 0; x < input_counts_[up]; ++x) {
            std::vector<int> cols;
            if (roles_[up] == Role::Fixed) {
                cols.push_back(x);
            } else {
                for (int j = 0; j < k_; ++j) {
                    if (matrices_[up](x, j) != 0.0) {
                        cols.push_back(j);
                    }
                }
            }
            for (int pos = 0; pos < degree_[up]; ++pos) {
                slot_columns_[offsets_[up] + static_cast<std::size_t>(x * degree_[up] + pos)] = cols;
            }
        }
    }
}

double CorrelatorPlan::column(int j, std::span<const Eigen::Vector3d> slots) const {
    std::vector<Eigen::Vector3d> folded(static_cast<std::size_t>(n_), Eigen::Vector3d::Zero());
    for (const int p : folded_) {
        const auto up = static_cast<std::size_t>(p);
        for (int x = 0; x < input_counts_[up]; ++x) {
            const double c = matrices_[up](x, j);
            if (c != 0.0) {
                folded[up] += c * slots[offsets_[up] + static_cast<std::size_t>(x)];
            }
        }
    }
    std::vector<int> choice(static_cast<std::size_t>(n_), 0);
    const auto vec = [&](const SourceEnd &end) -> const Eigen::Vector3d & {
        const auto up = static_cast<std::size_t>(end.party);
        switch (roles_[up]) {
        case Role::Folded:
            return folded[up];
        case Role::Fixed:
            return slots[offsets_[up] + static_cast<std::size_t>(j * degree_[up] + end.position)];
        case Role::Expanded:
        default:
            return slots[offsets_[up] + static_cast<std::size_t>(choice[up] * degree_[up] + end.position)];
        }
    };
    const auto product = [&] {
        double prod = 1.0;
        for (std::size_t s = 0; s < ends_.size() && prod != 0.0; ++s) {
            prod *= vec(ends_[s][0]).dot(correlations_[s] * vec(ends_[s][1]));
        }
        return prod;
    };
    if (expanded_.empty()) {
        return product();
    }
    // Odometer over the inputs of leaves that were not folded.
    double total = 0.0;
    while (true) {
        double coeff = 1.0;
        for (const int p : expanded_) {
            coeff *= matrices_[static_cast<std::size_t>(p)](choice[static_cast<std::size_t>(p)], j);
        }
        if (coeff != 0.0) {
            total += coeff * product();
        }
        std::size_t e = 0;
        for (; e < expanded_.size(); ++e) {
            const auto up = static_cast<std::size_t>(expanded_[e]);
            if (++choice[up] < input_counts_[up]) {
                break;
            }
            choice[up] = 0;
        }
        if (e == expanded_.size()) {
            break;
        }
    }
    return total;
}

std::vector<double> CorrelatorPlan::columns(std::span<const Eigen::Vector3d> slots) const {
    std::vector<double> out(static_cast<std::size_t>(k_));
    for (int j = 0; j < k_; ++j) {
        out[static_cast<std::size_t>(j)] = column(j, slots);
    }
    return out;
}

double CorrelatorPlan::s_value(std::span<const Eigen::Vector3d> slots) const {
    double s = 0.0;
    for (int j = 0; j < k_; ++j) {
        s += std::pow(std::abs(column(j, slots)), 1.0 / l_);
    }
    return s;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Evaluation

double correlator(const NetworkTopology &topology, const SourceStates &states, const MeasurementStrategy &strategy,
                  std::span<const int> inputs) {
    check_states(topology, states);
    if (static_cast<int>(inputs.size()) != topology.n_parties()) {
        fail(ErrorCode::InvalidArgument, "need one input per party");
    }
    double prod = 1.0;
    for (SourceIndex s = 1; s <= topology.n_sources(); ++s) {
        const auto &e = topology.source(s);
        const auto &u = strategy.at(e.first, inputs[static_cast<std::size_t>(e.first - 1)], s).bloch();
        const auto &v = strategy.at(e.second, inputs[static_cast<std::size_t>(e.second - 1)], s).bloch();
        prod *= u.dot(states[static_cast<std::size_t>(s - 1)].correlation() * v);
    }
    return prod;
}

EvaluationResult evaluate_S(const NetworkInequality &ineq, const SourceStates &states,
                            const MeasurementStrategy &strategy, double tol) {
    return evaluate_S_on(ineq, ineq.topology(), states, strategy, tol);
}

EvaluationResult evaluate_S_on(const NetworkInequality &ineq, const NetworkTopology &physical,
                               const SourceStates &states, const MeasurementStrategy &strategy, double tol) {
    const detail::CorrelatorPlan plan(ineq, physical, states);
    check_same_layout(strategy, physical, plan.input_counts());
    const auto slots = strategy.slot_vectors();
    return assemble(ineq, plan.columns(slots), tol);
}

// ---------------------------------------------------------------------------
// Optimal strategy

MeasurementStrategy optimal_strategy(const NetworkInequality &ineq, const SourceStates &states) {
    const auto &topo = ineq.topology();
    check_states(topo, states);
    for (const auto &[src, m] : ineq.fcbi_map()) {
        if (m.tag().kind == FcbiKind::Custom) {
            fail(ErrorCode::UnsupportedFcbi, "source " + std::to_string(src) +
                                                 " carries a custom FCBI; use the optimizer instead");
        }
    }
    MeasurementStrategy out(topo, ineq.input_counts());
    const int k = ineq.k();
    for (SourceIndex s = 1; s <= topo.n_sources(); ++s) {
        const auto &rho = states[static_cast<std::size_t>(s - 1)];
        const auto &edge = topo.source(s);
        if (const auto leaf = ineq.leaves().leaf_of_source(s)) {
            const Side leaf_side = edge.first == *leaf ? Side::First : Side::Second;
            const PartyIndex partner = edge.endpoint(leaf_side == Side::First ? Side::Second : Side::First);
            const auto &m = ineq.fcbi_map().at(s);
            const Eigen::Matrix3d c = leaf_oriented(rho, leaf_side);
            const Eigen::Matrix3d frame = leaf_frame(c);
            const auto canon = catalog_leaf_directions(m.tag());
            std::vector<Eigen::Vector3d> a;
            for (int x = 0; x < m.rows(); ++x) {
                a.push_back(frame * canon[static_cast<std::size_t>(x)]);
                out.set(*leaf, x + 1, s, QubitObservable::along(a.back()));
            }
            for (int j = 0; j < k; ++j) {
                Eigen::Vector3d d = Eigen::Vector3d::Zero();
                for (int x = 0; x < m.rows(); ++x) {
                    d += m.entries()(x, j) * a[static_cast<std::size_t>(x)];
                }
                out.set(partner, j + 1, s, aligned_partner(c, d));
            }
            continue;
        }
        // Intermediate source: σ3⊗σ3 when it already reaches t0, otherwise
        // the top singular pair of T.
        const Eigen::Matrix3d &t = rho.correlation();
        QubitObservable u = QubitObservable::z();
        QubitObservable v = QubitObservable::z();
        if (std::abs(t(2, 2)) < rho.t0() - 1e-12) {
            const Eigen::JacobiSVD<Eigen::Matrix3d> svd(t, Eigen::ComputeFullU | Eigen::ComputeFullV);
            u = QubitObservable::along(svd.matrixU().col(0));
            v = QubitObservable::along(svd.matrixV().col(0));
        } else if (t(2, 2) < 0.0) {
            v = QubitObservable::along({0.0, 0.0, -1.0});
        }
        for (int j = 1; j <= k; ++j) {
            out.set(edge.first, j, s, u);
            out.set(edge.second, j, s, v);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Saturation conditions

namespace {

Eigen::Matrix4cd embed(const Eigen::Matrix2cd &op, Side side) {
    Eigen::Matrix4cd out;
    const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    const Eigen::Matrix2cd &a = side == Side::First ? op : id;
    const Eigen::Matrix2cd &b = side == Side::First ? id : op;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
        }
    }
    return out;
}

double expect(const Eigen::Matrix4cd &op, const TwoQubitState &rho) { return (op * rho.matrix()).trace().real(); }

} // namespace

ConditionReport check_conditions(const NetworkInequality &ineq, const SourceStates &states,
                                 const MeasurementStrategy &strategy, double tol, double rank_tol) {
    const auto &topo = ineq.topology();
    check_states(topo, states);
    check_same_layout(strategy, topo, ineq.input_counts());
    strategy.validate();
    const int k = ineq.k();
    const int l = ineq.l();
    ConditionReport out;
    out.X = Eigen::MatrixXd::Zero(k, l);
    out.X_alignment = Eigen::MatrixXd::Zero(k, l);

    int col = 0;
    for (const auto &[leaf, s] : ineq.leaves().peripheral_map) {
        const auto &rho = states[static_cast<std::size_t>(s - 1)];
        const auto &edge = topo.source(s);
        const Side leaf_side = edge.first == leaf ? Side::First : Side::Second;
        const Side other = leaf_side == Side::First ? Side::Second : Side::First;
        const PartyIndex partner = edge.endpoint(other);
        const auto &m = ineq.fcbi_for_leaf(leaf).entries();
        for (int j = 0; j < k; ++j) {
            Eigen::Matrix2cd delta = Eigen::Matrix2cd::Zero();
            for (int x = 0; x < m.rows(); ++x) {
                delta += m(x, j) * strategy.at(leaf, x + 1, s).matrix();
            }
            const double w2 = expect(embed(delta.adjoint() * delta, leaf_side), rho);
            out.X(j, col) = std::sqrt(std::max(0.0, w2));
            const Eigen::Matrix4cd db = embed(delta, leaf_side) * embed(strategy.at(partner, j + 1, s).matrix(), other);
            out.X_alignment(j, col) = std::abs(expect(db, rho));
        }
        ++col;
    }

    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(out.X);
    out.x_singvals = svd.singularValues();
    const double s0 = out.x_singvals.size() > 0 ? out.x_singvals(0) : 0.0;
    const double s1 = out.x_singvals.size() > 1 ? out.x_singvals(1) : 0.0;
    out.rank1 = s1 <= rank_tol * s0;
    for (int i = 0; i < l; ++i) {
        if (out.X.col(i).maxCoeff() <= 1e-15) {
            out.zero_column = true;
        }
    }

    bool residuals_ok = true;
    for (SourceIndex s = 1; s <= topo.n_sources(); ++s) {
        if (ineq.leaves().leaf_of_source(s)) {
            continue;
        }
        const auto &rho = states[static_cast<std::size_t>(s - 1)];
        const auto &edge = topo.source(s);
        for (int j = 1; j <= k; ++j) {
            const Eigen::Matrix4cd ab = embed(strategy.at(edge.first, j, s).matrix(), Side::First) *
                                        embed(strategy.at(edge.second, j, s).matrix(), Side::Second);
            const double r = std::abs(std::abs(expect(ab, rho)) - rho.t0());
            out.intermediate_residuals.push_back({s, j, r});
            residuals_ok = residuals_ok && r <= tol;
        }
    }
    out.saturated = (out.rank1 || out.zero_column) && residuals_ok;
    return out;
}

} // namespace netbell
