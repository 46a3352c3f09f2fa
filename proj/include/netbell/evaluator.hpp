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

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "netbell/builder.hpp"
#include "netbell/observable.hpp"
#include "netbell/topology.hpp"

namespace netbell {

/// Separable strategy: one qubit observable per (party, input, incident source).
/// Inputs are 1-based. The layout follows the topology the strategy is
/// realized on, which may differ from the inequality's topology.
class MeasurementStrategy {
  public:
    MeasurementStrategy(const NetworkTopology &physical, std::vector<int> input_counts);

    int n_parties() const { return static_cast<int>(input_counts_.size()); }
    int input_count(PartyIndex p) const { return input_counts_[static_cast<std::size_t>(p - 1)]; }
    const std::vector<int> &input_counts() const { return input_counts_; }
    /// Sources incident to p, ascending.
    const std::vector<SourceIndex> &sources_of(PartyIndex p) const {
        return sources_[static_cast<std::size_t>(p - 1)];
    }

    void set(PartyIndex p, int input, SourceIndex s, const QubitObservable &obs);
    bool has(PartyIndex p, int input, SourceIndex s) const;
    /// Throws IncompleteStrategy when the slot was never set.
    const QubitObservable &at(PartyIndex p, int input, SourceIndex s) const;
    /// Throws IncompleteStrategy naming the first unset slot.
    void validate() const;

    std::size_t slot_count() const { return slots_.size(); }
    std::size_t slot_index(PartyIndex p, int input, int position) const;
    std::vector<Eigen::Vector3d> slot_vectors() const;
    /// Normalizes each vector on the way in.
    void assign_slot_vectors(std::span<const Eigen::Vector3d> vectors);

  private:
    std::size_t checked_index(PartyIndex p, int input, SourceIndex s) const;

    std::vector<int> input_counts_;
    std::vector<std::vector<SourceIndex>> sources_;
    std::vector<std::size_t> offsets_;
    std::vector<QubitObservable> slots_;
    std::vector<char> set_;
};

namespace detail {

/// Precomputed evaluation of the columns I_j of an inequality on a physical
/// network with separable qubit observables. Leaves with a single physical
/// source are folded into d_j = Σ_x M_xj n_x; leaves with several physical
/// sources are expanded input by input. Slot vectors need not be unit.
class CorrelatorPlan {
  public:
    CorrelatorPlan(const NetworkInequality &ineq, const NetworkTopology &physical, const SourceStates &states);

    int k() const { return k_; }
    int l() const { return l_; }
    std::size_t slot_count() const { return slot_count_; }
    const std::vector<int> &input_counts() const { return input_counts_; }
    /// 0-based columns whose value depends on the slot.
    const std::vector<int> &columns_of_slot(std::size_t slot) const { return slot_columns_[slot]; }

    double column(int j, std::span<const Eigen::Vector3d> slots) const;
    std::vector<double> columns(std::span<const Eigen::Vector3d> slots) const;
    double s_value(std::span<const Eigen::Vector3d> slots) const;

  private:
    enum class Role : std::uint8_t { Fixed, Folded, Expanded };
    struct SourceEnd {
        int party; // 0-based
        int position;
    };

    int n_ = 0;
    int k_ = 0;
    int l_ = 0;
    std::vector<int> input_counts_;
    std::vector<Role> roles_;
    std::vector<Eigen::MatrixXd> matrices_; // empty for fixed parties
    std::vector<std::size_t> offsets_;
    std::vector<int> degree_;
    std::vector<int> expanded_;
    std::vector<int> folded_;
    std::vector<std::array<SourceEnd, 2>> ends_;
    std::vector<Eigen::Matrix3d> correlations_;
    std::size_t slot_count_ = 0;
    std::vector<std::vector<int>> slot_columns_;
};

} // namespace detail

/// E(x) = Π_s u_s^T T_s v_s for inputs x (1-based, one per party).
/// Observables are traceless, so only the correlation matrices enter.
double correlator(const NetworkTopology &topology, const SourceStates &states, const MeasurementStrategy &strategy,
                  std::span<const int> inputs);

struct EvaluationResult {
    std::vector<double> I; // signed I_j, pre-orientation
    double S = 0.0;
    bool classical_violation = false;
    bool quantum_saturation = false;
};

inline constexpr double kSaturationTol = 1e-9;
inline constexpr double kRankOneTol = 1e-8;

EvaluationResult evaluate_S(const NetworkInequality &ineq, const SourceStates &states,
                            const MeasurementStrategy &strategy, double tol = kSaturationTol);
/// Inequality of one network evaluated on correlations produced in another
/// network with the same parties.
EvaluationResult evaluate_S_on(const NetworkInequality &ineq, const NetworkTopology &physical,
                               const SourceStates &states, const MeasurementStrategy &strategy,
                               double tol = kSaturationTol);

/// Arbitrary dichotomic party observables (Hermitian, squaring to I) on the
/// party's qubits, ordered by ascending source index.
class FullTensorStrategy {
  public:
    FullTensorStrategy(const NetworkTopology &physical, std::vector<std::vector<Eigen::MatrixXcd>> operators);
    static FullTensorStrategy from_separable(const NetworkTopology &physical, const MeasurementStrategy &strategy);

    const Eigen::MatrixXcd &op(PartyIndex p, int input) const {
        return ops_[static_cast<std::size_t>(p - 1)][static_cast<std::size_t>(input - 1)];
    }
    int input_count(PartyIndex p) const { return static_cast<int>(ops_[static_cast<std::size_t>(p - 1)].size()); }

  private:
    std::vector<std::vector<Eigen::MatrixXcd>> ops_;
};

inline constexpr int kFullTensorMaxSources = 6;

/// Tr[(⊗_p A_p)(⊗_s ρ_s)] over the explicit 2^{2M}-dimensional space with
/// qubit order (source 1 first, source 1 second, source 2 first, ...).
double correlator_full(const NetworkTopology &topology, const SourceStates &states,
                       const FullTensorStrategy &strategy, std::span<const int> inputs);

/// Expands every leaf Δ-sum and evaluates each term with correlator_full.
EvaluationResult evaluate_S_full(const NetworkInequality &ineq, const NetworkTopology &physical,
                                 const SourceStates &states, const FullTensorStrategy &strategy,
                                 double tol = kSaturationTol);

/// Closed-form optimal observables for catalog FCBIs: leaves use the catalog
/// directions in the frame of their source's correlation matrix, the partner
/// qubit aligns with C^T d_j, and intermediate sources use σ3 on both ends
/// (or the top singular pair when σ3⊗σ3 does not reach t0).
MeasurementStrategy optimal_strategy(const NetworkInequality &ineq, const SourceStates &states);

struct IntermediateResidual {
    SourceIndex source;
    int input;
    double residual; // | |<A_j B_j>| - t_{u,0} |
};

struct ConditionReport {
    Eigen::MatrixXd X;            // k x l, x_{j,i} = sqrt(Tr[Δ_j^† Δ_j ρ_i])
    Eigen::MatrixXd X_alignment;  // k x l, |<B_j Δ_j>|
    Eigen::VectorXd x_singvals;
    bool rank1 = false;
    bool zero_column = false;
    std::vector<IntermediateResidual> intermediate_residuals;
    bool saturated = false;
};

ConditionReport check_conditions(const NetworkInequality &ineq, const SourceStates &states,
                                 const MeasurementStrategy &strategy, double tol = kSaturationTol,
                                 double rank_tol = kRankOneTol);

} // namespace netbell
