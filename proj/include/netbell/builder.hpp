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

#include <map>
#include <string>
#include <vector>

#include "netbell/fcbi.hpp"
#include "netbell/qstate.hpp"
#include "netbell/topology.hpp"

namespace netbell {

/// One state per source, indexed by source - 1.
using SourceStates = std::vector<TwoQubitState>;

/// Leaf contribution to I_j: Δ_j = Σ_x coefficients[x] A_x of `party`.
struct LeafTerm {
    PartyIndex party;
    SourceIndex source;
    std::vector<double> coefficients;
};

/// Structure of I_j = < Π_{fixed} A_j^u Π_{leaves} Δ_j^i >.
struct CorrelatorTerm {
    int column; // 1-based j
    std::vector<PartyIndex> fixed_parties;
    std::vector<LeafTerm> leaf_terms;

    std::string describe() const;
};

/// The nonlinear network inequality Σ_j |I_j|^{1/l} <= (Π β_i)^{1/l} together
/// with its quantum bound (Π opt_i)^{1/l}.
class NetworkInequality {
  public:
    const NetworkTopology &topology() const { return topology_; }
    const LeafAnalysis &leaves() const { return leaves_; }
    int k() const { return k_; }
    int l() const { return leaves_.l(); }
    const std::map<SourceIndex, CoefficientMatrix> &fcbi_map() const { return fcbi_; }
    double classical_bound() const { return classical_bound_; }
    double quantum_bound() const { return quantum_bound_; }

    bool is_leaf(PartyIndex p) const { return leaves_.is_leaf(p); }
    /// FCBI attached to a leaf party through its peripheral source.
    const CoefficientMatrix &fcbi_for_leaf(PartyIndex leaf) const;
    /// |X_i| for leaves, k for intermediate parties.
    int input_count(PartyIndex p) const;
    std::vector<int> input_counts() const;

    CorrelatorTerm term(int j) const;

  private:
    friend NetworkInequality build_inequality(NetworkTopology topology, int k,
                                              std::map<SourceIndex, CoefficientMatrix> fcbi_map);
    NetworkTopology topology_;
    LeafAnalysis leaves_;
    int k_ = 0;
    std::map<SourceIndex, CoefficientMatrix> fcbi_;
    double classical_bound_ = 0.0;
    double quantum_bound_ = 0.0;
};

/// Errors: DegenerateBipartite (N = 2), TooFewLeaves (l < 2), LeafPairSource,
/// MissingFcbi / ExtraFcbi (map must cover exactly the peripheral sources),
/// ColumnMismatch (FCBI columns != k), BadK (k < 1).
NetworkInequality build_inequality(NetworkTopology topology, int k, std::map<SourceIndex, CoefficientMatrix> fcbi_map);

/// (Π_{i} values_i)^{1/l} evaluated as exp(Σ log / l).
double geometric_root(const std::vector<double> &values, int l);

double classical_bound_network(const NetworkInequality &ineq);
double quantum_bound_network(const NetworkInequality &ineq);

/// Π_{peripheral i} [state_max(B_i, ρ_i)]^{1/l} · Π_{other u} t_{u,0}^{1/l}.
double mixed_state_bound(const NetworkInequality &ineq, const SourceStates &states,
                         const SeesawOptions &options = {});

/// Throws InvalidArgument unless there is exactly one state per source.
void check_states(const NetworkTopology &topology, const SourceStates &states);

} // namespace netbell
