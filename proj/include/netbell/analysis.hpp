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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "netbell/builder.hpp"
#include "netbell/evaluator.hpp"

namespace netbell {

/// Threshold on the product of visibilities Π_{i} v_i above which Werner
/// states on every source violate the inequality. `schmidt` holds the
/// Schmidt coefficient a_i of each peripheral source in peripheral-map
/// order (empty means maximally entangled everywhere).
///   all CHSH:     1 / Π_i sqrt(1 + 4 a_i^2 b_i^2)
///   all CHAINED(k), maximally entangled: ((k-1) / (k cos(π/2k)))^l
/// Other catalog maps use (classical bound / mixed bound at v = 1)^l, which
/// is exact because every Werner correlation matrix is v times the pure one.
/// Throws UnsupportedMap for custom FCBIs.
double werner_violation_threshold(const NetworkInequality &ineq, const std::vector<double> &schmidt = {},
                                  const SeesawOptions &options = {});

/// Per-source critical visibility for uniform maximally entangled Werner
/// states on an all-CHAINED(k) map: ((k-1) / (k cos(π/2k)))^{l/M}.
/// Throws UnsupportedMap otherwise.
double critical_visibility_uniform(const NetworkInequality &ineq);

/// Uniform visibility where mixed_state_bound crosses the classical bound,
/// located by bisection; nullopt when even v = 1 does not exceed it.
std::optional<double> critical_visibility_bisection(const NetworkInequality &ineq, double schmidt = 0.70710678118654752440,
                                                    double tol = 1e-12, const SeesawOptions &options = {});

struct MahlerCheck {
    bool holds = false;
    double lhs = 0.0;
    double rhs = 0.0;
    bool equality = false;
};

/// lhs = Σ_j (Π_i x_ji)^{1/q}, rhs = Π_i (Σ_j x_ji)^{1/q} for non-negative X (p x q).
/// Throws NegativeEntry.
MahlerCheck mahler_check(const Eigen::MatrixXd &X, double rank_tol = kRankOneTol);

struct ViolationReport {
    std::vector<double> I;
    double S = 0.0;
    double classical_bound = 0.0;
    double quantum_bound = 0.0;
    double mixed_bound = 0.0;
    bool violates_classical = false;
    bool saturates_quantum = false;
    bool conditions_met = false;
    /// True when S is within tolerance of the mixed-state bound.
    bool saturates_mixed = false;
    std::string strategy_source;
    std::uint64_t seed = 0;
    double tol = kSaturationTol;
    ConditionReport conditions;
};

ViolationReport report(const NetworkInequality &ineq, const SourceStates &states, const MeasurementStrategy &strategy,
                       std::string strategy_source = "explicit", const SeesawOptions &options = {},
                       double tol = kSaturationTol);

} // namespace netbell
