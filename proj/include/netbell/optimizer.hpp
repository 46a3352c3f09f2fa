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
#include <string_view>
#include <vector>

#include "netbell/builder.hpp"
#include "netbell/evaluator.hpp"
#include "netbell/topology.hpp"

namespace netbell {

/// Local-hidden-variable model: one hidden variable per source with its own
/// distribution, and deterministic ±1 responses per party that depend on the
/// input and the hidden values of the party's incident sources.
struct LocalModel {
    std::vector<int> cardinalities;           // per source
    std::vector<std::vector<double>> weights; // per source, sums to 1
    /// responses[p - 1][x * Π c + λ], λ mixed-radix over incident sources in
    /// ascending order with the lowest source most significant.
    std::vector<std::vector<std::int8_t>> responses;

    /// Uniform weights and every response +1.
    static LocalModel all_plus(const NetworkTopology &topology, std::vector<int> input_counts,
                               std::vector<int> cardinalities);
};

/// Validates the model against the inequality's topology and evaluates S.
EvaluationResult evaluate_local(const NetworkInequality &ineq, const LocalModel &model, double tol = kSaturationTol);

struct SearchReport {
    double best_value = 0.0;
    std::optional<MeasurementStrategy> best_strategy;
    std::optional<LocalModel> best_model;
    int restarts_used = 0;
    std::uint64_t seed = 0;
    bool converged = false;
    std::vector<double> history; // best value per restart (or per sample batch)
};

struct SeesawNetworkOptions {
    int restarts = 32;
    std::uint64_t seed = 0;
    int max_sweeps = 3000;
    /// A sweep that improves S by less than this (relative) ends the restart.
    double stagnation_tol = 1e-13;
    /// Worker threads for independent restarts; results do not depend on it.
    int threads = 1;
    /// Used as the starting point of restart 0 when set.
    std::optional<MeasurementStrategy> warm_start;
};

/// Block coordinate ascent over Bloch-vector slots. Every I_j is affine in
/// a single slot, so each slot update is an exact maximization of a small
/// concave-or-not function on the sphere, solved by candidate directions
/// plus projected-gradient polishing with an improvement guard.
SearchReport seesaw_network(const NetworkInequality &ineq, const SourceStates &states,
                            const SeesawNetworkOptions &options = {});
/// Same, with strategies realized on `physical` (same parties, other sources).
SearchReport seesaw_on(const NetworkInequality &ineq, const NetworkTopology &physical, const SourceStates &states,
                       const SeesawNetworkOptions &options = {});

enum class OracleMode { Exhaustive, Random };

struct OracleOptions {
    OracleMode mode = OracleMode::Exhaustive;
    /// Random-mixture samples; in exhaustive mode they are drawn in addition.
    std::int64_t budget = 0;
    std::uint64_t seed = 0;
    int threads = 1;
};

inline constexpr int kMaxExhaustiveTableBits = 24;
inline constexpr int kMaxExhaustiveAlphabetBits = 12;

/// Maximum of S over local models with the given hidden-variable alphabet
/// sizes (default 2 per source). Exhaustive mode enumerates every response
/// table with uniform hidden-variable weights, which contains every
/// deterministic strategy; random mode draws Dirichlet(1) weights and
/// uniform response tables.
SearchReport classical_oracle(const NetworkInequality &ineq, std::vector<int> cardinalities,
                              const OracleOptions &options = {});

enum class Verdict { Violated, Boundary, NotFound };
std::string_view to_string(Verdict v);

inline constexpr double kVerdictTol = 1e-6;

struct DiscriminationReport {
    SearchReport search;
    double target_bound = 0.0; // quantum bound of the target inequality
    Verdict verdict = Verdict::NotFound;
};

Verdict classify(double best, double bound, double tol = kVerdictTol);

/// Maximizes the target network's inequality over strategies realizable in
/// `source`, the physical network that actually distributes the states.
DiscriminationReport discriminate(const NetworkInequality &target, const NetworkTopology &source,
                                  const SourceStates &states, SeesawNetworkOptions options);
inline DiscriminationReport discriminate(const NetworkInequality &target, const NetworkTopology &source,
                                         const SourceStates &states) {
    SeesawNetworkOptions options;
    options.restarts = 64;
    return discriminate(target, source, states, std::move(options));
}

struct VisibilityWindow {
    double threshold_a = 0.0; // 2^{-l_a / (2 M_a)}
    double threshold_b = 0.0;
    double lower = 0.0;       // window (lower, upper]
    double upper = 0.0;
    int l_a = 0, m_a = 0, l_b = 0, m_b = 0;
};

/// Uniform CHSH-visibility thresholds of two topologies. Throws TooFewLeaves.
VisibilityWindow visibility_window(const NetworkTopology &a, const NetworkTopology &b);

/// Comparison of a computed window against externally quoted endpoints.
/// implied_sources_* is the source count M' = -l / (2 log2 v) that would
/// produce each quoted endpoint from the threshold formula.
struct WindowComparison {
    bool matches = false;
    double implied_sources_lower = 0.0;
    double implied_sources_upper = 0.0;
    int l_lower = 0;
    int l_upper = 0;
};

WindowComparison compare_window(const VisibilityWindow &window, double quoted_lower, double quoted_upper,
                                double tol = 1e-4);

} // namespace netbell
