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

#include "netbell/analysis.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "netbell/error.hpp"

namespace netbell {

namespace {

/// Common k when every FCBI is CHSH or CHAINED(k); CHSH counts as k = 2.
std::optional<int> uniform_chained_k(const NetworkInequality &ineq) {
    std::optional<int> k;
    for (const auto &[src, m] : ineq.fcbi_map()) {
        int kk = 0;
        if (m.tag().kind == FcbiKind::Chsh) {
            kk = 2;
        } else if (m.tag().kind == FcbiKind::Chained) {
            kk = m.tag().k;
        } else {
            return std::nullopt;
        }
        if (k && *k != kk) {
            return std::nullopt;
        }
        k = kk;
    }
    return k;
}

double chained_ratio(int k) { return (k - 1) / (k * std::cos(std::numbers::pi / (2.0 * k))); }

SourceStates uniform_werner(const NetworkInequality &ineq, double v, double schmidt) {
    SourceStates states;
    for (SourceIndex s = 1; s <= ineq.topology().n_sources(); ++s) {
        const bool peripheral = ineq.leaves().leaf_of_source(s).has_value();
        states.push_back(werner({v, peripheral ? schmidt : std::numbers::sqrt2 / 2.0}));
    }
    return states;
}

} // namespace

double werner_violation_threshold(const NetworkInequality &ineq, const std::vector<double> &schmidt,
                                  const SeesawOptions &options) {
    const auto &pmap = ineq.leaves().peripheral_map;
    if (!schmidt.empty() && schmidt.size() != pmap.size()) {
        fail(ErrorCode::InvalidArgument, "need one Schmidt coefficient per peripheral source");
    }
    for (const double a : schmidt) {
        if (!(a >= 0.0 && a <= 1.0)) {
            fail(ErrorCode::BadSchmidt, "Schmidt coefficient must lie in [0, 1]");
        }
    }
    for (const auto &[src, m] : ineq.fcbi_map()) {
        if (m.tag().kind == FcbiKind::Custom) {
            fail(ErrorCode::UnsupportedMap, "noise thresholds need catalog FCBIs; source " + std::to_string(src) +
                                                " is custom");
        }
    }
    const auto a_of = [&](std::size_t i) { return schmidt.empty() ? std::numbers::sqrt2 / 2.0 : schmidt[i]; };
    bool all_chsh = true;
    for (const auto &[src, m] : ineq.fcbi_map()) {
        all_chsh = all_chsh && m.tag().kind == FcbiKind::Chsh;
    }
    if (all_chsh) {
        double prod = 1.0;
        for (std::size_t i = 0; i < pmap.size(); ++i) {
            const double a = a_of(i);
            const double b2 = 1.0 - a * a;
            prod *= std::sqrt(1.0 + 4.0 * a * a * b2);
        }
        return 1.0 / prod;
    }
    bool maximal = true;
    for (std::size_t i = 0; i < pmap.size(); ++i) {
        maximal = maximal && std::abs(a_of(i) - std::numbers::sqrt2 / 2.0) <= 1e-12;
    }
    if (const auto k = uniform_chained_k(ineq); k && maximal) {
        return std::pow(chained_ratio(*k), ineq.l());
    }
    // Peripheral maxima scale linearly in v; intermediate t0 = v as well.
    SourceStates states;
    std::size_t leaf_index = 0;
    std::vector<double> a_by_source(static_cast<std::size_t>(ineq.topology().n_sources()), std::numbers::sqrt2 / 2.0);
    for (const auto &[leaf, src] : pmap) {
        a_by_source[static_cast<std::size_t>(src - 1)] = a_of(leaf_index++);
    }
    for (SourceIndex s = 1; s <= ineq.topology().n_sources(); ++s) {
        const double a = a_by_source[static_cast<std::size_t>(s - 1)];
        states.push_back(a >= 1.0 || a <= 0.0 ? product_zero() : pure_schmidt(a));
    }
    const double at_one = mixed_state_bound(ineq, states, options);
    if (at_one <= 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return std::pow(ineq.classical_bound() / at_one, ineq.l());
}

double critical_visibility_uniform(const NetworkInequality &ineq) {
    const auto k = uniform_chained_k(ineq);
    if (!k) {
        fail(ErrorCode::UnsupportedMap, "uniform critical visibility needs every FCBI to be CHSH or CHAINED(k)");
    }
    return std::pow(chained_ratio(*k), static_cast<double>(ineq.l()) / ineq.topology().n_sources());
}

std::optional<double> critical_visibility_bisection(const NetworkInequality &ineq, double schmidt, double tol,
                                                    const SeesawOptions &options) {
    const double cb = ineq.classical_bound();
    const auto excess = [&](double v) { return mixed_state_bound(ineq, uniform_werner(ineq, v, schmidt), options) - cb; };
    if (excess(1.0) <= 0.0) {
        return std::nullopt;
    }
    double lo = 1e-9;
    double hi = 1.0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (excess(mid) > 0.0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

MahlerCheck mahler_check(const Eigen::MatrixXd &X, double rank_tol) {
    if (X.size() == 0) {
        fail(ErrorCode::InvalidArgument, "empty matrix");
    }
    if (X.minCoeff() < 0.0) {
        fail(ErrorCode::NegativeEntry, "matrix entries must be non-negative");
    }
    const auto q = static_cast<double>(X.cols());
    MahlerCheck out;
    for (Eigen::Index j = 0; j < X.rows(); ++j) {
        out.lhs += std::pow(X.row(j).prod(), 1.0 / q);
    }
    out.rhs = 1.0;
    for (Eigen::Index i = 0; i < X.cols(); ++i) {
        out.rhs *= std::pow(X.col(i).sum(), 1.0 / q);
    }
    out.holds = out.lhs <= out.rhs + 1e-12 * std::max(1.0, out.rhs);
    bool zero_column = false;
    for (Eigen::Index i = 0; i < X.cols(); ++i) {
        zero_column = zero_column || X.col(i).maxCoeff() == 0.0;
    }
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(X);
    const auto &sv = svd.singularValues();
    const bool rank1 = sv.size() < 2 || sv(1) <= rank_tol * sv(0);
    out.equality = rank1 || zero_column;
    return out;
}

ViolationReport report(const NetworkInequality &ineq, const SourceStates &states, const MeasurementStrategy &strategy,
                       std::string strategy_source, const SeesawOptions &options, double tol) {
    const auto eval = evaluate_S(ineq, states, strategy, tol);
    ViolationReport out;
    out.I = eval.I;
    out.S = eval.S;
    out.classical_bound = ineq.classical_bound();
    out.quantum_bound = ineq.quantum_bound();
    out.mixed_bound = mixed_state_bound(ineq, states, options);
    out.violates_classical = eval.classical_violation;
    out.saturates_quantum = eval.quantum_saturation;
    out.saturates_mixed = std::abs(out.S - out.mixed_bound) <= tol;
    out.conditions = check_conditions(ineq, states, strategy, tol);
    out.conditions_met = out.conditions.saturated;
    out.strategy_source = std::move(strategy_source);
    out.seed = options.seed;
    out.tol = tol;
    return out;
}

} // namespace netbell
