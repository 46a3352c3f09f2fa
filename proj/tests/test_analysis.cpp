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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "netbell/analysis.hpp"
#include "netbell/error.hpp"
#include "support/oracles.hpp"

using namespace netbell;

namespace {

NetworkTopology six_party() { return build_topology(6, {{1, 2}, {2, 4}, {3, 4}, {4, 6}, {4, 5}, {6, 2}}); }
NetworkTopology chain5() { return build_topology(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}}); }
NetworkTopology tree5() { return build_topology(5, {{1, 2}, {2, 3}, {3, 4}, {3, 5}}); }

NetworkInequality uniform(const NetworkTopology &topo, int k) {
    std::map<SourceIndex, CoefficientMatrix> map;
    for (const auto s : find_leaves(topo).peripheral_sources()) {
        map.emplace(s, k == 2 ? make_chsh() : make_chained(k));
    }
    return build_inequality(topo, k, std::move(map));
}

/// Uniform Werner visibility where S first exceeds the classical bound,
/// found by scanning the S reached by the optimal strategy.
double scanned_critical(const NetworkInequality &ineq, double lo, double hi) {
    for (int it = 0; it < 60; ++it) {
        const double v = 0.5 * (lo + hi);
        const SourceStates states(static_cast<std::size_t>(ineq.topology().n_sources()), werner({v}));
        const double S = evaluate_S(ineq, states, optimal_strategy(ineq, states)).S;
        (S > ineq.classical_bound() ? hi : lo) = v;
    }
    return hi;
}

} // namespace

TEST(Threshold, ChshMaximal) {
    const auto ineq = uniform(six_party(), 2);
    EXPECT_NEAR(werner_violation_threshold(ineq), std::pow(0.5, 1.5), 1e-12);
}

TEST(Threshold, ChshSchmidt) {
    const auto ineq = uniform(six_party(), 2);
    const std::vector<double> a{0.9, 0.6, std::numbers::sqrt2 / 2};
    double expected = 1.0;
    for (const double ai : a) {
        const double bi = std::sqrt(1 - ai * ai);
        expected /= std::sqrt(1 + 4 * ai * ai * bi * bi);
    }
    EXPECT_NEAR(werner_violation_threshold(ineq, a), expected, 1e-12);
    // Product states on the leaves: no violation for any visibility.
    EXPECT_NEAR(werner_violation_threshold(ineq, {1.0, 1.0, 1.0}), 1.0, 1e-12);
    EXPECT_THROW(werner_violation_threshold(ineq, {0.5}), Error);
    EXPECT_THROW(werner_violation_threshold(ineq, {1.5, 0.5, 0.5}), Error);
}

TEST(Threshold, ChshSchmidtAgreesWithMixedBound) {
    // At Π v = threshold the mixed-state bound equals the classical bound.
    const auto ineq = uniform(six_party(), 2);
    const std::vector<double> a{0.8, 0.75, 0.9};
    const double t = werner_violation_threshold(ineq, a);
    SourceStates states(6, maximally_entangled());
    const auto peripheral = ineq.leaves().peripheral_sources();
    for (std::size_t i = 0; i < peripheral.size(); ++i) {
        states[static_cast<std::size_t>(peripheral[i] - 1)] = werner({i == 0 ? t : 1.0, a[i]});
    }
    EXPECT_NEAR(mixed_state_bound(ineq, states), ineq.classical_bound(), 1e-9);
}

TEST(Threshold, ChainedAndEbi) {
    for (int k = 3; k <= 6; ++k) {
        const auto ineq = uniform(six_party(), k);
        EXPECT_NEAR(werner_violation_threshold(ineq), std::pow((k - 1) / (k * std::cos(std::numbers::pi / (2 * k))), 3),
                    1e-12);
    }
    const auto e3 = build_inequality(six_party(), 4, {{1, make_ebi()}, {3, make_ebi()}, {5, make_chained(4)}});
    const double t = werner_violation_threshold(e3);
    EXPECT_NEAR(t, std::pow(e3.classical_bound() / e3.quantum_bound(), 3), 1e-9);
}

TEST(Threshold, CustomUnsupported) {
    Eigen::MatrixXd e(2, 2);
    e << 1, 1, 1, -1;
    const auto ineq = build_inequality(build_topology(3, {{1, 2}, {2, 3}}), 2, {{1, make_custom(e)}, {2, make_chsh()}});
    try {
        werner_violation_threshold(ineq);
        FAIL();
    } catch (const Error &err) {
        EXPECT_EQ(err.code(), ErrorCode::UnsupportedMap);
    }
    EXPECT_THROW(critical_visibility_uniform(ineq), Error);
}

TEST(CriticalVisibility, ClosedFormMatchesBisectionAndScan) {
    for (const auto &topo : {chain5(), tree5(), six_party()}) {
        for (int k = 2; k <= 5; ++k) {
            const auto ineq = uniform(topo, k);
            const double closed = critical_visibility_uniform(ineq);
            const auto bis = critical_visibility_bisection(ineq);
            ASSERT_TRUE(bis.has_value());
            EXPECT_NEAR(closed, *bis, 1e-9);
            EXPECT_NEAR(closed, scanned_critical(ineq, 0.0, 1.0), 1e-9);
        }
    }
    EXPECT_NEAR(critical_visibility_uniform(uniform(chain5(), 2)), std::pow(2.0, -0.25), 1e-12);
    EXPECT_NEAR(critical_visibility_uniform(uniform(tree5(), 2)), std::pow(2.0, -3.0 / 8.0), 1e-12);
}

TEST(CriticalVisibility, BisectionRejectsProductSchmidt) {
    try {
        critical_visibility_bisection(uniform(chain5(), 2), 1.0);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::BadSchmidt);
    }
}

TEST(CriticalVisibility, EbiBisection) {
    const auto e3 = build_inequality(six_party(), 4, {{1, make_ebi()}, {3, make_ebi()}, {5, make_chained(4)}});
    const auto v = critical_visibility_bisection(e3);
    ASSERT_TRUE(v.has_value());
    EXPECT_NEAR(*v, std::pow(werner_violation_threshold(e3), 1.0 / 6.0), 1e-9);
}

TEST(Mahler, KnownCases) {
    Eigen::MatrixXd rank1(2, 3);
    rank1 << 1, 2, 3, 2, 4, 6;
    const auto a = mahler_check(rank1);
    EXPECT_TRUE(a.holds);
    EXPECT_TRUE(a.equality);
    EXPECT_NEAR(a.lhs, a.rhs, 1e-12);
    EXPECT_NEAR(a.lhs, std::cbrt(6.0) + std::cbrt(48.0), 1e-12);

    Eigen::MatrixXd id = Eigen::MatrixXd::Identity(2, 2);
    const auto b = mahler_check(id);
    EXPECT_TRUE(b.holds);
    EXPECT_FALSE(b.equality);
    EXPECT_DOUBLE_EQ(b.lhs, 0.0);
    EXPECT_DOUBLE_EQ(b.rhs, 1.0);

    Eigen::MatrixXd zc(2, 2);
    zc << 0, 1, 0, 2;
    EXPECT_TRUE(mahler_check(zc).equality);

    Eigen::MatrixXd neg(1, 2);
    neg << 1, -1;
    try {
        mahler_check(neg);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::NegativeEntry);
    }
}

TEST(MahlerProperty, RandomMatrices) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    std::uniform_int_distribution<int> dim(1, 6);
    for (int t = 0; t < 5000; ++t) {
        const int p = dim(rng);
        const int q = dim(rng);
        Eigen::MatrixXd X(p, q);
        for (Eigen::Index i = 0; i < X.size(); ++i) {
            X.data()[i] = u(rng);
        }
        const auto c = mahler_check(X);
        ASSERT_TRUE(c.holds);
        // Independent arithmetic.
        double lhs = 0.0;
        for (int j = 0; j < p; ++j) {
            lhs += std::pow(X.row(j).prod(), 1.0 / q);
        }
        double rhs = 1.0;
        for (int i = 0; i < q; ++i) {
            rhs *= std::pow(X.col(i).sum(), 1.0 / q);
        }
        ASSERT_NEAR(c.lhs, lhs, 1e-12 * (1 + rhs));
        ASSERT_NEAR(c.rhs, rhs, 1e-12 * (1 + rhs));
        if (p > 1 && q > 1) {
            ASSERT_FALSE(c.equality);
        }
        // Rank-one rescaling gives equality.
        Eigen::VectorXd r = X.col(0);
        Eigen::RowVectorXd s = X.row(0);
        const auto e = mahler_check(r * s);
        ASSERT_TRUE(e.equality);
        ASSERT_NEAR(e.lhs, e.rhs, 1e-10 * (1 + e.rhs));
    }
}

TEST(Report, SixPartyChsh) {
    const auto ineq = uniform(six_party(), 2);
    const SourceStates states(6, maximally_entangled());
    const auto r = report(ineq, states, optimal_strategy(ineq, states), "optimal");
    EXPECT_NEAR(r.S, std::numbers::sqrt2, 1e-12);
    EXPECT_DOUBLE_EQ(r.classical_bound, 1.0);
    EXPECT_NEAR(r.quantum_bound, std::numbers::sqrt2, 1e-12);
    EXPECT_NEAR(r.mixed_bound, std::numbers::sqrt2, 1e-12);
    EXPECT_TRUE(r.violates_classical);
    EXPECT_TRUE(r.saturates_quantum);
    EXPECT_TRUE(r.conditions_met);
    EXPECT_TRUE(r.saturates_mixed);
    EXPECT_EQ(r.strategy_source, "optimal");
}

TEST(Report, RandomStrategiesNeitherSaturateNorMeetConditions) {
    std::mt19937_64 rng(8);
    const auto ineq = uniform(six_party(), 2);
    for (int i = 0; i < 30; ++i) {
        const auto states = ref::random_states(6, rng);
        const auto rnd = report(ineq, states, ref::random_strategy(ineq.topology(), ineq.input_counts(), rng));
        EXPECT_FALSE(rnd.saturates_quantum);
        EXPECT_FALSE(rnd.conditions_met);
    }
}
