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

#include "netbell/error.hpp"
#include "netbell/fcbi.hpp"
#include "support/oracles.hpp"

using namespace netbell;

namespace {

double fcbi_value(const CoefficientMatrix &m, const Eigen::Matrix3d &c, const FcbiStrategy &s) {
    double v = 0.0;
    for (int x = 0; x < m.rows(); ++x) {
        for (int y = 0; y < m.cols(); ++y) {
            v += m.entries()(x, y) * s.leaf[static_cast<std::size_t>(x)].bloch().dot(c * s.partner[static_cast<std::size_t>(y)].bloch());
        }
    }
    return v;
}

} // namespace

TEST(Fcbi, ChshMatrix) {
    const auto m = make_chsh();
    Eigen::Matrix2d expected;
    expected << -0.5, 0.5, 0.5, 0.5;
    EXPECT_EQ(m.entries(), expected);
    EXPECT_EQ(m.classical_bound(), 1.0);
    EXPECT_DOUBLE_EQ(m.quantum_opt(), std::numbers::sqrt2);
    EXPECT_EQ(m.tag().name(), "chsh");
}

TEST(Fcbi, ChainedMatrix) {
    const auto m = make_chained(3);
    Eigen::Matrix3d expected;
    expected << 0.5, 0, -0.5, 0.5, 0.5, 0, 0, 0.5, 0.5;
    EXPECT_EQ(m.entries(), expected);
    EXPECT_EQ(m.tag().name(), "chained(3)");
}

TEST(Fcbi, EbiMatrix) {
    const auto m = make_ebi();
    Eigen::Matrix<double, 3, 4> expected;
    expected << 1, 1, 1, 1, 1, 1, -1, -1, 1, -1, 1, -1;
    EXPECT_EQ(m.entries(), expected.cast<double>().eval());
    EXPECT_EQ(m.classical_bound(), 6.0);
    EXPECT_DOUBLE_EQ(m.quantum_opt(), 4 * std::sqrt(3.0));
}

TEST(Fcbi, CatalogBoundsMatchBruteForce) {
    for (int k = 2; k <= 10; ++k) {
        const auto m = make_chained(k);
        EXPECT_DOUBLE_EQ(m.classical_bound(), k - 1.0);
        EXPECT_DOUBLE_EQ(ref::brute_classical_bound(m.entries()), k - 1.0);
        EXPECT_NEAR(m.quantum_opt(), k * std::cos(std::numbers::pi / (2 * k)), 1e-15);
    }
    EXPECT_DOUBLE_EQ(ref::brute_classical_bound(make_ebi().entries()), 6.0);
    EXPECT_DOUBLE_EQ(ref::brute_classical_bound(make_chsh().entries()), 1.0);
}

TEST(Fcbi, GrayCodeMatchesBruteForceOnRandomMatrices) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int trial = 0; trial < 300; ++trial) {
        const int r = 1 + static_cast<int>(rng() % 9);
        const int c = 1 + static_cast<int>(rng() % 5);
        Eigen::MatrixXd m(r, c);
        for (int i = 0; i < r; ++i) {
            for (int j = 0; j < c; ++j) {
                m(i, j) = u(rng);
            }
        }
        ASSERT_NEAR(classical_bound(m), ref::brute_classical_bound(m), 1e-12);
    }
}

TEST(Fcbi, SeesawMatchesClosedForms) {
    const SeesawOptions opts{.restarts = 16, .seed = 1};
    EXPECT_NEAR(quantum_opt_numeric(make_chsh(), opts).value, std::numbers::sqrt2, 1e-6);
    for (int k = 3; k <= 6; ++k) {
        EXPECT_NEAR(quantum_opt_numeric(make_chained(k), opts).value, k * std::cos(std::numbers::pi / (2 * k)), 1e-6);
    }
    const auto ebi = quantum_opt_numeric(make_ebi(), opts);
    EXPECT_NEAR(ebi.value, 4 * std::sqrt(3.0), 1e-6);
    EXPECT_TRUE(ebi.converged);
    EXPECT_EQ(ebi.history.size(), 16U);
}

TEST(Fcbi, SeesawReportedObservablesAttainValue) {
    const auto m = make_chained(4);
    const auto res = quantum_opt_numeric(m, {.restarts = 8, .seed = 2});
    EXPECT_NEAR(fcbi_value(m, Eigen::Matrix3d::Identity(), res.observables), res.value, 1e-9);
}

TEST(Fcbi, StateMaxChshClosedForm) {
    std::mt19937_64 rng(21);
    const auto m = make_chsh();
    for (int i = 0; i < 100; ++i) {
        const auto rho = ref::random_state(rng);
        const double expected = ref::chsh_closed_form(rho);
        EXPECT_NEAR(state_max(m, rho), expected, 1e-12);
        EXPECT_NEAR(state_max_search(m, rho, {.restarts = 8, .seed = static_cast<std::uint64_t>(i)}).value, expected,
                    1e-6);
        EXPECT_NEAR(state_max(m, rho, {}, Side::Second), expected, 1e-12);
    }
}

TEST(Fcbi, StateMaxScalesWithVisibility) {
    for (const double v : {0.2, 0.6, 1.0}) {
        EXPECT_NEAR(state_max(make_chained(3), werner({v})), v * 3 * std::cos(std::numbers::pi / 6), 1e-9);
        EXPECT_NEAR(state_max(make_ebi(), werner({v})), v * 4 * std::sqrt(3.0), 1e-9);
    }
}

TEST(Fcbi, MakeCustom) {
    Eigen::MatrixXd e(2, 2);
    e << 1, 1, 1, -1;
    const auto m = make_custom(e);
    EXPECT_EQ(m.tag().kind, FcbiKind::Custom);
    EXPECT_DOUBLE_EQ(m.classical_bound(), 2.0);
    EXPECT_NEAR(m.quantum_opt(), 2 * std::numbers::sqrt2, 1e-6);
    Eigen::MatrixXd trivial(2, 1);
    trivial << 1, 0;
    EXPECT_DOUBLE_EQ(make_custom(trivial).quantum_opt(), 1.0);
}

TEST(Fcbi, Errors) {
    try {
        make_chained(1);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::BadK);
    }
    try {
        classical_bound(Eigen::MatrixXd::Ones(25, 2));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::TooLarge);
    }
    EXPECT_THROW(make_catalog({FcbiKind::Custom, 0}), Error);
    try {
        catalog_leaf_directions({FcbiKind::Custom, 0});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::UnsupportedFcbi);
    }
}

TEST(Fcbi, SosWitnessAtOptimum) {
    const auto m = make_chsh();
    const auto rho = maximally_entangled();
    FcbiStrategy s;
    s.leaf = {QubitObservable::z(), QubitObservable::x()};
    s.partner = {QubitObservable::along({1, 0, -1}), QubitObservable::along({1, 0, 1})};
    const auto w = sos_witness(m, rho, s);
    EXPECT_NEAR(w.predicted_bound, std::numbers::sqrt2, 1e-12);
    EXPECT_NEAR(w.achieved_value, std::numbers::sqrt2, 1e-12);
    for (const double r : w.residuals) {
        EXPECT_NEAR(r, 0.0, 1e-12);
    }
}

TEST(FcbiProperty, SosIdentityHolds) {
    std::mt19937_64 rng(4);
    const std::vector<CoefficientMatrix> catalog{make_chsh(), make_chained(3), make_chained(5), make_ebi()};
    for (int i = 0; i < 400; ++i) {
        const auto &m = catalog[static_cast<std::size_t>(i) % catalog.size()];
        const auto rho = ref::random_state(rng);
        FcbiStrategy s;
        for (int x = 0; x < m.rows(); ++x) {
            s.leaf.push_back(QubitObservable::along(ref::random_unit(rng)));
        }
        for (int y = 0; y < m.cols(); ++y) {
            s.partner.push_back(QubitObservable::along(ref::random_unit(rng)));
        }
        const Side side = (i % 2) ? Side::First : Side::Second;
        const auto w = sos_witness(m, rho, s, side);
        double rebuilt = w.predicted_bound;
        for (std::size_t y = 0; y < w.omega.size(); ++y) {
            rebuilt -= 0.5 * w.omega[y] * w.residuals[y];
            ASSERT_GE(w.residuals[y], -1e-12);
        }
        ASSERT_NEAR(rebuilt, w.achieved_value, 1e-10);
        ASSERT_LE(w.achieved_value, w.predicted_bound + 1e-12);
        ASSERT_NEAR(w.achieved_value, fcbi_value(m, leaf_oriented(rho, side), s), 1e-10);
    }
}

TEST(Fcbi, LeafFrameIsOrthogonal) {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 100; ++i) {
        const auto rho = ref::random_state(rng);
        const Eigen::Matrix3d f = leaf_frame(rho.correlation());
        EXPECT_LT((f.transpose() * f - Eigen::Matrix3d::Identity()).norm(), 1e-10);
    }
    const Eigen::Matrix3d pauli = leaf_frame(Eigen::Vector3d(0.3, -0.3, 0.9).asDiagonal());
    EXPECT_LT((pauli.col(2) - Eigen::Vector3d::UnitZ()).norm(), 1e-15);
    EXPECT_LT((pauli.col(0) - Eigen::Vector3d::UnitX()).norm(), 1e-15);
}

TEST(Fcbi, AlignedPartner) {
    const Eigen::Matrix3d c = Eigen::Vector3d(1, -1, 1).asDiagonal();
    EXPECT_LT((aligned_partner(c, {0, 2, 0}).bloch() - Eigen::Vector3d(0, -1, 0)).norm(), 1e-15);
    EXPECT_LT((aligned_partner(c, Eigen::Vector3d::Zero()).bloch() - Eigen::Vector3d::UnitZ()).norm(), 1e-15);
}
