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

#include "netbell/fcbi.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numbers>

#include "netbell/detail/rng.hpp"
#include "netbell/error.hpp"

namespace netbell {

namespace {

Eigen::Vector3d random_unit(std::mt19937_64 &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::Vector3d v;
    do {
        v = {normal(rng), normal(rng), normal(rng)};
    } while (v.norm() < 1e-8);
    return v.normalized();
}

Eigen::Matrix4cd on_first(const Eigen::Matrix2cd &op) {
    Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            out.block<2, 2>(2 * i, 2 * j) = op(i, j) * Eigen::Matrix2cd::Identity();
        }
    }
    return out;
}

Eigen::Matrix4cd on_second(const Eigen::Matrix2cd &op) {
    Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
    out.block<2, 2>(0, 0) = op;
    out.block<2, 2>(2, 2) = op;
    return out;
}

double fcbi_value(const Eigen::MatrixXd &m, const Eigen::Matrix3d &c, const std::vector<Eigen::Vector3d> &a) {
    double total = 0.0;
    for (Eigen::Index y = 0; y < m.cols(); ++y) {
        Eigen::Vector3d d = Eigen::Vector3d::Zero();
        for (Eigen::Index x = 0; x < m.rows(); ++x) {
            d += m(x, y) * a[static_cast<std::size_t>(x)];
        }
        total += (c.transpose() * d).norm();
    }
    return total;
}

} // namespace

std::string FcbiTag::name() const {
    switch (kind) {
    case FcbiKind::Chsh: return "chsh";
    case FcbiKind::Chained: return "chained(" + std::to_string(k) + ")";
    case FcbiKind::Ebi: return "ebi";
    case FcbiKind::Custom: return "custom";
    }
    return "custom";
}

double classical_bound(const Eigen::MatrixXd &entries, int max_rows) {
    const auto rows = entries.rows();
    const auto cols = entries.cols();
    if (rows == 0 || cols == 0) {
        fail(ErrorCode::InvalidArgument, "coefficient matrix is empty");
    }
    if (rows > max_rows) {
        fail(ErrorCode::TooLarge, "classical enumeration over " + std::to_string(rows) +
                                      " rows exceeds the cap of " + std::to_string(max_rows));
    }
    // Global sign flip leaves Σ|Δ_y| unchanged, so fix A_0 = +1 and walk the
    // remaining signs in Gray-code order.
    Eigen::VectorXd delta = entries.colwise().sum().transpose();
    std::vector<int> sign(static_cast<std::size_t>(rows), 1);
    double best = delta.cwiseAbs().sum();
    const std::uint64_t steps = std::uint64_t{1} << (rows - 1);
    for (std::uint64_t i = 1; i < steps; ++i) {
        const int bit = std::countr_zero(i) + 1;
        const auto b = static_cast<std::size_t>(bit);
        delta -= 2.0 * sign[b] * entries.row(bit).transpose();
        sign[b] = -sign[b];
        best = std::max(best, delta.cwiseAbs().sum());
    }
    return best;
}

std::vector<Eigen::Vector3d> catalog_leaf_directions(const FcbiTag &tag) {
    switch (tag.kind) {
    case FcbiKind::Chsh: return {{0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}};
    case FcbiKind::Chained: {
        std::vector<Eigen::Vector3d> out;
        for (int x = 1; x <= tag.k; ++x) {
            const double angle = (x - 1) * std::numbers::pi / tag.k;
            out.emplace_back(std::sin(angle), 0.0, std::cos(angle));
        }
        return out;
    }
    case FcbiKind::Ebi: return {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
    case FcbiKind::Custom: break;
    }
    fail(ErrorCode::UnsupportedFcbi, "no closed-form optimal observables for a custom FCBI");
}

CoefficientMatrix make_catalog(FcbiTag tag) {
    CoefficientMatrix out;
    switch (tag.kind) {
    case FcbiKind::Chsh: {
        tag.k = 2;
        out.entries_.resize(2, 2);
        for (int x = 1; x <= 2; ++x) {
            for (int j = 1; j <= 2; ++j) {
                out.entries_(x - 1, j - 1) = 0.5 * (((x * j) % 2 == 0) ? 1.0 : -1.0);
            }
        }
        out.classical_bound_ = 1.0;
        out.quantum_opt_ = std::numbers::sqrt2;
        break;
    }
    case FcbiKind::Chained: {
        const int k = tag.k;
        if (k < 2) {
            fail(ErrorCode::BadK, "chained inequality needs k >= 2, got " + std::to_string(k));
        }
        out.entries_ = Eigen::MatrixXd::Zero(k, k);
        for (int j = 0; j < k; ++j) {
            out.entries_(j, j) += 0.5;
            // wrap term: row j+1, or row 0 with negated sign for the last column
            if (j + 1 < k) {
                out.entries_(j + 1, j) += 0.5;
            } else {
                out.entries_(0, j) -= 0.5;
            }
        }
        out.classical_bound_ = k - 1.0;
        out.quantum_opt_ = k * std::cos(std::numbers::pi / (2.0 * k));
        break;
    }
    case FcbiKind::Ebi: {
        tag.k = 4;
        out.entries_.resize(3, 4);
        // columns: Δ1 = A1+A2+A3, Δ2 = A1+A2-A3, Δ3 = A1-A2+A3, Δ4 = A1-A2-A3
        out.entries_ << 1, 1, 1, 1,
                        1, 1, -1, -1,
                        1, -1, 1, -1;
        out.classical_bound_ = 6.0;
        out.quantum_opt_ = 4.0 * std::sqrt(3.0);
        break;
    }
    case FcbiKind::Custom:
        fail(ErrorCode::InvalidArgument, "custom matrices are built with make_custom");
    }
    out.tag_ = tag;
    const double enumerated = classical_bound(out.entries_);
    if (std::abs(enumerated - out.classical_bound_) > 1e-12) {
        throw std::logic_error("catalog classical bound disagrees with enumeration for " + tag.name());
    }
    return out;
}

CoefficientMatrix make_custom(const Eigen::MatrixXd &entries, const SeesawOptions &options) {
    CoefficientMatrix out;
    out.entries_ = entries;
    out.tag_ = {FcbiKind::Custom, static_cast<int>(entries.cols())};
    out.classical_bound_ = classical_bound(entries);
    const auto q = quantum_opt_numeric(entries, options);
    // qubit strategies include every deterministic one
    out.quantum_opt_ = std::max(q.value, out.classical_bound_);
    return out;
}

FcbiMaximum maximize_fcbi(const Eigen::MatrixXd &entries, const Eigen::Matrix3d &leaf_correlation,
                          const SeesawOptions &options) {
    const auto rows = static_cast<std::size_t>(entries.rows());
    const auto cols = static_cast<std::size_t>(entries.cols());
    if (rows == 0 || cols == 0) {
        fail(ErrorCode::InvalidArgument, "coefficient matrix is empty");
    }
    if (options.restarts < 1) {
        fail(ErrorCode::InvalidArgument, "see-saw needs at least one restart");
    }
    const Eigen::Matrix3d &c = leaf_correlation;
    const Eigen::Matrix3d ct = c.transpose();

    FcbiMaximum best;
    best.value = -1.0;
    for (int r = 0; r < options.restarts; ++r) {
        auto rng = detail::derived_rng(options.seed, static_cast<std::uint64_t>(r));
        std::vector<Eigen::Vector3d> a(rows);
        for (auto &v : a) {
            v = random_unit(rng);
        }
        std::vector<Eigen::Vector3d> b(cols, Eigen::Vector3d(0.0, 0.0, 1.0));

        double value = fcbi_value(entries, c, a);
        bool converged = false;
        for (int it = 0; it < options.max_iterations; ++it) {
            for (std::size_t y = 0; y < cols; ++y) {
                Eigen::Vector3d d = Eigen::Vector3d::Zero();
                for (std::size_t x = 0; x < rows; ++x) {
                    d += entries(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) * a[x];
                }
                const Eigen::Vector3d w = ct * d;
                if (w.norm() > 1e-300) {
                    b[y] = w.normalized();
                }
            }
            for (std::size_t x = 0; x < rows; ++x) {
                Eigen::Vector3d g = Eigen::Vector3d::Zero();
                for (std::size_t y = 0; y < cols; ++y) {
                    g += entries(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) * (c * b[y]);
                }
                if (g.norm() > 1e-300) {
                    a[x] = g.normalized();
                }
            }
            const double next = fcbi_value(entries, c, a);
            const double gain = next - value;
            value = std::max(value, next);
            if (gain < options.stagnation_tol) {
                converged = true;
                break;
            }
        }
        best.history.push_back(value);
        if (value > best.value) {
            best.value = value;
            best.converged = converged;
            best.observables.leaf.clear();
            best.observables.partner.clear();
            for (const auto &v : a) {
                best.observables.leaf.push_back(QubitObservable::along(v));
            }
            for (std::size_t y = 0; y < cols; ++y) {
                Eigen::Vector3d d = Eigen::Vector3d::Zero();
                for (std::size_t x = 0; x < rows; ++x) {
                    d += entries(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) * a[x];
                }
                best.observables.partner.push_back(aligned_partner(c, d));
            }
        }
    }
    best.restarts_used = options.restarts;
    return best;
}

FcbiMaximum quantum_opt_numeric(const Eigen::MatrixXd &entries, const SeesawOptions &options) {
    return maximize_fcbi(entries, Eigen::Matrix3d::Identity(), options);
}

Eigen::Matrix3d leaf_oriented(const TwoQubitState &rho, Side leaf_side) {
    return leaf_side == Side::First ? rho.correlation() : rho.correlation_from_second();
}

FcbiMaximum state_max_search(const CoefficientMatrix &m, const TwoQubitState &rho, const SeesawOptions &options,
                             Side leaf_side) {
    return maximize_fcbi(m.entries(), leaf_oriented(rho, leaf_side), options);
}

double state_max(const CoefficientMatrix &m, const TwoQubitState &rho, const SeesawOptions &options,
                 Side leaf_side) {
    const auto &tag = m.tag();
    if (tag.kind == FcbiKind::Chsh || (tag.kind == FcbiKind::Chained && tag.k == 2)) {
        const auto &t = rho.singular_values();
        return std::sqrt(t(0) * t(0) + t(1) * t(1));
    }
    const auto result = state_max_search(m, rho, options, leaf_side);
    if (!result.converged) {
        throw NonConvergenceError("see-saw for " + tag.name() + " did not converge", result.value);
    }
    return result.value;
}

SosWitness sos_witness(const CoefficientMatrix &m, const TwoQubitState &rho, const FcbiStrategy &observables,
                       Side leaf_side) {
    if (static_cast<int>(observables.leaf.size()) != m.rows() ||
        static_cast<int>(observables.partner.size()) != m.cols()) {
        fail(ErrorCode::IncompleteStrategy, "observables do not match the coefficient matrix shape");
    }
    const auto leaf_op = [&](const Eigen::Matrix2cd &op) {
        return leaf_side == Side::First ? on_first(op) : on_second(op);
    };
    const auto partner_op = [&](const Eigen::Matrix2cd &op) {
        return leaf_side == Side::First ? on_second(op) : on_first(op);
    };
    const Eigen::Matrix4cd &r = rho.matrix();

    SosWitness out;
    for (int y = 0; y < m.cols(); ++y) {
        Eigen::Matrix2cd delta = Eigen::Matrix2cd::Zero();
        for (int x = 0; x < m.rows(); ++x) {
            delta += m.entries()(x, y) * observables.leaf[static_cast<std::size_t>(x)].matrix();
        }
        const Eigen::Matrix4cd d4 = leaf_op(delta);
        const Eigen::Matrix4cd b4 = partner_op(observables.partner[static_cast<std::size_t>(y)].matrix());
        const double omega = std::sqrt(std::max(0.0, (r * d4.adjoint() * d4).trace().real()));
        const Eigen::Matrix4cd l = omega > 1e-15 ? Eigen::Matrix4cd(d4 / omega - b4) : Eigen::Matrix4cd(-b4);
        out.omega.push_back(omega);
        out.residuals.push_back((r * l.adjoint() * l).trace().real());
        out.achieved_value += (r * d4 * b4).trace().real();
        out.predicted_bound += omega;
    }
    return out;
}

Eigen::Matrix3d leaf_frame(const Eigen::Matrix3d &c) {
    const double offdiag = (c - Eigen::Matrix3d(c.diagonal().asDiagonal())).cwiseAbs().maxCoeff();
    Eigen::Matrix3d axes; // columns: top, second, third singular directions
    if (offdiag <= 1e-12) {
        std::array<int, 3> order = {2, 0, 1}; // z, x, y preference on ties
        std::stable_sort(order.begin(), order.end(),
                         [&](int i, int j) { return std::abs(c(i, i)) > std::abs(c(j, j)) + 1e-12; });
        for (int col = 0; col < 3; ++col) {
            axes.col(col) = Eigen::Vector3d::Unit(order[static_cast<std::size_t>(col)]);
        }
    } else {
        Eigen::JacobiSVD<Eigen::Matrix3d> svd(c, Eigen::ComputeFullU);
        axes = svd.matrixU();
    }
    Eigen::Matrix3d frame;
    frame.col(0) = axes.col(1); // canonical x
    frame.col(1) = axes.col(2); // canonical y
    frame.col(2) = axes.col(0); // canonical z
    return frame;
}

QubitObservable aligned_partner(const Eigen::Matrix3d &leaf_correlation, const Eigen::Vector3d &delta) {
    const Eigen::Vector3d w = leaf_correlation.transpose() * delta;
    if (w.norm() <= 1e-14) {
        return QubitObservable::z();
    }
    return QubitObservable::along(w);
}

} // namespace netbell
