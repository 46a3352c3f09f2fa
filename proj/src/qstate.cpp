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

#include "netbell/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "netbell/error.hpp"

namespace netbell {

namespace pauli {

const Eigen::Matrix2cd &sigma(int u) {
    using C = std::complex<double>;
    static const Eigen::Matrix2cd ops[4] = {
        (Eigen::Matrix2cd() << C(1, 0), C(0, 0), C(0, 0), C(1, 0)).finished(),
        (Eigen::Matrix2cd() << C(0, 0), C(1, 0), C(1, 0), C(0, 0)).finished(),
        (Eigen::Matrix2cd() << C(0, 0), C(0, -1), C(0, 1), C(0, 0)).finished(),
        (Eigen::Matrix2cd() << C(1, 0), C(0, 0), C(0, 0), C(-1, 0)).finished(),
    };
    return ops[u];
}

} // namespace pauli

namespace {

Eigen::Matrix4cd kron(const Eigen::Matrix2cd &a, const Eigen::Matrix2cd &b) {
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
        }
    }
    return out;
}

double expectation(const Eigen::Matrix4cd &rho, const Eigen::Matrix4cd &op) {
    return (rho * op).trace().real();
}

} // namespace

Eigen::Vector3d singular_values_desc(const Eigen::Matrix3d &m) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(m.transpose() * m);
    Eigen::Vector3d ev = eig.eigenvalues(); // ascending
    Eigen::Vector3d out;
    for (int i = 0; i < 3; ++i) {
        out(i) = std::sqrt(std::max(0.0, ev(2 - i)));
    }
    return out;
}

TwoQubitState TwoQubitState::from_matrix(const Eigen::Matrix4cd &matrix) {
    const double herm_err = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
    if (herm_err > kHermitianTol) {
        fail(ErrorCode::NotAState, "matrix is not Hermitian (deviation " + std::to_string(herm_err) + ")");
    }
    const std::complex<double> tr = matrix.trace();
    if (std::abs(tr.real() - 1.0) > kTraceTol || std::abs(tr.imag()) > kTraceTol) {
        fail(ErrorCode::NotAState, "trace is not 1 (got " + std::to_string(tr.real()) + ")");
    }
    const Eigen::Matrix4cd herm = 0.5 * (matrix + matrix.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(herm, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues()(0) < -kPsdTol) {
        fail(ErrorCode::NotAState,
             "matrix is not positive semidefinite (min eigenvalue " + std::to_string(eig.eigenvalues()(0)) + ")");
    }

    TwoQubitState s;
    s.matrix_ = herm;
    const auto &id = pauli::sigma(0);
    for (int u = 1; u <= 3; ++u) {
        s.bloch_a_(u - 1) = expectation(herm, kron(pauli::sigma(u), id));
        s.bloch_b_(u - 1) = expectation(herm, kron(id, pauli::sigma(u)));
        for (int v = 1; v <= 3; ++v) {
            s.correlation_(u - 1, v - 1) = expectation(herm, kron(pauli::sigma(u), pauli::sigma(v)));
        }
    }
    s.singvals_ = singular_values_desc(s.correlation_);
    return s;
}

Eigen::Matrix4cd TwoQubitState::reconstruct() const {
    const auto &id = pauli::sigma(0);
    Eigen::Matrix4cd out = kron(id, id);
    for (int u = 1; u <= 3; ++u) {
        out += bloch_a_(u - 1) * kron(pauli::sigma(u), id);
        out += bloch_b_(u - 1) * kron(id, pauli::sigma(u));
        for (int v = 1; v <= 3; ++v) {
            out += correlation_(u - 1, v - 1) * kron(pauli::sigma(u), pauli::sigma(v));
        }
    }
    return 0.25 * out;
}

TwoQubitState bloch_decompose(const Eigen::Matrix4cd &matrix) {
    return TwoQubitState::from_matrix(matrix);
}

TwoQubitState werner(const WernerSpec &spec) {
    const double v = spec.visibility;
    if (!(v >= 0.0 && v <= 1.0)) {
        fail(ErrorCode::BadVisibility, "visibility must lie in [0, 1], got " + std::to_string(v));
    }
    const double a = spec.schmidt_a;
    if (!(a > 0.0 && a < 1.0)) {
        fail(ErrorCode::BadSchmidt, "Schmidt coefficient must lie in (0, 1), got " + std::to_string(a));
    }
    const double b = std::sqrt(1.0 - a * a);
    Eigen::Vector4cd phi = Eigen::Vector4cd::Zero();
    phi(0) = a;
    phi(3) = b;
    const Eigen::Matrix4cd rho = v * (phi * phi.adjoint()) + (1.0 - v) / 4.0 * Eigen::Matrix4cd::Identity();
    return TwoQubitState::from_matrix(rho);
}

TwoQubitState pure_schmidt(double a) { return werner({1.0, a}); }

TwoQubitState maximally_entangled() { return werner({1.0, std::sqrt(0.5)}); }

TwoQubitState classical_zz() {
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    rho(0, 0) = 0.5;
    rho(3, 3) = 0.5;
    return TwoQubitState::from_matrix(rho);
}

TwoQubitState product_zero() {
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    rho(0, 0) = 1.0;
    return TwoQubitState::from_matrix(rho);
}

TwoQubitState random_mixed(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    double total = 0.0;
    for (int k = 0; k < 4; ++k) {
        Eigen::Vector4cd psi;
        for (int i = 0; i < 4; ++i) {
            psi(i) = {normal(rng), normal(rng)};
        }
        psi.normalize();
        const double w = uniform(rng);
        total += w;
        rho += w * (psi * psi.adjoint());
    }
    rho /= total;
    rho = 0.5 * (rho + rho.adjoint()).eval();
    rho /= rho.trace().real();
    return TwoQubitState::from_matrix(rho);
}

} // namespace netbell
