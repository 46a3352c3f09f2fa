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

#include <Eigen/Dense>

namespace netbell {

namespace pauli {
/// sigma(0) is the identity; sigma(1..3) are X, Y, Z.
const Eigen::Matrix2cd &sigma(int u);
} // namespace pauli

/// Two-qubit density matrix together with its Pauli-basis decomposition
///   rho = 1/4 (I⊗I + a·σ⊗I + I⊗b·σ + Σ t_uv σ_u⊗σ_v).
class TwoQubitState {
  public:
    /// Validates Hermiticity, unit trace and positivity, then decomposes.
    /// Throws Error(NotAState) beyond tolerance.
    static TwoQubitState from_matrix(const Eigen::Matrix4cd &matrix);

    const Eigen::Matrix4cd &matrix() const { return matrix_; }
    const Eigen::Vector3d &bloch_a() const { return bloch_a_; }
    const Eigen::Vector3d &bloch_b() const { return bloch_b_; }
    /// t_uv = Tr[rho (σ_u ⊗ σ_v)], first index on the first qubit.
    const Eigen::Matrix3d &correlation() const { return correlation_; }
    /// Singular values of the correlation matrix, descending.
    const Eigen::Vector3d &singular_values() const { return singvals_; }
    double t0() const { return singvals_(0); }

    /// T^T: the correlation matrix with the second qubit's index first.
    Eigen::Matrix3d correlation_from_second() const { return correlation_.transpose(); }

    /// Pauli-expansion rebuild from (a, b, T).
    Eigen::Matrix4cd reconstruct() const;

  private:
    TwoQubitState() = default;
    Eigen::Matrix4cd matrix_;
    Eigen::Vector3d bloch_a_;
    Eigen::Vector3d bloch_b_;
    Eigen::Matrix3d correlation_;
    Eigen::Vector3d singvals_;
};

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;

TwoQubitState bloch_decompose(const Eigen::Matrix4cd &matrix);

/// Singular values of a real 3x3 matrix via the eigenvalues of M^T M,
/// sorted descending.
Eigen::Vector3d singular_values_desc(const Eigen::Matrix3d &m);

struct WernerSpec {
    double visibility = 1.0;
    double schmidt_a = 0.70710678118654752440; // b = sqrt(1 - a^2)
};

/// v |φ><φ| + (1 - v)/4 I with |φ> = a|00> + b|11>.
TwoQubitState werner(const WernerSpec &spec);
TwoQubitState pure_schmidt(double a);
TwoQubitState maximally_entangled();
/// 1/2 (|00><00| + |11><11|): zero local Bloch vectors, T = diag(0, 0, 1).
TwoQubitState classical_zz();
/// |00><00|.
TwoQubitState product_zero();
/// Normalized mixture of four Haar-like random pure states; deterministic per seed.
TwoQubitState random_mixed(std::uint64_t seed);

} // namespace netbell
