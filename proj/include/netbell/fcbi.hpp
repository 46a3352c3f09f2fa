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
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "netbell/observable.hpp"
#include "netbell/qstate.hpp"
#include "netbell/topology.hpp"

namespace netbell {

enum class FcbiKind { Chsh, Chained, Ebi, Custom };

struct FcbiTag {
    FcbiKind kind = FcbiKind::Custom;
    int k = 0; // only meaningful for Chained

    std::string name() const;
    bool operator==(const FcbiTag &) const = default;
};

struct SeesawOptions {
    int restarts = 32;
    std::uint64_t seed = 0;
    int max_iterations = 20000;
    double stagnation_tol = 1e-13;
};

/// Bipartite full-correlation Bell inequality  Σ_{x,y} M_xy <A_x B_y> <= β.
/// Rows index the leaf's inputs, columns the partner's inputs.
class CoefficientMatrix {
  public:
    const Eigen::MatrixXd &entries() const { return entries_; }
    int rows() const { return static_cast<int>(entries_.rows()); }
    int cols() const { return static_cast<int>(entries_.cols()); }
    const FcbiTag &tag() const { return tag_; }
    double classical_bound() const { return classical_bound_; }
    double quantum_opt() const { return quantum_opt_; }

  private:
    friend CoefficientMatrix make_catalog(FcbiTag tag);
    friend CoefficientMatrix make_custom(const Eigen::MatrixXd &entries, const SeesawOptions &options);

    Eigen::MatrixXd entries_;
    FcbiTag tag_;
    double classical_bound_ = 0.0;
    double quantum_opt_ = 0.0;
};

inline constexpr int kDefaultEnumerationCap = 24;

/// Catalog entries with their closed-form bounds. Throws BadK for Chained
/// with k < 2 and InvalidArgument for Custom.
CoefficientMatrix make_catalog(FcbiTag tag);
inline CoefficientMatrix make_chsh() { return make_catalog({FcbiKind::Chsh, 2}); }
inline CoefficientMatrix make_chained(int k) { return make_catalog({FcbiKind::Chained, k}); }
inline CoefficientMatrix make_ebi() { return make_catalog({FcbiKind::Ebi, 4}); }

/// Custom matrix: β by enumeration, quantum optimum by see-saw over qubit
/// observables (exact for at most three rows, a lower bound beyond).
CoefficientMatrix make_custom(const Eigen::MatrixXd &entries, const SeesawOptions &options = {});

/// max over A_x = ±1 of Σ_y |Σ_x M_xy A_x|. Throws TooLarge past `max_rows`.
double classical_bound(const Eigen::MatrixXd &entries, int max_rows = kDefaultEnumerationCap);
inline double classical_bound(const CoefficientMatrix &m, int max_rows = kDefaultEnumerationCap) {
    return classical_bound(m.entries(), max_rows);
}

/// Leaf observables A_x (one per row) and partner observables B_y (one per column).
struct FcbiStrategy {
    std::vector<QubitObservable> leaf;
    std::vector<QubitObservable> partner;
};

struct FcbiMaximum {
    double value = 0.0;
    FcbiStrategy observables;
    bool converged = false;
    int restarts_used = 0;
    std::vector<double> history; // best value reached by each restart
};

/// See-saw maximization of Σ_y ‖C^T d_y‖, d_y = Σ_x M_xy a_x, over unit
/// leaf vectors. `leaf_correlation` is the state's correlation matrix with
/// the leaf qubit's index first. Alternates the two closed-form block
/// maximizers (b_y ∝ C^T d_y, then a_x ∝ Σ_y M_xy C b_y) until the value
/// improves by less than the stagnation tolerance.
FcbiMaximum maximize_fcbi(const Eigen::MatrixXd &entries, const Eigen::Matrix3d &leaf_correlation,
                          const SeesawOptions &options = {});

/// Maximum over qubit observables on a maximally entangled reference (T = I).
FcbiMaximum quantum_opt_numeric(const Eigen::MatrixXd &entries, const SeesawOptions &options = {});
inline FcbiMaximum quantum_opt_numeric(const CoefficientMatrix &m, const SeesawOptions &options = {}) {
    return quantum_opt_numeric(m.entries(), options);
}

/// Max value of the FCBI on `rho` with qubit observables; the leaf holds the
/// qubit on `leaf_side`. CHSH uses the closed form sqrt(t0^2 + t1^2).
/// Throws NonConvergenceError if the see-saw stalls without converging.
double state_max(const CoefficientMatrix &m, const TwoQubitState &rho, const SeesawOptions &options = {},
                 Side leaf_side = Side::First);
FcbiMaximum state_max_search(const CoefficientMatrix &m, const TwoQubitState &rho,
                             const SeesawOptions &options = {}, Side leaf_side = Side::First);

/// Correlation matrix with the leaf's qubit index first.
Eigen::Matrix3d leaf_oriented(const TwoQubitState &rho, Side leaf_side);

struct SosWitness {
    std::vector<double> omega;      // ω_y = sqrt(Tr[Δ_y^† Δ_y ρ])
    double predicted_bound = 0.0;   // Σ_y ω_y
    std::vector<double> residuals;  // <L_y^† L_y>, L_y = Δ_y/ω_y - B_y
    double achieved_value = 0.0;    // Σ_y <Δ_y B_y>
};

/// Sum-of-squares decomposition evaluated with explicit 4x4 operators:
/// achieved_value = Σ_y ω_y - Σ_y (ω_y / 2) residual_y.
SosWitness sos_witness(const CoefficientMatrix &m, const TwoQubitState &rho, const FcbiStrategy &observables,
                       Side leaf_side = Side::First);

/// Catalog-optimal leaf directions in the canonical Pauli frame:
/// CHSH {z, x}; chained equatorial x-z angles (x-1)π/k; EBI {x, y, z}.
/// Throws UnsupportedFcbi for Custom.
std::vector<Eigen::Vector3d> catalog_leaf_directions(const FcbiTag &tag);

/// Orthogonal frame whose columns are the images of the canonical x, y, z
/// axes: z goes to the top left singular vector of C, x to the second and y
/// to the third. A diagonal C keeps the Pauli axes, ordered by |C_uu| with
/// ties resolved in the order z, x, y.
Eigen::Matrix3d leaf_frame(const Eigen::Matrix3d &leaf_correlation);

/// Partner observable maximizing <Δ B>: direction C^T d, σ3 when that vanishes.
QubitObservable aligned_partner(const Eigen::Matrix3d &leaf_correlation, const Eigen::Vector3d &delta);

} // namespace netbell
