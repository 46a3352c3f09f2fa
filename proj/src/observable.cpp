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

#include "netbell/observable.hpp"

#include "netbell/error.hpp"
#include "netbell/qstate.hpp"

namespace netbell {

QubitObservable QubitObservable::along(const Eigen::Vector3d &direction) {
    const double norm = direction.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        fail(ErrorCode::BadObservable, "observable direction must be a non-zero finite vector");
    }
    return QubitObservable(direction / norm);
}

Eigen::Matrix2cd QubitObservable::matrix() const {
    return n_(0) * pauli::sigma(1) + n_(1) * pauli::sigma(2) + n_(2) * pauli::sigma(3);
}

} // namespace netbell
