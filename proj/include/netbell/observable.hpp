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

#include <Eigen/Dense>

namespace netbell {

/// Dichotomic qubit observable n·σ with unit Bloch vector n.
class QubitObservable {
  public:
    /// σ3.
    QubitObservable() : n_(0.0, 0.0, 1.0) {}

    /// Normalizes `direction`; throws Error(BadObservable) on a zero vector.
    static QubitObservable along(const Eigen::Vector3d &direction);

    static QubitObservable x() { return along({1.0, 0.0, 0.0}); }
    static QubitObservable y() { return along({0.0, 1.0, 0.0}); }
    static QubitObservable z() { return along({0.0, 0.0, 1.0}); }

    const Eigen::Vector3d &bloch() const { return n_; }
    Eigen::Matrix2cd matrix() const;

  private:
    explicit QubitObservable(const Eigen::Vector3d &n) : n_(n) {}
    Eigen::Vector3d n_;
};

} // namespace netbell
