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

#include <string>
#include <vector>

#include "json.hpp"

#include "netbell/analysis.hpp"
#include "netbell/builder.hpp"
#include "netbell/evaluator.hpp"
#include "netbell/optimizer.hpp"
#include "netbell/topology.hpp"

namespace netbell::cli {

using Json = nlohmann::ordered_json;

/// Doubles go out with 12 significant digits so reports diff cleanly.
Json number(double value);
Json numbers(const std::vector<double> &values);
Json matrix(const Eigen::MatrixXd &m);

std::string dump(const Json &j);

Json to_json(const NetworkTopology &topology, const LeafAnalysis &leaves);
Json to_json(const NetworkInequality &ineq);
Json to_json(const MeasurementStrategy &strategy);
Json to_json(const LocalModel &model);
Json to_json(const ConditionReport &report);
Json to_json(const ViolationReport &report);
Json to_json(const SearchReport &report);
Json to_json(const VisibilityWindow &window);
Json to_json(const WindowComparison &comparison);

} // namespace netbell::cli
