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

#include <stdexcept>
#include <string>
#include <string_view>

namespace netbell {

enum class ErrorCode {
    // topology
    SelfLoop,
    DuplicateEdge,
    IndexOutOfRange,
    Disconnected,
    IsolatedParty,
    // fcbi / qstate
    BadK,
    TooLarge,
    NotAState,
    BadVisibility,
    BadSchmidt,
    // builder
    TooFewLeaves,
    MissingFcbi,
    ExtraFcbi,
    ColumnMismatch,
    LeafPairSource,
    DegenerateBipartite,
    // evaluator
    IncompleteStrategy,
    UnsupportedFcbi,
    BadObservable,
    // optimizer / analysis
    TooLargeForExhaustive,
    PartyCountMismatch,
    UnsupportedMap,
    NegativeEntry,
    NonConvergence,
    // configuration
    InvalidConfig,
    InvalidArgument,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

/// Raised when an iterative maximizer stops without meeting its stagnation
/// criterion. Carries the best value reached so callers can still report it.
class NonConvergenceError : public Error {
  public:
    NonConvergenceError(const std::string &message, double best_value)
        : Error(ErrorCode::NonConvergence, message), best_value_(best_value) {}

    double best_value() const noexcept { return best_value_; }

  private:
    double best_value_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string &message) {
    throw Error(code, message);
}

} // namespace netbell
