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

#include "netbell/error.hpp"

namespace netbell {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::IsolatedParty: return "IsolatedParty";
    case ErrorCode::BadK: return "BadK";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotAState: return "NotAState";
    case ErrorCode::BadVisibility: return "BadVisibility";
    case ErrorCode::BadSchmidt: return "BadSchmidt";
    case ErrorCode::TooFewLeaves: return "TooFewLeaves";
    case ErrorCode::MissingFcbi: return "MissingFcbi";
    case ErrorCode::ExtraFcbi: return "ExtraFcbi";
    case ErrorCode::ColumnMismatch: return "ColumnMismatch";
    case ErrorCode::LeafPairSource: return "LeafPairSource";
    case ErrorCode::DegenerateBipartite: return "DegenerateBipartite";
    case ErrorCode::IncompleteStrategy: return "IncompleteStrategy";
    case ErrorCode::UnsupportedFcbi: return "UnsupportedFcbi";
    case ErrorCode::BadObservable: return "BadObservable";
    case ErrorCode::TooLargeForExhaustive: return "TooLargeForExhaustive";
    case ErrorCode::PartyCountMismatch: return "PartyCountMismatch";
    case ErrorCode::UnsupportedMap: return "UnsupportedMap";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

} // namespace netbell
