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
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace netbell {

/// Parties and sources are numbered from 1, matching the order in which
/// sources are listed: source s is edges()[s - 1].
using PartyIndex = int;
using SourceIndex = int;

/// Which end of a bipartite source a party sits on. The first listed party
/// holds the first qubit of the source's two-qubit state.
enum class Side : std::uint8_t { First = 0, Second = 1 };

struct SourceEdge {
    PartyIndex first = 0;
    PartyIndex second = 0;

    PartyIndex endpoint(Side side) const { return side == Side::First ? first : second; }
};

struct Incidence {
    PartyIndex neighbor;
    SourceIndex source;
    Side side; // side of the owning party on `source`
};

struct TopologyOptions {
    /// Downgrade the connectivity check to a warning.
    bool allow_disconnected = false;
};

/// Party/source graph. Immutable after construction; adjacency is stored in
/// compressed form with each party's incidences sorted by source index.
class NetworkTopology {
  public:
    static NetworkTopology build(int n_parties, std::vector<SourceEdge> edges,
                                 TopologyOptions options = {});

    int n_parties() const { return n_parties_; }
    int n_sources() const { return static_cast<int>(edges_.size()); }

    const std::vector<SourceEdge> &edges() const { return edges_; }
    const SourceEdge &source(SourceIndex s) const { return edges_[static_cast<std::size_t>(s - 1)]; }

    std::span<const Incidence> incident(PartyIndex p) const;
    int degree(PartyIndex p) const;

    /// Position of `s` within incident(p), or nullopt if p is not an endpoint.
    std::optional<int> incidence_position(PartyIndex p, SourceIndex s) const;

    bool connected() const { return connected_; }
    const std::vector<std::string> &warnings() const { return warnings_; }

    bool same_structure(const NetworkTopology &other) const;

  private:
    int n_parties_ = 0;
    std::vector<SourceEdge> edges_;
    std::vector<std::size_t> offsets_;
    std::vector<Incidence> incidences_;
    bool connected_ = true;
    std::vector<std::string> warnings_;
};

inline NetworkTopology build_topology(int n_parties, std::vector<SourceEdge> edges,
                                      TopologyOptions options = {}) {
    return NetworkTopology::build(n_parties, std::move(edges), options);
}

struct LeafAnalysis {
    std::vector<PartyIndex> leaf_set;         // sorted
    std::vector<PartyIndex> intermediate_set; // sorted
    /// (leaf party, its unique source), sorted by party.
    std::vector<std::pair<PartyIndex, SourceIndex>> peripheral_map;
    /// Leaf attached to each source (index source - 1), 0 for intermediate sources.
    std::vector<PartyIndex> source_leaf;
    /// True when some source has a leaf at both ends.
    bool source_joins_two_leaves = false;

    int l() const { return static_cast<int>(leaf_set.size()); }
    bool is_leaf(PartyIndex p) const;
    std::optional<SourceIndex> peripheral_source(PartyIndex leaf) const;
    std::optional<PartyIndex> leaf_of_source(SourceIndex s) const;
    /// Image of the peripheral map, sorted.
    std::vector<SourceIndex> peripheral_sources() const;
};

/// Degree-one detection over the compressed adjacency, O(N + M).
LeafAnalysis find_leaves(const NetworkTopology &topology);

} // namespace netbell
