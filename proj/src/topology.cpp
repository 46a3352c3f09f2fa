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

#include "netbell/topology.hpp"

#include <algorithm>
#include <deque>

#include "netbell/error.hpp"

namespace netbell {

NetworkTopology NetworkTopology::build(int n_parties, std::vector<SourceEdge> edges,
                                       TopologyOptions options) {
    if (n_parties < 1) {
        fail(ErrorCode::IndexOutOfRange, "network needs at least one party");
    }
    NetworkTopology t;
    t.n_parties_ = n_parties;
    t.edges_ = std::move(edges);

    const auto n = static_cast<std::size_t>(n_parties);
    std::vector<std::size_t> degree(n + 1, 0);
    for (std::size_t s = 0; s < t.edges_.size(); ++s) {
        const auto &e = t.edges_[s];
        if (e.first < 1 || e.first > n_parties || e.second < 1 || e.second > n_parties) {
            fail(ErrorCode::IndexOutOfRange,
                 "source " + std::to_string(s + 1) + " references a party outside [1, " +
                     std::to_string(n_parties) + "]");
        }
        if (e.first == e.second) {
            fail(ErrorCode::SelfLoop, "source " + std::to_string(s + 1) + " connects party " +
                                          std::to_string(e.first) + " to itself");
        }
        ++degree[static_cast<std::size_t>(e.first)];
        ++degree[static_cast<std::size_t>(e.second)];
    }

    t.offsets_.assign(n + 2, 0);
    for (std::size_t p = 1; p <= n; ++p) {
        t.offsets_[p + 1] = t.offsets_[p] + degree[p];
    }
    t.incidences_.resize(2 * t.edges_.size());
    std::vector<std::size_t> cursor(t.offsets_.begin(), t.offsets_.end() - 1);
    for (std::size_t s = 0; s < t.edges_.size(); ++s) {
        const auto &e = t.edges_[s];
        const auto src = static_cast<SourceIndex>(s + 1);
        t.incidences_[cursor[static_cast<std::size_t>(e.first)]++] = {e.second, src, Side::First};
        t.incidences_[cursor[static_cast<std::size_t>(e.second)]++] = {e.first, src, Side::Second};
    }

    // Duplicate pairs: mark neighbours per party.
    std::vector<PartyIndex> seen(n + 1, 0);
    for (std::size_t p = 1; p <= n; ++p) {
        for (std::size_t i = t.offsets_[p]; i < t.offsets_[p + 1]; ++i) {
            const auto q = static_cast<std::size_t>(t.incidences_[i].neighbor);
            if (seen[q] == static_cast<PartyIndex>(p)) {
                fail(ErrorCode::DuplicateEdge, "parties " + std::to_string(p) + " and " +
                                                   std::to_string(q) +
                                                   " are joined by more than one source");
            }
            seen[q] = static_cast<PartyIndex>(p);
        }
    }

    for (std::size_t p = 1; p <= n; ++p) {
        if (degree[p] == 0 && n > 1) {
            fail(ErrorCode::IsolatedParty,
                 "party " + std::to_string(p) + " is not attached to any source");
        }
    }
    if (n == 1) {
        fail(ErrorCode::IsolatedParty, "party 1 is not attached to any source");
    }

    std::vector<char> visited(n + 1, 0);
    std::deque<std::size_t> queue{1};
    visited[1] = 1;
    std::size_t reached = 1;
    while (!queue.empty()) {
        const auto p = queue.front();
        queue.pop_front();
        for (std::size_t i = t.offsets_[p]; i < t.offsets_[p + 1]; ++i) {
            const auto q = static_cast<std::size_t>(t.incidences_[i].neighbor);
            if (!visited[q]) {
                visited[q] = 1;
                ++reached;
                queue.push_back(q);
            }
        }
    }
    t.connected_ = reached == n;
    if (!t.connected_) {
        const std::string msg = "network is disconnected: " + std::to_string(reached) + " of " +
                                std::to_string(n) + " parties reachable from party 1";
        if (!options.allow_disconnected) {
            fail(ErrorCode::Disconnected, msg);
        }
        t.warnings_.push_back(msg);
    }
    return t;
}

std::span<const Incidence> NetworkTopology::incident(PartyIndex p) const {
    const auto i = static_cast<std::size_t>(p);
    return {incidences_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
}

int NetworkTopology::degree(PartyIndex p) const {
    const auto i = static_cast<std::size_t>(p);
    return static_cast<int>(offsets_[i + 1] - offsets_[i]);
}

std::optional<int> NetworkTopology::incidence_position(PartyIndex p, SourceIndex s) const {
    const auto inc = incident(p);
    const auto it = std::lower_bound(inc.begin(), inc.end(), s,
                                     [](const Incidence &a, SourceIndex v) { return a.source < v; });
    if (it == inc.end() || it->source != s) {
        return std::nullopt;
    }
    return static_cast<int>(it - inc.begin());
}

bool NetworkTopology::same_structure(const NetworkTopology &other) const {
    if (n_parties_ != other.n_parties_ || edges_.size() != other.edges_.size()) {
        return false;
    }
    for (std::size_t s = 0; s < edges_.size(); ++s) {
        if (edges_[s].first != other.edges_[s].first || edges_[s].second != other.edges_[s].second) {
            return false;
        }
    }
    return true;
}

bool LeafAnalysis::is_leaf(PartyIndex p) const {
    return std::binary_search(leaf_set.begin(), leaf_set.end(), p);
}

std::optional<SourceIndex> LeafAnalysis::peripheral_source(PartyIndex leaf) const {
    const auto it = std::lower_bound(
        peripheral_map.begin(), peripheral_map.end(), leaf,
        [](const std::pair<PartyIndex, SourceIndex> &e, PartyIndex v) { return e.first < v; });
    if (it == peripheral_map.end() || it->first != leaf) {
        return std::nullopt;
    }
    return it->second;
}

std::optional<PartyIndex> LeafAnalysis::leaf_of_source(SourceIndex s) const {
    if (s < 1 || s > static_cast<SourceIndex>(source_leaf.size())) {
        return std::nullopt;
    }
    const PartyIndex leaf = source_leaf[static_cast<std::size_t>(s - 1)];
    if (leaf == 0) {
        return std::nullopt;
    }
    return leaf;
}

std::vector<SourceIndex> LeafAnalysis::peripheral_sources() const {
    std::vector<SourceIndex> out;
    out.reserve(peripheral_map.size());
    for (const auto &e : peripheral_map) {
        out.push_back(e.second);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

LeafAnalysis find_leaves(const NetworkTopology &topology) {
    LeafAnalysis out;
    const int n = topology.n_parties();
    out.source_leaf.assign(static_cast<std::size_t>(topology.n_sources()), 0);
    for (PartyIndex p = 1; p <= n; ++p) {
        if (topology.degree(p) == 1) {
            out.leaf_set.push_back(p);
            const auto &inc = topology.incident(p).front();
            out.peripheral_map.emplace_back(p, inc.source);
            auto &slot = out.source_leaf[static_cast<std::size_t>(inc.source - 1)];
            if (slot == 0) {
                slot = p;
            }
            if (topology.degree(inc.neighbor) == 1) {
                out.source_joins_two_leaves = true;
            }
        } else {
            out.intermediate_set.push_back(p);
        }
    }
    return out;
}

} // namespace netbell
