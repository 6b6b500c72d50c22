#include "hdr/graph.hpp"

#include <algorithm>
#include <string>

namespace hdr {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t edge_tiebreak(VertexId a, VertexId b, std::uint64_t seed) {
    const VertexId lo = std::min(a, b);
    const VertexId hi = std::max(a, b);
    const std::uint64_t key = (std::uint64_t{lo} << 32) | hi;
    return splitmix64(splitmix64(seed) ^ splitmix64(key)) & kTiebreakMask;
}

std::uint64_t Graph::pair_key(VertexId a, VertexId b) {
    return (std::uint64_t{std::min(a, b)} << 32) | std::max(a, b);
}

EdgeId Graph::add_edge(VertexId a, VertexId b, Base base) {
    const auto id = static_cast<EdgeId>(edges_.size());
    restore_edge(id, a, b, {base, edge_tiebreak(a, b, seed_)});
    return id;
}

void Graph::restore_edge(EdgeId id, VertexId a, VertexId b, PerturbedWeight weight) {
    if (a == b) throw GraphError("self-loop at vertex " + std::to_string(a));
    if (a == kNoVertex || b == kNoVertex) throw GraphError("vertex id out of range");
    if (weight.base < 1) throw GraphError("edge weight must be at least 1 after scaling");
    if (weight.base > kMaxBaseWeight) throw GraphError("edge weight exceeds supported range");
    if (pair_index_.contains(pair_key(a, b))) {
        throw GraphError("parallel edge " + std::to_string(a) + "-" + std::to_string(b));
    }
    if (id < edges_.size() && alive_[id]) throw GraphError("edge id " + std::to_string(id) + " in use");
    if (id >= edges_.size()) {
        edges_.resize(std::size_t{id} + 1);
        alive_.resize(std::size_t{id} + 1, 0);
    }
    Edge e{id, std::min(a, b), std::max(a, b), weight};
    edges_[id] = e;
    alive_[id] = 1;
    pair_index_.emplace(pair_key(a, b), id);
    attach(e);
    ++edge_count_;
}

void Graph::attach(const Edge& e) {
    const std::size_t need = std::size_t{e.v} + 1;
    if (adjacency_.size() < need) adjacency_.resize(need);
    for (VertexId x : {e.u, e.v}) {
        if (adjacency_[x].empty()) ++vertex_count_;
        adjacency_[x].push_back({e.other(x), e.id});
    }
}

void Graph::remove_edge(EdgeId id) {
    if (!has_edge(id)) throw GraphError("no edge with id " + std::to_string(id));
    const Edge& e = edges_[id];
    for (VertexId x : {e.u, e.v}) {
        auto& list = adjacency_[x];
        std::erase_if(list, [id](const Incidence& inc) { return inc.edge == id; });
        if (list.empty()) --vertex_count_;
    }
    pair_index_.erase(pair_key(e.u, e.v));
    alive_[id] = 0;
    --edge_count_;
}

void Graph::set_base_weight(EdgeId id, Base base) {
    if (!has_edge(id)) throw GraphError("no edge with id " + std::to_string(id));
    if (base < 1) throw GraphError("edge weight must be at least 1 after scaling");
    if (base > kMaxBaseWeight) throw GraphError("edge weight exceeds supported range");
    edges_[id].weight.base = base;
}

std::optional<EdgeId> Graph::find_edge(VertexId a, VertexId b) const {
    auto it = pair_index_.find(pair_key(a, b));
    if (it == pair_index_.end()) return std::nullopt;
    return it->second;
}

std::span<const Incidence> Graph::neighbors(VertexId v) const {
    if (v >= adjacency_.size()) return {};
    return adjacency_[v];
}

std::vector<VertexId> Graph::vertices() const {
    std::vector<VertexId> out;
    out.reserve(vertex_count_);
    for (VertexId v = 0; v < adjacency_.size(); ++v) {
        if (!adjacency_[v].empty()) out.push_back(v);
    }
    return out;
}

std::vector<EdgeId> Graph::edge_ids() const {
    std::vector<EdgeId> out;
    out.reserve(edge_count_);
    for (EdgeId id = 0; id < edges_.size(); ++id) {
        if (alive_[id]) out.push_back(id);
    }
    return out;
}

Base Graph::max_base_weight() const {
    Base u = 0;
    for (EdgeId id = 0; id < edges_.size(); ++id) {
        if (alive_[id]) u = std::max(u, edges_[id].weight.base);
    }
    return u;
}

int Graph::max_incident_level(VertexId v) const {
    int best = -1;
    for (const Incidence& inc : neighbors(v)) {
        best = std::max(best, edge_level(edges_[inc.edge].weight.base));
    }
    return best;
}

bool Graph::is_connected() const {
    if (vertex_count_ == 0) return false;
    std::vector<char> seen(adjacency_.size(), 0);
    std::vector<VertexId> stack;
    for (VertexId v = 0; v < adjacency_.size(); ++v) {
        if (!adjacency_[v].empty()) {
            stack.push_back(v);
            seen[v] = 1;
            break;
        }
    }
    std::size_t reached = 0;
    while (!stack.empty()) {
        const VertexId x = stack.back();
        stack.pop_back();
        ++reached;
        for (const Incidence& inc : adjacency_[x]) {
            if (!seen[inc.to]) {
                seen[inc.to] = 1;
                stack.push_back(inc.to);
            }
        }
    }
    return reached == vertex_count_;
}

}  // namespace hdr
