#include "hdr/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <map>
#include <queue>

#include "hdr/dijkstra.hpp"

namespace hdr {

namespace {

constexpr unsigned kMaxDecimals = 9;

Base pow10(unsigned d) {
    Base r = 1;
    for (unsigned i = 0; i < d; ++i) r *= 10;
    return r;
}

// Edges incident to `source` that some other path beats: one bounded search
// out to the heaviest incident edge.
std::vector<EdgeId> non_useful_at(const Graph& g, VertexId source) {
    PerturbedWeight reach = PerturbedWeight::zero();
    for (const Incidence& inc : g.neighbors(source)) reach = std::max(reach, g.edge(inc.edge).weight);
    const Seed seed{source, PerturbedWeight::zero()};
    const auto tree = dijkstra_bounded(g, std::span<const Seed>(&seed, 1), reach);
    std::vector<EdgeId> out;
    for (const Incidence& inc : g.neighbors(source)) {
        if (tree.dist(inc.to) < g.edge(inc.edge).weight) out.push_back(inc.edge);
    }
    return out;
}

}  // namespace

RawWeight RawWeight::parse(std::string_view text) {
    if (text.empty()) throw GraphError("empty weight");
    const auto dot = text.find('.');
    const std::string_view whole = text.substr(0, dot);
    std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    if (whole.empty() && frac.empty()) throw GraphError("malformed weight '" + std::string(text) + "'");
    auto all_digits = [](std::string_view s) {
        return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    if (!all_digits(whole) || !all_digits(frac)) throw GraphError("malformed weight '" + std::string(text) + "'");
    while (!frac.empty() && frac.back() == '0') frac.remove_suffix(1);
    if (frac.size() > kMaxDecimals) throw GraphError("too many decimals in weight '" + std::string(text) + "'");
    std::string digits(whole);
    digits += frac;
    std::uint64_t m = 0;
    if (!digits.empty()) {
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), m);
        if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
            throw GraphError("weight out of range '" + std::string(text) + "'");
        }
    }
    return {m, static_cast<unsigned>(frac.size())};
}

std::string unscale(Base value, Base scale) {
    if (scale <= 1) return std::to_string(value);
    std::string whole = std::to_string(value / scale);
    std::string frac = std::to_string(value % scale);
    std::size_t width = 0;
    for (Base s = scale; s > 1; s /= 10) ++width;
    frac.insert(0, width - frac.size(), '0');
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    return frac.empty() ? whole : whole + "." + frac;
}

bool is_useful(const Graph& g, EdgeId id) {
    const Edge& e = g.edge(id);
    const Seed seed{e.u, PerturbedWeight::zero()};
    const auto tree = dijkstra_bounded(g, std::span<const Seed>(&seed, 1), e.weight);
    return tree.dist(e.v) == e.weight;
}

IngestResult ingest(std::span<const RawEdge> raw, const IngestOptions& options) {
    if (raw.empty()) throw GraphError("graph has no edges");
    unsigned decimals = 0;
    for (const RawEdge& e : raw) {
        if (e.weight.mantissa == 0) {
            throw GraphError("nonpositive weight on edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
        }
        if (e.u == e.v) throw GraphError("self-loop at vertex " + std::to_string(e.u));
        decimals = std::max(decimals, e.weight.decimals);
    }
    const Base scale = pow10(decimals);

    // Canonical pair -> scaled weight, in input order of first appearance.
    std::map<std::pair<VertexId, VertexId>, Base> merged;
    std::vector<std::pair<VertexId, VertexId>> order;
    IngestResult result;
    for (const RawEdge& e : raw) {
        const Base factor = pow10(decimals - e.weight.decimals);
        if (e.weight.mantissa > kMaxBaseWeight / factor) throw GraphError("edge weight exceeds supported range");
        const Base base = e.weight.mantissa * factor;
        const auto key = std::minmax(e.u, e.v);
        auto [it, inserted] = merged.emplace(key, base);
        if (inserted) {
            order.push_back(key);
        } else if (it->second != base) {
            throw GraphError("conflicting weights for edge " + std::to_string(key.first) + "-" +
                             std::to_string(key.second));
        } else {
            ++result.merged_duplicates;
        }
    }

    Graph full(options.seed, scale);
    for (const auto& key : order) full.add_edge(key.first, key.second, merged.at(key));
    if (!full.is_connected()) throw GraphError("input graph is not connected");

    std::vector<char> drop(full.edge_capacity(), 0);
    for (VertexId v : full.vertices()) {
        for (EdgeId id : non_useful_at(full, v)) drop[id] = 1;
    }
    Graph g(options.seed, scale);
    for (EdgeId id : full.edge_ids()) {
        if (drop[id]) {
            ++result.dropped_non_useful;
            continue;
        }
        const Edge& e = full.edge(id);
        g.add_edge(e.u, e.v, e.weight.base);
    }
    result.graph = std::move(g);
    return result;
}

}  // namespace hdr
