#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hdr/graph.hpp"

namespace hdr {

/// A positive decimal weight as read from input: mantissa * 10^-decimals.
struct RawWeight {
    std::uint64_t mantissa = 0;
    unsigned decimals = 0;

    constexpr RawWeight() = default;
    constexpr RawWeight(std::uint64_t integer) : mantissa(integer) {}  // NOLINT(google-explicit-constructor)
    constexpr RawWeight(std::uint64_t m, unsigned d) : mantissa(m), decimals(d) {}

    /// Parses "12", "0.25", "3.0". Rejects signs, exponents and empty text.
    static RawWeight parse(std::string_view text);

    friend bool operator==(const RawWeight&, const RawWeight&) = default;
};

struct RawEdge {
    VertexId u;
    VertexId v;
    RawWeight weight;
};

struct IngestOptions {
    std::uint64_t seed = kDefaultSeed;
};

struct IngestResult {
    Graph graph;
    std::size_t dropped_non_useful = 0;
    std::size_t merged_duplicates = 0;
};

/// Builds a Graph from raw edges.
///
/// Weights are scaled by 10^d, d being the largest number of decimals seen, so
/// every base weight is an integer >= 1. Identical duplicates (such as the two
/// arcs of a DIMACS edge) are merged, conflicting duplicates and self-loops are
/// errors. Edges that are not the shortest path between their endpoints are
/// dropped. Throws GraphError if the result is not connected.
IngestResult ingest(std::span<const RawEdge> raw, const IngestOptions& options = {});

/// True when the edge weight equals the distance between its endpoints.
bool is_useful(const Graph& g, EdgeId id);

/// Formats a scaled base value in input units, e.g. 125 at scale 100 -> "1.25".
std::string unscale(Base value, Base scale);

}  // namespace hdr
