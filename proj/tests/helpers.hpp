#pragma once

#include <vector>

#include "hdr/generate.hpp"
#include "hdr/hierarchy.hpp"
#include "hdr/ingest.hpp"

namespace testing {

inline hdr::Graph graph_of(const std::vector<hdr::RawEdge>& raw, std::uint64_t seed = hdr::kDefaultSeed) {
    return hdr::ingest(raw, {.seed = seed}).graph;
}

inline hdr::Hierarchy build_of(const std::vector<hdr::RawEdge>& raw) {
    return hdr::Hierarchy::build(graph_of(raw));
}

inline std::vector<hdr::VertexId> c_prime_ids(const hdr::Level& level) {
    std::vector<hdr::VertexId> out;
    for (const auto& [v, p] : level.c_prime) out.push_back(v);
    return out;
}

}  // namespace testing
