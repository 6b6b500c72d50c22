#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hdr/ingest.hpp"

namespace hdr {

enum class GraphKind { grid, road_like, path, star };
enum class WeightKind { unit, uniform, geometric };

struct GenOptions {
    GraphKind kind = GraphKind::grid;
    std::uint32_t rows = 10;  ///< grid rows; for path, star and road_like: vertex count
    std::uint32_t cols = 10;  ///< grid columns; ignored by the other kinds
    WeightKind weights = WeightKind::unit;
    std::uint64_t min_weight = 1;  ///< uniform: inclusive range
    std::uint64_t max_weight = 10;
    std::uint64_t seed = 1;
};

GraphKind parse_graph_kind(const std::string& text);
WeightKind parse_weight_kind(const std::string& text);

/// Deterministic edge list for `opts`. Vertices are numbered from 0; every
/// generated graph is connected and every weight is at least 1.
std::vector<RawEdge> generate(const GenOptions& opts);

inline std::vector<RawEdge> make_path(std::uint32_t n) {
    return generate({.kind = GraphKind::path, .rows = n});
}

inline std::vector<RawEdge> make_grid(std::uint32_t rows, std::uint32_t cols,
                                      WeightKind w = WeightKind::unit, std::uint64_t seed = 1) {
    return generate({.kind = GraphKind::grid, .rows = rows, .cols = cols, .weights = w, .seed = seed});
}

}  // namespace hdr
