#include "hdr/generate.hpp"

#include <bit>
#include <cmath>
#include <random>

#include "hdr/graph.hpp"

namespace hdr {

namespace {

class WeightSource {
public:
    WeightSource(const GenOptions& opts, std::size_t vertex_count) : opts_(opts), rng_(opts.seed) {
        // Geometric weights span 2^0 .. 2^k with 2^k close to |V|.
        levels_ = vertex_count > 1 ? std::bit_width(vertex_count - 1) : 1;
    }

    std::uint64_t next() {
        switch (opts_.weights) {
            case WeightKind::unit: return 1;
            case WeightKind::uniform: return opts_.min_weight + rng_() % (opts_.max_weight - opts_.min_weight + 1);
            case WeightKind::geometric: return std::uint64_t{1} << (rng_() % (levels_ + 1));
        }
        return 1;
    }

    std::mt19937_64& rng() { return rng_; }

private:
    GenOptions opts_;
    std::mt19937_64 rng_;
    unsigned levels_ = 1;
};

void grid(const GenOptions& o, std::vector<RawEdge>& out) {
    WeightSource w(o, std::size_t{o.rows} * o.cols);
    auto id = [&](std::uint32_t r, std::uint32_t c) { return r * o.cols + c; };
    for (std::uint32_t r = 0; r < o.rows; ++r) {
        for (std::uint32_t c = 0; c < o.cols; ++c) {
            if (c + 1 < o.cols) out.push_back({id(r, c), id(r, c + 1), w.next()});
            if (r + 1 < o.rows) out.push_back({id(r, c), id(r + 1, c), w.next()});
        }
    }
}

// Square lattice with about a fifth of the cross links removed, a few
// diagonals, and length jitter. Row 0 and every column are kept whole, so the
// result is connected before the usefulness filter runs.
void road_like(const GenOptions& o, std::vector<RawEdge>& out) {
    const std::uint32_t n = o.rows;
    const auto side = static_cast<std::uint32_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    WeightSource w(o, n);
    auto& rng = w.rng();
    auto jitter = [&](std::uint64_t base) {
        const std::uint64_t length = base + rng() % (base / 2 + 1);
        return o.weights == WeightKind::unit ? length : length * w.next();
    };
    auto at = [&](std::uint32_t r, std::uint32_t c) { return r * side + c; };
    for (std::uint32_t v = 0; v < n; ++v) {
        const std::uint32_t r = v / side;
        const std::uint32_t c = v % side;
        if (r + 1 < side && at(r + 1, c) < n) out.push_back({v, at(r + 1, c), jitter(10)});
        if (c + 1 < side && at(r, c + 1) < n) {
            if (r == 0 || rng() % 5 != 0) out.push_back({v, at(r, c + 1), jitter(10)});
        }
        if (r + 1 < side && c + 1 < side && at(r + 1, c + 1) < n && rng() % 10 == 0) {
            out.push_back({v, at(r + 1, c + 1), jitter(14)});
        }
    }
}

}  // namespace

GraphKind parse_graph_kind(const std::string& text) {
    if (text == "grid") return GraphKind::grid;
    if (text == "road_like") return GraphKind::road_like;
    if (text == "path") return GraphKind::path;
    if (text == "star") return GraphKind::star;
    throw GraphError("unknown graph kind '" + text + "'");
}

WeightKind parse_weight_kind(const std::string& text) {
    if (text == "unit") return WeightKind::unit;
    if (text == "uniform") return WeightKind::uniform;
    if (text == "geometric") return WeightKind::geometric;
    throw GraphError("unknown weight kind '" + text + "'");
}

std::vector<RawEdge> generate(const GenOptions& o) {
    if (o.weights == WeightKind::uniform && (o.min_weight < 1 || o.max_weight < o.min_weight)) {
        throw GraphError("uniform weights need 1 <= min <= max");
    }
    std::vector<RawEdge> out;
    switch (o.kind) {
        case GraphKind::grid:
            if (o.rows * o.cols < 2) throw GraphError("grid needs at least two vertices");
            grid(o, out);
            break;
        case GraphKind::road_like:
            if (o.rows < 2) throw GraphError("road_like needs at least two vertices");
            road_like(o, out);
            break;
        case GraphKind::path: {
            if (o.rows < 2) throw GraphError("path needs at least two vertices");
            WeightSource w(o, o.rows);
            for (std::uint32_t v = 0; v + 1 < o.rows; ++v) out.push_back({v, v + 1, w.next()});
            break;
        }
        case GraphKind::star: {
            if (o.rows < 2) throw GraphError("star needs at least two vertices");
            WeightSource w(o, o.rows);
            for (std::uint32_t v = 1; v < o.rows; ++v) out.push_back({0, v, w.next()});
            break;
        }
    }
    return out;
}

}  // namespace hdr
