#include <zlib.h>

#include <algorithm>
#include <chrono>
#include <cstring>
#include <ctime>
#include <fstream>
#include <iterator>
#include "json.hpp"
#include <sstream>
#include <tuple>

#include "hdr/io.hpp"

namespace hdr {

namespace {

constexpr char kMagic[4] = {'H', 'D', 'R', '1'};

std::uint32_t crc(const void* data, std::size_t n, std::uint32_t seed = 0) {
    return static_cast<std::uint32_t>(::crc32(seed, static_cast<const Bytef*>(data), static_cast<uInt>(n)));
}

class Writer {
public:
    template <typename T>
    void put(T v) {
        static_assert(std::is_integral_v<T>);
        using U = std::make_unsigned_t<T>;
        auto u = static_cast<U>(v);
        for (std::size_t i = 0; i < sizeof(T); ++i) {
            bytes_.push_back(static_cast<char>(u & 0xff));
            u = static_cast<U>(u >> 8);
        }
    }
    void put(const PerturbedWeight& w) {
        put(w.base);
        put(w.tiebreak);
    }
    void raw(const char* p, std::size_t n) { bytes_.append(p, n); }
    std::string& bytes() { return bytes_; }

private:
    std::string bytes_;
};

class Reader {
public:
    Reader(const std::string& bytes, std::size_t end) : bytes_(bytes), end_(end) {}

    template <typename T>
    T get() {
        static_assert(std::is_integral_v<T>);
        need(sizeof(T));
        std::make_unsigned_t<T> u = 0;
        for (std::size_t i = 0; i < sizeof(T); ++i) {
            u |= static_cast<std::make_unsigned_t<T>>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
        }
        pos_ += sizeof(T);
        return static_cast<T>(u);
    }
    PerturbedWeight weight() {
        const auto b = get<std::uint64_t>();
        const auto t = get<std::uint64_t>();
        return {b, t};
    }
    std::uint32_t count(std::size_t unit) {
        const auto n = get<std::uint32_t>();
        if (std::size_t{n} * unit > end_ - pos_) throw GraphError("structure file truncated");
        return n;
    }
    bool done() const { return pos_ == end_; }

private:
    void need(std::size_t n) {
        if (end_ - pos_ < n) throw GraphError("structure file truncated");
    }
    const std::string& bytes_;
    std::size_t end_;
    std::size_t pos_ = 4;
};

}  // namespace

std::uint32_t graph_hash(const Graph& g) {
    std::vector<std::tuple<VertexId, VertexId, std::string>> edges;
    for (EdgeId id : g.edge_ids()) {
        const Edge& e = g.edge(id);
        edges.emplace_back(e.u, e.v, unscale(e.weight.base, g.scale()));
    }
    std::sort(edges.begin(), edges.end());
    Writer w;
    for (const auto& [u, v, weight] : edges) {
        w.put(u);
        w.put(v);
        w.raw(weight.data(), weight.size());
        w.put(std::uint8_t{0});
    }
    return crc(w.bytes().data(), w.bytes().size());
}

std::string serialize(const Hierarchy& h) {
    const Graph& g = h.graph();
    Writer w;
    w.raw(kMagic, 4);
    w.put(kFormatVersion);
    w.put(g.seed());
    w.put(g.scale());
    w.put(graph_hash(g));
    w.put(static_cast<std::uint32_t>(g.vertex_capacity()));
    w.put(static_cast<std::uint32_t>(g.edge_capacity()));
    const auto ids = g.edge_ids();
    w.put(static_cast<std::uint32_t>(ids.size()));
    for (EdgeId id : ids) {
        const Edge& e = g.edge(id);
        w.put(e.id);
        w.put(e.u);
        w.put(e.v);
        w.put(e.weight);
    }
    w.put(static_cast<std::uint32_t>(h.top()));
    std::vector<std::uint32_t> below_map;  // live slot -> compacted index, level i-1
    for (const Level& level : h.levels()) {
        w.put(static_cast<std::int32_t>(level.index));
        w.put(static_cast<std::uint32_t>(level.c_prime.size()));
        for (const auto& [v, p] : level.c_prime) {
            w.put(v);
            w.put(p.first);
            w.put(p.second);
        }
        w.put(static_cast<std::uint32_t>(level.long_edges.size()));
        for (EdgeId id : level.long_edges) w.put(id);
        const auto live = level.graph.live_indices();
        std::vector<std::uint32_t> map(level.graph.slot_count(), 0);
        for (std::uint32_t k = 0; k < live.size(); ++k) map[live[k]] = k;
        w.put(static_cast<std::uint32_t>(live.size()));
        for (std::uint32_t idx : live) {
            const ShortcutEdge& e = level.graph.edge(idx);
            w.put(e.a);
            w.put(e.b);
            w.put(e.weight);
            w.put(e.maxedge_below);
            w.put(static_cast<std::uint32_t>(e.children.size()));
            for (const EdgeRef& c : e.children) {
                w.put(c.level);
                w.put(c.is_original() ? c.index : below_map.at(c.index));
            }
        }
        below_map = std::move(map);
    }
    w.put(crc(w.bytes().data(), w.bytes().size()));
    return std::move(w.bytes());
}

Hierarchy deserialize(const std::string& bytes) {
    if (bytes.size() < 8 || std::memcmp(bytes.data(), kMagic, 4) != 0) throw GraphError("not an HDR1 structure file");
    const std::size_t body = bytes.size() - 4;
    std::uint32_t stored = 0;
    for (int i = 0; i < 4; ++i) stored |= std::uint32_t{static_cast<unsigned char>(bytes[body + i])} << (8 * i);
    if (crc(bytes.data(), body) != stored) throw GraphError("structure checksum mismatch");
    Reader r(bytes, body);
    const auto version = r.get<std::uint32_t>();
    if (version != kFormatVersion) throw GraphError("unsupported structure version " + std::to_string(version));
    const auto seed = r.get<std::uint64_t>();
    const auto scale = r.get<std::uint64_t>();
    const auto hash = r.get<std::uint32_t>();
    const auto vcap = r.get<std::uint32_t>();
    const auto ecap = r.get<std::uint32_t>();
    Graph g(seed, scale);
    const auto m = r.count(28);
    for (std::uint32_t k = 0; k < m; ++k) {
        const auto id = r.get<std::uint32_t>();
        const auto u = r.get<std::uint32_t>();
        const auto v = r.get<std::uint32_t>();
        const auto w = r.weight();
        if (id >= ecap || u >= vcap || v >= vcap) throw GraphError("edge table entry out of range");
        g.restore_edge(id, u, v, w);
    }
    if (graph_hash(g) != hash) throw GraphError("embedded graph hash mismatch");

    const auto top = r.count(16);
    std::vector<Level> levels;
    for (std::uint32_t i = 0; i < top; ++i) {
        Level level;
        level.index = r.get<std::int32_t>();
        if (level.index != static_cast<std::int32_t>(i)) throw GraphError("level sections out of order");
        const auto nc = r.count(12);
        for (std::uint32_t k = 0; k < nc; ++k) {
            const auto v = r.get<std::uint32_t>();
            const auto a = r.get<std::uint32_t>();
            const auto b = r.get<std::uint32_t>();
            if (!g.has_vertex(v)) throw GraphError("C' vertex is not in the graph");
            level.c_prime.emplace(v, Provenance{a, b});
        }
        const auto ne = r.count(4);
        for (std::uint32_t k = 0; k < ne; ++k) {
            const auto id = r.get<std::uint32_t>();
            if (!g.has_edge(id)) throw GraphError("E[i] names a missing edge");
            level.long_edges.push_back(id);
        }
        level.in_cover.assign(g.vertex_capacity(), 0);
        for (VertexId v : g.vertices()) {
            if (level.c_prime.contains(v) || g.max_incident_level(v) >= level.index) {
                level.in_cover[v] = 1;
                ++level.cover_size;
            }
        }
        const auto ns = r.count(44);
        const std::size_t below_slots = i > 0 ? levels.back().graph.slot_count() : 0;
        for (std::uint32_t k = 0; k < ns; ++k) {
            ShortcutEdge e;
            e.a = r.get<std::uint32_t>();
            e.b = r.get<std::uint32_t>();
            e.weight = r.weight();
            e.maxedge_below = r.weight();
            if (!level.covers(e.a) || !level.covers(e.b) || e.a >= e.b) throw GraphError("bad shortcut endpoints");
            const auto nch = r.count(8);
            for (std::uint32_t c = 0; c < nch; ++c) {
                EdgeRef ref;
                ref.level = r.get<std::int32_t>();
                ref.index = r.get<std::uint32_t>();
                const bool ok = ref.is_original() ? g.has_edge(ref.index)
                                                  : ref.level == static_cast<std::int32_t>(i) - 1 && ref.index < below_slots;
                if (!ok) throw GraphError("dangling child reference in structure file");
                e.children.push_back(ref);
            }
            level.graph.add(std::move(e));
        }
        levels.push_back(std::move(level));
    }
    if (!r.done()) throw GraphError("trailing bytes in structure file");
    return Hierarchy::assemble(std::move(g), std::move(levels));
}

void save_structure(const std::filesystem::path& path, const Hierarchy& h) {
    const std::string bytes = serialize(h);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw GraphError("cannot write " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw GraphError("failed writing " + path.string());
}

Hierarchy load_structure(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw GraphError("cannot open " + path.string());
    const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return deserialize(bytes);
}

std::filesystem::path sidecar_path(const std::filesystem::path& structure) {
    return structure.string() + ".json";
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string stats_json(const Hierarchy& h, double build_seconds, const std::string& timestamp) {
    const Graph& g = h.graph();
    nlohmann::ordered_json j;
    j["vertices"] = g.vertex_count();
    j["edges"] = g.edge_count();
    j["max_weight"] = static_cast<double>(g.max_base_weight()) / static_cast<double>(g.scale());
    j["max_weight_raw"] = g.max_base_weight();
    j["scale"] = g.scale();
    j["seed"] = g.seed();
    j["graph_hash"] = graph_hash(g);
    j["top"] = h.top();
    std::vector<std::size_t> sizes;
    auto levels = nlohmann::ordered_json::array();
    for (const Level& l : h.levels()) {
        sizes.push_back(l.cover_size);
        levels.push_back({{"level", l.index},
                          {"cover", l.cover_size},
                          {"c_prime", l.c_prime.size()},
                          {"long_edges", l.long_edges.size()},
                          {"shortcut_edges", l.graph.edge_count()}});
    }
    sizes.push_back(0);
    j["level_vertices"] = sizes;
    j["levels"] = levels;
    j["structure_size"] = h.structure_size();
    j["build_seconds"] = build_seconds;
    j["timestamp"] = timestamp;
    return j.dump(2) + "\n";
}

}  // namespace hdr
