#include "hdr/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "hdr/dijkstra.hpp"
#include "hdr/dynamic.hpp"
#include "hdr/generate.hpp"
#include "hdr/io.hpp"
#include "hdr/query.hpp"
#include "hdr/validate.hpp"

namespace hdr {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;
using Json = nlohmann::ordered_json;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Writes next to the target and renames, so a failure never leaves a
// half-written file behind.
void write_atomically(const fs::path& path, const std::string& bytes) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw GraphError("cannot write " + tmp.string());
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw GraphError("failed writing " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::optional<Json> read_sidecar(const fs::path& structure) {
    std::ifstream in(sidecar_path(structure));
    if (!in) return std::nullopt;
    try {
        return Json::parse(in);
    } catch (const Json::exception&) {
        return std::nullopt;
    }
}

std::vector<std::pair<VertexId, VertexId>> sample_pairs(const Graph& g, std::size_t count, std::uint64_t seed) {
    const auto vs = g.vertices();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, vs.size() - 1);
    std::vector<std::pair<VertexId, VertexId>> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) out.emplace_back(vs[pick(rng)], vs[pick(rng)]);
    return out;
}

Graph load_graph(const fs::path& path, GraphFormat format, std::uint64_t seed) {
    return ingest(read_graph_file(path, format), {.seed = seed}).graph;
}

// Loads the graph file and insists it is the graph the structure was built on.
Graph load_matching_graph(const fs::path& path, GraphFormat format, const Hierarchy& h) {
    Graph g = load_graph(path, format, h.graph().seed());
    if (graph_hash(g) != graph_hash(h.graph())) {
        throw GraphError("graph " + path.string() + " does not match the structure (graph hash differs)");
    }
    return g;
}

// ---------------------------------------------------------------- build

struct BuildArgs {
    std::string input;
    std::string format = "auto";
    std::uint64_t seed = kDefaultSeed;
    std::string output;
};

int cmd_build(const BuildArgs& a, std::ostream& out) {
    Graph g = load_graph(a.input, parse_graph_format(a.format), a.seed);
    const auto start = Clock::now();
    const Hierarchy h = Hierarchy::build(std::move(g));
    const double elapsed = seconds_since(start);
    write_atomically(a.output, serialize(h));
    write_atomically(sidecar_path(a.output), stats_json(h, elapsed, utc_timestamp()));
    out << "built " << h.graph().vertex_count() << " vertices, " << h.graph().edge_count() << " edges, top "
        << h.top() << ", size " << h.structure_size() << " in " << elapsed << " s -> " << a.output << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------- query

struct QueryArgs {
    std::string structure;
    std::vector<std::uint64_t> ids;
    std::string file;
    bool path = false;
    bool raw = false;
};

VertexId as_vertex(std::uint64_t v) {
    if (v >= kNoVertex) throw GraphError("unknown vertex " + std::to_string(v));
    return static_cast<VertexId>(v);
}

int cmd_query(const QueryArgs& a, std::ostream& out) {
    if (a.ids.size() % 2 != 0) throw GraphError("query pairs need an even number of vertex ids");
    std::vector<std::pair<VertexId, VertexId>> pairs;
    for (std::size_t k = 0; k < a.ids.size(); k += 2) pairs.emplace_back(as_vertex(a.ids[k]), as_vertex(a.ids[k + 1]));
    if (!a.file.empty()) {
        std::ifstream in(a.file);
        if (!in) throw GraphError("cannot open " + a.file);
        std::string line;
        std::size_t n = 0;
        while (std::getline(in, line)) {
            ++n;
            if (line.find_first_not_of(" \t\r") == std::string::npos || line.front() == '#') continue;
            std::istringstream is(line);
            std::uint64_t u = 0;
            std::uint64_t v = 0;
            std::string extra;
            if (!(is >> u >> v) || (is >> extra)) throw ParseError(a.file, n, "expected 'u v'");
            pairs.emplace_back(as_vertex(u), as_vertex(v));
        }
    }
    if (pairs.empty()) throw GraphError("no query pairs given");
    const Hierarchy h = load_structure(a.structure);
    const Base scale = h.graph().scale();
    for (const auto& [u, v] : pairs) {
        if (!h.graph().has_vertex(u) || !h.graph().has_vertex(v)) {
            throw GraphError("unknown vertex " + std::to_string(h.graph().has_vertex(u) ? v : u));
        }
    }
    for (const auto& [u, v] : pairs) {
        out << u << ' ' << v << ' ';
        if (a.path) {
            const PathResult p = query_path(h, u, v);
            out << (a.raw ? std::to_string(p.total.base) : unscale(p.total.base, scale));
            for (VertexId x : p.vertices) out << ' ' << x;
        } else {
            const Base d = query_distance(h, u, v).base;
            out << (a.raw ? std::to_string(d) : unscale(d, scale));
        }
        out << '\n';
    }
    return kExitOk;
}

// ---------------------------------------------------------------- update

struct UpdateArgs {
    std::string structure;
    std::string graph;
    std::string log;
    std::string format = "auto";
    std::size_t pairs = 200;
    std::uint64_t seed = 1;
    std::size_t cover_limit = 300;
};

int cmd_update(const UpdateArgs& a, std::ostream& out, std::ostream& err) {
    Hierarchy h = load_structure(a.structure);
    GraphFormat format = parse_graph_format(a.format);
    if (format == GraphFormat::automatic) format = format_for_path(a.graph);
    load_matching_graph(a.graph, format, h);
    std::ifstream log(a.log);
    if (!log) throw GraphError("cannot open " + a.log);
    const auto updates = read_update_log(log, h.graph().scale(), a.log);
    const auto sidecar = read_sidecar(a.structure);
    const double build_seconds = sidecar && sidecar->contains("build_seconds") ? (*sidecar)["build_seconds"].get<double>() : 0.0;

    if (updates.empty()) {
        Json meta = sidecar.value_or(Json::parse(stats_json(h, build_seconds, "")));
        meta["timestamp"] = utc_timestamp();
        write_atomically(sidecar_path(a.structure), meta.dump(2) + "\n");
        out << "no updates; metadata timestamp refreshed\n";
        return kExitOk;
    }

    std::mt19937_64 rng(a.seed);
    std::size_t checked = 0;
    std::size_t mismatches = 0;
    std::size_t touched = 0;
    std::size_t noops = 0;
    const auto start = Clock::now();
    for (std::size_t k = 0; k < updates.size(); ++k) {
        const UpdateRequest& req = updates[k];
        const bool covers = h.graph().vertex_count() <= a.cover_limit;
        VerifyReport report;
        try {
            // Pairs are drawn after the update, once the vertex set is known.
            report = update_and_verify(h, req, {}, covers);
            if (report.ok()) {
                for (const auto& [s, t] : sample_pairs(h.graph(), a.pairs, rng())) {
                    ++report.pairs_checked;
                    if (query_distance(h, s, t) != dijkstra_point_to_point(h.graph(), s, t).dist) {
                        ++report.mismatches;
                        report.failures.push_back("query mismatch " + std::to_string(s) + "-" + std::to_string(t));
                    }
                }
            }
        } catch (const GraphError& e) {
            report.failures.push_back(std::string("rejected: ") + e.what());
        }
        checked += report.pairs_checked;
        mismatches += report.mismatches;
        touched += report.update.total_touched();
        if (report.update.noop) ++noops;
        if (!report.ok()) {
            const std::string line = format_update(req, h.graph().scale());
            for (const auto& f : report.failures) err << a.log << ": update " << k + 1 << " (" << line << "): " << f << '\n';
            const bool rejected = report.failures.front().starts_with("rejected:");
            err << (rejected ? "update rejected; " : "verification failed; ") << "structure and graph left untouched\n";
            return rejected ? kExitUsage : kExitVerifyFailed;
        }
    }
    const double elapsed = seconds_since(start);
    // Everything is rendered before the first file is replaced.
    std::ostringstream graph_text;
    write_graph(graph_text, h.graph(), format);
    const std::string structure = serialize(h);
    Json meta = Json::parse(stats_json(h, build_seconds, utc_timestamp()));
    meta["update_seconds"] = elapsed;
    meta["updates_applied"] = updates.size();
    write_atomically(a.structure, structure);
    write_atomically(a.graph, graph_text.str());
    write_atomically(sidecar_path(a.structure), meta.dump(2) + "\n");
    out << "applied " << updates.size() << " updates (" << noops << " no-op) in " << elapsed << " s\n"
        << "touched " << touched << " vertices; top " << h.top() << "\n"
        << "verified " << checked << " sampled pairs, " << mismatches << " mismatches\n"
        << "PASS\n";
    return kExitOk;
}

// ---------------------------------------------------------------- gen

struct GenArgs {
    std::string kind = "grid";
    std::uint32_t rows = 10;
    std::uint32_t cols = 10;
    std::uint32_t n = 0;
    std::string weights = "unit";
    std::uint64_t min_weight = 1;
    std::uint64_t max_weight = 10;
    std::uint64_t seed = 1;
    std::string output;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
    GenOptions opts;
    opts.kind = parse_graph_kind(a.kind);
    opts.rows = a.n > 0 ? a.n : a.rows;
    opts.cols = a.cols;
    opts.weights = parse_weight_kind(a.weights);
    opts.min_weight = a.min_weight;
    opts.max_weight = a.max_weight;
    opts.seed = a.seed;
    std::ostringstream text;
    text << "u,v,w\n";
    write_csv(text, generate(opts));
    if (a.output.empty()) {
        out << text.str();
    } else {
        write_atomically(a.output, text.str());
    }
    return kExitOk;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
    std::string structure;
    std::string graph;
    std::string format = "auto";
    std::size_t queries = 100;
    std::uint64_t seed = 1;
    std::string output;
};

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
    const Hierarchy h = load_structure(a.structure);
    const Graph g = load_matching_graph(a.graph, parse_graph_format(a.format), h);
    const auto sidecar = read_sidecar(a.structure);
    const std::string build_seconds =
        sidecar && sidecar->contains("build_seconds") ? (*sidecar)["build_seconds"].dump() : "";
    const std::string id = fs::path(a.graph).stem().string();

    std::ostringstream table;
    table << "graph,vertices,edges,max_weight,build_seconds,structure_size,source,target,"
             "hierarchy_settled,oracle_settled,query_microseconds\n";
    bool ok = true;
    if (a.queries > 0) {
        for (const auto& [s, t] : sample_pairs(g, a.queries, a.seed)) {
            QueryStats stats;
            const auto start = Clock::now();
            const PerturbedWeight d = query_distance(h, s, t, &stats);
            const double micros = seconds_since(start) * 1e6;
            const PointToPoint oracle = dijkstra_point_to_point(g, s, t);
            if (d != oracle.dist) {
                err << "distance mismatch for " << s << ' ' << t << '\n';
                ok = false;
            }
            table << id << ',' << g.vertex_count() << ',' << g.edge_count() << ','
                  << unscale(g.max_base_weight(), g.scale()) << ',' << build_seconds << ',' << h.structure_size()
                  << ',' << s << ',' << t << ',' << stats.settled << ',' << oracle.settled << ','
                  << micros << '\n';
        }
    }
    if (a.output.empty()) {
        out << table.str();
    } else {
        write_atomically(a.output, table.str());
    }
    return ok ? kExitOk : kExitVerifyFailed;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
    std::string graph;
    std::string format = "auto";
    std::uint64_t seed = kDefaultSeed;
    std::size_t all_pairs_limit = 300;
    std::size_t samples = 1000;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
    const Graph g = load_graph(a.graph, parse_graph_format(a.format), a.seed);
    const std::size_t n = g.vertex_count();
    out << "graph: " << n << " vertices, " << g.edge_count() << " edges, scale " << g.scale() << '\n';
    std::vector<std::string> failures;
    const bool full = n <= a.all_pairs_limit;

    if (full) {
        const auto unique = verify_unique_shortest_paths(g);
        out << "unique shortest paths: " << (unique.ok() ? "yes" : "NO") << " (" << unique.sources_checked
            << " sources)\n";
        if (!unique.ok()) failures.push_back("shortest paths are not unique");
    }
    const auto start = Clock::now();
    const Hierarchy h = Hierarchy::build(g);
    out << "build: top " << h.top() << ", size " << h.structure_size() << ", " << seconds_since(start) << " s\n";
    for (const Level& l : h.levels()) {
        out << "  level " << l.index << ": " << l.cover_size << " cover vertices, " << l.graph.edge_count()
            << " shortcut edges\n";
    }

    if (full) {
        const HierarchyReport report = validate_hierarchy(h);
        for (std::size_t i = 0; i < report.sparsity.size(); ++i) {
            out << "cover level " << i << ": radius " << pow8(static_cast<int>(i)) << ", sparsity k = "
                << report.sparsity[i] << '\n';
        }
        failures.insert(failures.end(), report.failures.begin(), report.failures.end());
        std::size_t pairs = 0;
        for (VertexId s : g.vertices()) {
            const ShortestPathTree tree = dijkstra_full(g, s);
            for (VertexId t : g.vertices()) {
                ++pairs;
                if (query_distance(h, s, t) != tree.dist(t)) {
                    failures.push_back("distance mismatch " + std::to_string(s) + "-" + std::to_string(t));
                }
            }
        }
        out << "all-pairs: " << pairs << " pairs checked\n";
    } else {
        out << "all-pairs phase skipped: " << n << " vertices exceeds the limit of " << a.all_pairs_limit
            << "; running sampled phase with " << a.samples << " pairs\n";
        const HierarchyReport report = check_structure(h, nullptr);
        failures.insert(failures.end(), report.failures.begin(), report.failures.end());
        for (const auto& [s, t] : sample_pairs(g, a.samples, a.seed)) {
            if (query_distance(h, s, t) != dijkstra_point_to_point(g, s, t).dist) {
                failures.push_back("distance mismatch " + std::to_string(s) + "-" + std::to_string(t));
            }
        }
        out << "sampled: " << a.samples << " pairs checked\n";
    }
    constexpr std::size_t kShown = 20;
    for (std::size_t k = 0; k < failures.size() && k < kShown; ++k) out << "failure: " << failures[k] << '\n';
    if (failures.size() > kShown) out << "... " << failures.size() - kShown << " more failures\n";
    out << (failures.empty() ? "PASS" : "FAIL") << '\n';
    return failures.empty() ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact shortest-path distances over a multi-level shortcut hierarchy", "artifact"};
    app.require_subcommand(1);

    BuildArgs build;
    auto* b = app.add_subcommand("build", "Build a structure file from a graph");
    b->add_option("input", build.input, "Graph file (.gr DIMACS or CSV)")->required()->check(CLI::ExistingFile);
    b->add_option("--format", build.format, "auto, gr or csv")->capture_default_str();
    b->add_option("--seed", build.seed, "Tie-break seed")->capture_default_str();
    b->add_option("-o,--output", build.output, "Structure file to write")->required();

    QueryArgs query;
    auto* q = app.add_subcommand("query", "Answer distance queries");
    q->add_option("structure", query.structure, "Structure file")->required()->check(CLI::ExistingFile);
    q->add_option("pairs", query.ids, "Vertex ids, two per query");
    q->add_option("--file", query.file, "File of 'u v' lines")->check(CLI::ExistingFile);
    q->add_flag("--path", query.path, "Append the vertex sequence");
    q->add_flag("--raw", query.raw, "Print scaled integer distances");

    UpdateArgs update;
    auto* u = app.add_subcommand("update", "Apply an update log to a structure and its graph");
    u->add_option("structure", update.structure, "Structure file")->required()->check(CLI::ExistingFile);
    u->add_option("graph", update.graph, "Graph file the structure was built from")->required()->check(CLI::ExistingFile);
    u->add_option("log", update.log, "Update log (I u v w / D u v / W u v w)")->required()->check(CLI::ExistingFile);
    u->add_option("--format", update.format, "Graph format: auto, gr or csv")->capture_default_str();
    u->add_option("--pairs", update.pairs, "Sampled pairs checked after each update")->capture_default_str();
    u->add_option("--seed", update.seed, "Pair sampling seed")->capture_default_str();
    u->add_option("--cover-limit", update.cover_limit, "Largest graph that gets full cover checks")
        ->capture_default_str();

    GenArgs gen;
    auto* gn = app.add_subcommand("gen", "Generate a graph as CSV");
    gn->add_option("--kind", gen.kind, "grid, road_like, path or star")->capture_default_str();
    gn->add_option("--rows", gen.rows, "Grid rows")->capture_default_str();
    gn->add_option("--cols", gen.cols, "Grid columns")->capture_default_str();
    gn->add_option("-n,--vertices", gen.n, "Vertex count for path, star and road_like");
    gn->add_option("--weights", gen.weights, "unit, uniform or geometric")->capture_default_str();
    gn->add_option("--min-weight", gen.min_weight, "Smallest uniform weight")->capture_default_str();
    gn->add_option("--max-weight", gen.max_weight, "Largest uniform weight")->capture_default_str();
    gn->add_option("--seed", gen.seed, "Generator seed")->capture_default_str();
    gn->add_option("-o,--output", gen.output, "Output file (default stdout)");

    BenchArgs bench;
    auto* bn = app.add_subcommand("bench", "Compare hierarchy and Dijkstra work on random queries");
    bn->add_option("structure", bench.structure, "Structure file")->required()->check(CLI::ExistingFile);
    bn->add_option("graph", bench.graph, "Graph file the structure was built from")->required()->check(CLI::ExistingFile);
    bn->add_option("--format", bench.format, "Graph format: auto, gr or csv")->capture_default_str();
    bn->add_option("--queries", bench.queries, "Number of random queries")->capture_default_str();
    bn->add_option("--seed", bench.seed, "Query sampling seed")->capture_default_str();
    bn->add_option("-o,--output", bench.output, "CSV file (default stdout)");

    VerifyArgs verify;
    auto* v = app.add_subcommand("verify", "Build and check a hierarchy against Dijkstra");
    v->add_option("graph", verify.graph, "Graph file")->required()->check(CLI::ExistingFile);
    v->add_option("--format", verify.format, "auto, gr or csv")->capture_default_str();
    v->add_option("--seed", verify.seed, "Tie-break seed")->capture_default_str();
    v->add_option("--all-pairs-limit", verify.all_pairs_limit, "Largest graph checked on all pairs")
        ->capture_default_str();
    v->add_option("--samples", verify.samples, "Sampled pairs above the limit")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*b) return cmd_build(build, out);
        if (*q) return cmd_query(query, out);
        if (*u) return cmd_update(update, out, err);
        if (*gn) return cmd_gen(gen, out);
        if (*bn) return cmd_bench(bench, out, err);
        if (*v) return cmd_verify(verify, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace hdr
