#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>

#include "hdr/io.hpp"

namespace hdr {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    if (sep == ' ') {
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
            std::size_t j = i;
            while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
            if (j > i) out.push_back(line.substr(i, j - i));
            i = j;
        }
        return out;
    }
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == sep) {
            std::string_view field = line.substr(start, i - start);
            while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
            while (!field.empty() && (field.back() == ' ' || field.back() == '\t')) field.remove_suffix(1);
            out.push_back(field);
            start = i + 1;
        }
    }
    return out;
}

std::string_view strip_cr(std::string_view s) {
    if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
    return s;
}

std::uint64_t parse_uint(std::string_view s, const std::string& source, std::size_t line, const char* what) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError(source, line, std::string("bad ") + what + " '" + std::string(s) + "'");
    }
    return v;
}

VertexId parse_vertex(std::string_view s, const std::string& source, std::size_t line) {
    const auto v = parse_uint(s, source, line, "vertex id");
    if (v >= kNoVertex) throw ParseError(source, line, "vertex id out of range");
    return static_cast<VertexId>(v);
}

RawWeight parse_weight(std::string_view s, const std::string& source, std::size_t line) {
    try {
        return RawWeight::parse(s);
    } catch (const GraphError& e) {
        throw ParseError(source, line, e.what());
    }
}

unsigned scale_decimals(Base scale) {
    unsigned d = 0;
    for (Base s = scale; s > 1; s /= 10) ++d;
    return d;
}

Base scaled(const RawWeight& w, Base scale, const std::string& source, std::size_t line) {
    const unsigned d = scale_decimals(scale);
    if (w.decimals > d) throw ParseError(source, line, "weight has more decimals than the graph scale allows");
    Base factor = 1;
    for (unsigned k = w.decimals; k < d; ++k) factor *= 10;
    if (w.mantissa > kMaxBaseWeight / factor) throw ParseError(source, line, "weight out of range");
    return w.mantissa * factor;
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw GraphError("cannot open " + path.string());
    return in;
}

}  // namespace

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& what)
    : GraphError(line > 0 ? source + ":" + std::to_string(line) + ": " + what : source + ": " + what), line_(line) {}

GraphFormat parse_graph_format(const std::string& text) {
    if (text == "auto") return GraphFormat::automatic;
    if (text == "gr" || text == "dimacs") return GraphFormat::dimacs;
    if (text == "csv") return GraphFormat::csv;
    throw GraphError("unknown graph format '" + text + "'");
}

GraphFormat format_for_path(const std::filesystem::path& path) {
    return path.extension() == ".gr" ? GraphFormat::dimacs : GraphFormat::csv;
}

std::vector<RawEdge> read_dimacs(std::istream& in, const std::string& source) {
    std::vector<RawEdge> out;
    std::string raw;
    std::size_t line = 0;
    bool header = false;
    std::uint64_t n = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string_view text = strip_cr(raw);
        const auto f = split(text, ' ');
        if (f.empty() || f[0] == "c") continue;
        if (f[0] == "p") {
            if (header) throw ParseError(source, line, "second problem line");
            if (f.size() != 4 || f[1] != "sp") throw ParseError(source, line, "expected 'p sp n m'");
            n = parse_uint(f[2], source, line, "vertex count");
            parse_uint(f[3], source, line, "arc count");
            header = true;
        } else if (f[0] == "a") {
            if (!header) throw ParseError(source, line, "arc before the problem line");
            if (f.size() != 4) throw ParseError(source, line, "expected 'a u v w'");
            const VertexId u = parse_vertex(f[1], source, line);
            const VertexId v = parse_vertex(f[2], source, line);
            if (u < 1 || v < 1 || u > n || v > n) throw ParseError(source, line, "vertex id outside 1..n");
            out.push_back({u, v, parse_weight(f[3], source, line)});
        } else {
            throw ParseError(source, line, "unknown line type '" + std::string(f[0]) + "'");
        }
    }
    if (!header) throw ParseError(source, 0, "missing problem line");
    return out;
}

std::vector<RawEdge> read_csv(std::istream& in, const std::string& source) {
    std::vector<RawEdge> out;
    std::string raw;
    std::size_t line = 0;
    bool first = true;
    while (std::getline(in, raw)) {
        ++line;
        const std::string_view text = strip_cr(raw);
        if (text.find_first_not_of(" \t") == std::string_view::npos || text.front() == '#') continue;
        const auto f = split(text, ',');
        if (first && f.size() == 3 && f[0] == "u" && f[1] == "v" && f[2] == "w") {
            first = false;
            continue;
        }
        first = false;
        if (f.size() != 3) throw ParseError(source, line, "expected 'u,v,w'");
        out.push_back({parse_vertex(f[0], source, line), parse_vertex(f[1], source, line),
                       parse_weight(f[2], source, line)});
    }
    return out;
}

std::vector<RawEdge> read_graph_file(const std::filesystem::path& path, GraphFormat format) {
    if (format == GraphFormat::automatic) format = format_for_path(path);
    auto in = open_input(path);
    return format == GraphFormat::dimacs ? read_dimacs(in, path.string()) : read_csv(in, path.string());
}

void write_csv(std::ostream& out, const std::vector<RawEdge>& edges) {
    for (const RawEdge& e : edges) {
        out << e.u << ',' << e.v << ',';
        if (e.weight.decimals == 0) {
            out << e.weight.mantissa;
        } else {
            Base scale = 1;
            for (unsigned k = 0; k < e.weight.decimals; ++k) scale *= 10;
            out << unscale(e.weight.mantissa, scale);
        }
        out << '\n';
    }
}

void write_graph(std::ostream& out, const Graph& g, GraphFormat format) {
    if (format == GraphFormat::dimacs) {
        if (g.has_vertex(0)) throw GraphError("DIMACS output needs 1-based vertex ids; vertex 0 is present");
        VertexId n = 0;
        for (VertexId v : g.vertices()) n = std::max(n, v);
        out << "p sp " << n << ' ' << 2 * g.edge_count() << '\n';
        for (EdgeId id : g.edge_ids()) {
            const Edge& e = g.edge(id);
            const std::string w = unscale(e.weight.base, g.scale());
            out << "a " << e.u << ' ' << e.v << ' ' << w << '\n';
            out << "a " << e.v << ' ' << e.u << ' ' << w << '\n';
        }
        return;
    }
    for (EdgeId id : g.edge_ids()) {
        const Edge& e = g.edge(id);
        out << e.u << ',' << e.v << ',' << unscale(e.weight.base, g.scale()) << '\n';
    }
}

void write_graph_file(const std::filesystem::path& path, const Graph& g, GraphFormat format) {
    if (format == GraphFormat::automatic) format = format_for_path(path);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw GraphError("cannot write " + path.string());
    write_graph(out, g, format);
}

std::vector<UpdateRequest> read_update_log(std::istream& in, Base scale, const std::string& source) {
    std::vector<UpdateRequest> out;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string_view text = strip_cr(raw);
        const auto f = split(text, ' ');
        if (f.empty() || f[0].front() == '#') continue;
        UpdateRequest u;
        if (f[0] == "I" || f[0] == "W") {
            if (f.size() != 4) throw ParseError(source, line, "expected '" + std::string(f[0]) + " u v w'");
            u.kind = f[0] == "I" ? UpdateKind::insert : UpdateKind::reweight;
            u.weight = scaled(parse_weight(f[3], source, line), scale, source, line);
        } else if (f[0] == "D") {
            if (f.size() != 3) throw ParseError(source, line, "expected 'D u v'");
            u.kind = UpdateKind::remove;
        } else {
            throw ParseError(source, line, "unknown update '" + std::string(f[0]) + "'");
        }
        u.u = parse_vertex(f[1], source, line);
        u.v = parse_vertex(f[2], source, line);
        out.push_back(u);
    }
    return out;
}

std::string format_update(const UpdateRequest& u, Base scale) {
    std::ostringstream os;
    switch (u.kind) {
        case UpdateKind::insert: os << "I " << u.u << ' ' << u.v << ' ' << unscale(u.weight, scale); break;
        case UpdateKind::remove: os << "D " << u.u << ' ' << u.v; break;
        case UpdateKind::reweight: os << "W " << u.u << ' ' << u.v << ' ' << unscale(u.weight, scale); break;
    }
    return os.str();
}

}  // namespace hdr
