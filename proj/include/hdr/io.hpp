#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "hdr/dynamic.hpp"
#include "hdr/hierarchy.hpp"
#include "hdr/ingest.hpp"

namespace hdr {

/// Malformed input text; `line()` is 1-based (0 when not tied to a line).
class ParseError : public GraphError {
public:
    ParseError(const std::string& source, std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

enum class GraphFormat { automatic, dimacs, csv };

GraphFormat parse_graph_format(const std::string& text);
/// ".gr" means DIMACS, anything else CSV.
GraphFormat format_for_path(const std::filesystem::path& path);

/// DIMACS shortest-path text: "c" comments, one "p sp n m" line, then
/// "a u v w" arcs with 1-based ids. Ids are kept as written.
std::vector<RawEdge> read_dimacs(std::istream& in, const std::string& source = "<dimacs>");

/// CSV "u,v,w" rows with 0-based ids. Blank lines, "#" comments and a
/// leading "u,v,w" header are skipped.
std::vector<RawEdge> read_csv(std::istream& in, const std::string& source = "<csv>");

std::vector<RawEdge> read_graph_file(const std::filesystem::path& path, GraphFormat format = GraphFormat::automatic);

void write_csv(std::ostream& out, const std::vector<RawEdge>& edges);
/// Current edges of g in id order, weights in input units. DIMACS output
/// requires 1-based ids.
void write_graph(std::ostream& out, const Graph& g, GraphFormat format);
void write_graph_file(const std::filesystem::path& path, const Graph& g, GraphFormat format = GraphFormat::automatic);

/// Update log: "I u v w", "D u v", "W u v w" per line; "#" comments. Weights
/// are in input units and must be exact at the graph's scale.
std::vector<UpdateRequest> read_update_log(std::istream& in, Base scale, const std::string& source = "<log>");
std::string format_update(const UpdateRequest& u, Base scale);

/// Order-independent CRC-32 of the edge set with weights in input units, so
/// it does not depend on the scale chosen at ingestion.
std::uint32_t graph_hash(const Graph& g);

inline constexpr std::uint32_t kFormatVersion = 1;

/// "HDR1" binary image of the graph and every level. Shortcut slots are
/// written compacted, so an image read back and written again is identical.
std::string serialize(const Hierarchy& h);
Hierarchy deserialize(const std::string& bytes);

void save_structure(const std::filesystem::path& path, const Hierarchy& h);
Hierarchy load_structure(const std::filesystem::path& path);

/// JSON written next to a structure file as "<structure>.json".
std::filesystem::path sidecar_path(const std::filesystem::path& structure);
std::string stats_json(const Hierarchy& h, double build_seconds, const std::string& timestamp);
std::string utc_timestamp();

}  // namespace hdr
