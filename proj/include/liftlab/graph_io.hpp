#pragma once

#include <string>

#include "liftlab/graphs.hpp"

namespace liftlab {

// JSON graph formats:
//   multigraph:   {"n": int, "mult": [[int, ...], ...]}
//   simple graph: {"n": int, "edges": [[u, v], ...]}  (0-indexed)

Multigraph multigraph_from_json(const std::string& text);
SimpleGraph simple_graph_from_json(const std::string& text);
std::string multigraph_to_json(const Multigraph& g);
std::string simple_graph_to_json(const SimpleGraph& g);

Multigraph read_multigraph(const std::string& path);
SimpleGraph read_simple_graph(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// FNV-1a 64-bit checksum over raw bytes (registry integrity checks).
std::uint64_t fnv1a64(const std::string& bytes);

} // namespace liftlab
