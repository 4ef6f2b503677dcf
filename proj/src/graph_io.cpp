#include "liftlab/graph_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace liftlab {

using nlohmann::json;

Multigraph multigraph_from_json(const std::string& text) {
    json j = json::parse(text);
    int n = j.at("n").get<int>();
    std::vector<std::vector<int>> mult = j.at("mult").get<std::vector<std::vector<int>>>();
    return Multigraph(n, std::move(mult));
}

SimpleGraph simple_graph_from_json(const std::string& text) {
    json j = json::parse(text);
    int n = j.at("n").get<int>();
    SimpleGraph g(n);
    for (const auto& e : j.at("edges")) {
        g.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
    }
    return g;
}

std::string multigraph_to_json(const Multigraph& g) {
    json j;
    j["n"] = g.n();
    j["mult"] = g.mult_matrix();
    return j.dump();
}

std::string simple_graph_to_json(const SimpleGraph& g) {
    json j;
    j["n"] = g.n();
    auto& edges = j["edges"] = json::array();
    for (auto [u, v] : g.edges()) edges.push_back({u, v});
    return j.dump();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::IoError, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::IoError, "cannot write " + path);
    out << content;
}

Multigraph read_multigraph(const std::string& path) {
    return multigraph_from_json(read_text_file(path));
}

SimpleGraph read_simple_graph(const std::string& path) {
    return simple_graph_from_json(read_text_file(path));
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace liftlab
