#include "liftlab/builtins.hpp"

#include <cstdlib>
#include <regex>

#include "liftlab/graph_io.hpp"

#ifndef LIFTLAB_DATA_DIR
#define LIFTLAB_DATA_DIR "data"
#endif

namespace liftlab {

std::vector<std::string> figure_builtin_names() {
    return {"fig1_d3", "fig2_d4", "fig3_d4", "fig4_d7"};
}

std::string builtin_data_path(const std::string& name) {
    const char* env = std::getenv("LIFTLAB_DATA_DIR");
    std::string dir = env ? env : LIFTLAB_DATA_DIR;
    return dir + "/builtins/" + name + ".json";
}

Multigraph complete_regular(int d) {
    if (d < 1 || d > 16) fail(ErrorCode::UnknownBuiltin, "complete_<d> supports 1 <= d <= 16");
    int n = d + 1;
    Multigraph g(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) g.add_edges(i, j);
    }
    return g;
}

Multigraph hkd_graph(int k, int d) {
    if (k < 2 || d < 1 || d % (k - 1) != 0) {
        fail(ErrorCode::UnknownBuiltin, "hkd(k,d) needs (k-1) | d");
    }
    int b = d / (k - 1);
    Multigraph g(k);
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) g.add_edges(i, j, b);
    }
    return g;
}

Multigraph resolve_builtin(const std::string& name) {
    for (const auto& fig : figure_builtin_names()) {
        if (name == fig) {
            Multigraph g = read_multigraph(builtin_data_path(name));
            int expected_d = name == "fig4_d7" ? 7 : (name == "fig1_d3" ? 3 : 4);
            if (!g.is_regular(expected_d)) {
                fail(ErrorCode::IoError, "committed builtin " + name + " fails its degree check");
            }
            return g;
        }
    }
    static const std::regex complete_re("complete_([0-9]+)");
    static const std::regex hkd_re("hkd\\(([0-9]+),([0-9]+)\\)");
    std::smatch m;
    if (std::regex_match(name, m, complete_re)) return complete_regular(std::stoi(m[1]));
    if (std::regex_match(name, m, hkd_re)) return hkd_graph(std::stoi(m[1]), std::stoi(m[2]));
    fail(ErrorCode::UnknownBuiltin, "no builtin named " + name);
}

} // namespace liftlab
