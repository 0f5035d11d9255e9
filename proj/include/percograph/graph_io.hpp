#pragma once

#include "percograph/model.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace percograph {

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_double(double x);

/// Parsed form of the line-oriented graph format.
struct GraphRecord {
    int dim = 0;
    std::size_t n = 0;
    double r = 0.0;
    double p = 0.0;
    std::uint64_t seed = 0;
    std::vector<double> coordinates;
    struct KeptEdge {
        Edge edge;
        double level = 0.0;
    };
    std::vector<KeptEdge> kept;
};

/// Writes `d n r p seed`, then one point per line, then one kept edge per
/// line as `i j u`.
void write_graph_text(std::ostream& out, const PercolatedGeometricGraph& graph);

/// Throws std::runtime_error on malformed input.
GraphRecord read_graph_text(std::istream& in);

}  // namespace percograph
