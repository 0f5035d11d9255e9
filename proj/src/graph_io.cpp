#include "percograph/graph_io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace percograph {

std::string format_double(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_graph_text(std::ostream& out, const PercolatedGeometricGraph& graph)
{
    const auto& base = graph.base();
    const auto& cloud = base.cloud();
    out << cloud.dim() << ' ' << cloud.size() << ' ' << format_double(base.radius()) << ' '
        << format_double(graph.p()) << ' ' << cloud.seed() << '\n';
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto pt = cloud.point(i);
        for (std::size_t a = 0; a < pt.size(); ++a)
            out << (a ? " " : "") << format_double(pt[a]);
        out << '\n';
    }
    const auto& edges = base.edges();
    const auto& levels = graph.levels();
    for (std::size_t e = 0; e < edges.size(); ++e)
        if (levels[e] < graph.p())
            out << edges[e].u << ' ' << edges[e].v << ' ' << format_double(levels[e]) << '\n';
}

GraphRecord read_graph_text(std::istream& in)
{
    GraphRecord rec;
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("graph text: missing header");
    {
        std::istringstream header(line);
        if (!(header >> rec.dim >> rec.n >> rec.r >> rec.p >> rec.seed) || rec.dim < 1)
            throw std::runtime_error("graph text: malformed header '" + line + "'");
    }
    rec.coordinates.reserve(rec.n * static_cast<std::size_t>(rec.dim));
    for (std::size_t i = 0; i < rec.n; ++i) {
        if (!std::getline(in, line))
            throw std::runtime_error("graph text: expected " + std::to_string(rec.n) + " points");
        std::istringstream row(line);
        for (int a = 0; a < rec.dim; ++a) {
            double c;
            if (!(row >> c))
                throw std::runtime_error("graph text: short point line " + std::to_string(i));
            rec.coordinates.push_back(c);
        }
    }
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream row(line);
        GraphRecord::KeptEdge ke;
        if (!(row >> ke.edge.u >> ke.edge.v >> ke.level) || ke.edge.u >= ke.edge.v ||
            ke.edge.v >= rec.n)
            throw std::runtime_error("graph text: malformed edge line '" + line + "'");
        rec.kept.push_back(ke);
    }
    return rec;
}

}  // namespace percograph
