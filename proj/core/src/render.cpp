#include "fibertrace/render.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace fibertrace {

namespace {

constexpr const char* kPalette[] = {"#444444", "#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#17becf", "#8c564b", "#e377c2", "#bcbd22"};

const char* color_for(long label) {
    long n = static_cast<long>(std::size(kPalette));
    return kPalette[((label % n) + n) % n];
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

double tau_at(const Embedding& e, int sector, int half, int p, int q, double phi) {
    Affine2 v = e.motion(sector, half, q) - e.motion(sector, half, p);
    double x = v.a.x.get_d() + v.b.x.get_d() * phi;
    double r = v.a.y.get_d() + v.b.y.get_d() * phi;
    double t = std::atan2(r, x);
    return t < 0 ? t + 2 * std::numbers::pi : t;
}

}  // namespace

std::string render_dot(const TraceGraph& graph) {
    std::ostringstream os;
    os << "graph trace_graph {\n";
    os << "  node [shape=point];\n";
    for (std::size_t i = 0; i < graph.vertices.size(); ++i) {
        const auto& v = graph.vertices[i];
        os << "  v" << i << " [label=\"" << vertex_kind_name(v.kind) << " " << v.sector << "\", tooltip=\"phi="
           << fmt(v.phi.to_double()) << "\"];\n";
    }
    for (std::size_t i = 0; i < graph.arcs.size(); ++i) {
        const auto& a = graph.arcs[i];
        const auto& r = a.runs.front();
        std::string from = a.start_vertex >= 0 ? "v" + std::to_string(a.start_vertex) : "c" + std::to_string(i);
        std::string to = a.end_vertex >= 0 ? "v" + std::to_string(a.end_vertex) : "c" + std::to_string(i);
        if (a.start_vertex < 0) os << "  c" << i << " [shape=circle, label=\"\"];\n";
        os << "  " << from << " -- " << to << " [color=\"" << color_for(a.marking.label()) << "\", label=\"("
           << r.p << "," << r.q << ") [" << a.marking.label() << "]\"];\n";
    }
    os << "}\n";
    return os.str();
}

std::string render_svg(const TraceGraph& graph, const Embedding& embedding, const std::vector<TorusCrossing>& crossings) {
    const int sectors = static_cast<int>(embedding.paths.size());
    const double width = 640;
    const double height = std::max(320.0, 80.0 * sectors);
    const double margin = 30;
    auto sx = [&](double tau) { return margin + tau / (2 * std::numbers::pi) * width; };
    auto sy = [&](double phi) { return margin + phi / std::max(1, sectors) * height; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width + 2 * margin) << "\" height=\""
       << fmt(height + 2 * margin) << "\">\n";
    os << "  <rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << fmt(width) << "\" height=\"" << fmt(height)
       << "\" fill=\"none\" stroke=\"#999\"/>\n";
    for (int k = 1; k < sectors; ++k) {
        os << "  <line x1=\"" << margin << "\" y1=\"" << fmt(sy(k)) << "\" x2=\"" << fmt(margin + width) << "\" y2=\""
           << fmt(sy(k)) << "\" stroke=\"#ddd\"/>\n";
    }
    for (const auto& a : graph.arcs) {
        const char* color = color_for(a.marking.label());
        for (const auto& r : a.runs) {
            double lo = r.lo().to_double();
            double hi = r.hi().to_double();
            const int steps = 24;
            std::string points;
            double prev = -1;
            auto flush = [&] {
                if (!points.empty()) {
                    os << "  <polyline fill=\"none\" stroke=\"" << color << "\" points=\"" << points << "\"/>\n";
                }
                points.clear();
            };
            for (int i = 0; i <= steps; ++i) {
                double phi = lo + (hi - lo) * i / steps;
                double t = tau_at(embedding, r.sector, r.half, r.p, r.q, phi);
                if (prev >= 0 && std::abs(t - prev) > std::numbers::pi) flush();
                points += fmt(sx(t)) + "," + fmt(sy(phi)) + " ";
                prev = t;
            }
            flush();
        }
    }
    for (const auto& v : graph.vertices) {
        if (v.pairs.empty()) continue;
        const auto& pr = v.pairs.back();
        double phi = v.phi.to_double();
        double t = tau_at(embedding, v.sector, v.half, pr.p, pr.q, phi);
        os << "  <circle cx=\"" << fmt(sx(t)) << "\" cy=\"" << fmt(sy(phi)) << "\" r=\"2.5\" fill=\"black\"/>\n";
    }
    for (const auto& c : crossings) {
        double phi = c.phi.to_double();
        double t = tau_at(embedding, c.sector, c.half, c.over.p, c.over.q, phi);
        os << "  <text x=\"" << fmt(sx(t) + 4) << "\" y=\"" << fmt(sy(phi) - 4) << "\" font-size=\"10\">"
           << (c.sign > 0 ? "+" : "-") << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace fibertrace
