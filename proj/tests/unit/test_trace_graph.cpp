#include <doctest.h>

#include <json.hpp>
#include <random>
#include <set>

#include "fibertrace/errors.hpp"
#include "fibertrace/pipeline.hpp"
#include "fibertrace/serialize.hpp"
#include "generators.hpp"

using namespace fibertrace;

namespace {

long residue(long a, int m) {
    if (m == 0) return a;
    long r = a % std::abs(m);
    return r < 0 ? r + std::abs(m) : r;
}

std::multiset<long> trace_labels(const TraceGraph& g) {
    std::multiset<long> out;
    for (const auto& t : g.traces) out.insert(t.marking.label());
    return out;
}

}  // namespace

TEST_CASE("closure of s3 s2 s1 splits into three trace circles") {
    auto a = analyze(build_diagram(parse_morse_word("s3 s2 s1"), 4));
    CHECK(a.graph.m == 4);
    CHECK(a.graph.traces.size() == 3);
    for (const auto& t : a.graph.traces) CHECK(t.closed);
    CHECK(trace_labels(a.graph) == std::multiset<long>{1, 2, 3});
    CHECK(a.graph.count(VertexKind::Triple) == 12);
    CHECK(a.graph.count(VertexKind::Hanging) == 0);

    auto sym = verify_symmetry(a.diagram, a.embedding, a.graph);
    CHECK(sym.ok);
    std::set<std::pair<long, long>> pairs(sym.marking_pairs.begin(), sym.marking_pairs.end());
    CHECK(pairs == std::set<std::pair<long, long>>{{1, 3}, {2, 2}, {3, 1}});
}

TEST_CASE("long trefoil traces are marked 0 and 1") {
    auto a = analyze(build_diagram(parse_morse_word("cup2 s1 s1 s1 cap2"), 1));
    CHECK(trace_labels(a.graph) == std::multiset<long>{0, 1});
    for (const auto& t : a.graph.traces) CHECK_FALSE(t.closed);
    CHECK(a.graph.count(VertexKind::Hanging) == 4);
    CHECK(check_graph_invariants(a.diagram, a.embedding, a.graph).ok());
}

TEST_CASE("marking rule at trisecants from diagram markings alone") {
    std::mt19937 rng(44);
    int vertices = 0;
    for (int trial = 0; trial < 30; ++trial) {
        auto d = trial % 2 ? testing::random_closed_braid(rng, 3 + trial % 3, 10)
                           : testing::random_morse_knot(rng, trial % 3, 1, 4);
        if (!d) continue;
        Analysis a;
        try {
            a = analyze(*d);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Degeneracy);
            continue;
        }
        for (const auto& v : a.graph.vertices) {
            if (v.kind != VertexKind::Triple) continue;
            ++vertices;
            long x = crossing_marking(*d, v.sector, v.pairs[0].p, v.pairs[0].q).winding;
            long y = crossing_marking(*d, v.sector, v.pairs[1].p, v.pairs[1].q).winding;
            long b = crossing_marking(*d, v.sector, v.pairs[2].p, v.pairs[2].q).winding;
            CHECK(residue(b, d->m()) == residue(x + y, d->m()));
        }
    }
    CHECK(vertices > 100);
}

TEST_CASE("knot sign switches exactly at tangent vertices") {
    std::mt19937 rng(45);
    int switches = 0;
    for (int trial = 0; trial < 20; ++trial) {
        auto d = trial % 2 ? testing::random_closed_braid(rng, 4, 10) : testing::random_morse_knot(rng, 1, 1, 4);
        if (!d) continue;
        Analysis a;
        try {
            a = analyze(*d);
        } catch (const Error&) {
            continue;
        }
        for (const auto& t : a.graph.traces) {
            const std::size_t n = t.arcs.size();
            const std::size_t joins = t.closed ? (n > 1 ? n : 0) : n - 1;
            for (std::size_t i = 0; i < joins; ++i) {
                const auto& x = a.graph.arcs[static_cast<std::size_t>(t.arcs[i])];
                const auto& y = a.graph.arcs[static_cast<std::size_t>(t.arcs[(i + 1) % n])];
                REQUIRE(x.end_vertex == y.start_vertex);
                bool tangent = a.graph.vertices[static_cast<std::size_t>(x.end_vertex)].kind == VertexKind::Tangent;
                CHECK((x.knot_sign != y.knot_sign) == tangent);
                switches += tangent;
            }
        }
    }
    CHECK(switches > 20);
}

TEST_CASE("graph JSON follows the schema and is deterministic") {
    auto d = build_diagram(parse_morse_word("s1 s3 s2 s1 s3 s2 S3 S2 S3"), 4);
    auto a = analyze(d);
    auto b = analyze(d);
    std::string text = graph_json(a.graph, a.embedding.config);
    CHECK(text == graph_json(b.graph, b.embedding.config));
    auto j = nlohmann::json::parse(text);
    CHECK(j["m"] == 4);
    for (const char* key : {"kind", "sector", "phi", "strands"}) CHECK(j["vertices"][0].contains(key));
    for (const char* key : {"pair", "phi_lo", "phi_hi", "sign", "marking", "trace"}) CHECK(j["arcs"][0].contains(key));
    for (const char* key : {"id", "closed", "marking"}) CHECK(j["traces"][0].contains(key));
    CHECK(j["traces"].size() == 3);
}
