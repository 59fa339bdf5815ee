#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "hrgvc/errors.hpp"
#include "hrgvc/generator.hpp"
#include "hrgvc/diagnostics.hpp"
#include "hrgvc/graph.hpp"
#include "support/graphs.hpp"

using namespace hrgvc;
using namespace hrgvc::testing;

namespace {
Graph parse(const std::string& text) {
    std::istringstream in(text);
    return load_edge_list(in);
}
} // namespace

TEST_CASE("from_edges normalizes") {
    auto g = make_graph(4, {{1, 0}, {0, 1}, {2, 2}, {3, 1}});
    CHECK(g.vertex_count() == 4);
    CHECK(g.edge_count() == 2);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 3));
    CHECK_FALSE(g.has_edge(2, 2));
    CHECK(g.degree(1) == 2);
    CHECK(g.edges() == std::vector<Edge>{{0, 1}, {1, 3}});
    CHECK_FALSE(g.has_coordinates());
    CHECK_THROWS(g.coordinates());
}

TEST_CASE("adjacency is sorted and symmetric") {
    std::mt19937_64 rng(5);
    const auto g = random_graph(40, 0.2, rng);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        auto nb = g.neighbors(v);
        CHECK(std::is_sorted(nb.begin(), nb.end()));
        CHECK(std::adjacent_find(nb.begin(), nb.end()) == nb.end());
        for (Vertex u : nb) CHECK(g.has_edge(u, v));
    }
}

TEST_CASE("edge list parsing") {
    auto path = parse("1 2\n2 3\n");
    CHECK(path.vertex_count() == 3);
    CHECK(path.edge_count() == 2);

    auto single = parse("% header\n1 2\n1 2\n2 1\n1 1\n");
    CHECK(single.vertex_count() == 2);
    CHECK(single.edge_count() == 1);
    CHECK(single.has_edge(0, 1));

    auto extra = parse("# comment\n\n10 20 1 999\n20 30 weight\n");
    CHECK(extra.edge_count() == 2);
    CHECK(extra.has_edge(0, 1));
    CHECK(extra.has_edge(1, 2));
}

TEST_CASE("edge list ids are remapped in first-seen order") {
    std::istringstream in("7 3\n3 100\n");
    const auto data = read_edge_list(in);
    CHECK(data.original_ids == std::vector<std::int64_t>{7, 3, 100});
}

TEST_CASE("malformed lines report their line number") {
    try {
        parse("1 2\n# fine\n3\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(parse("1 x\n"), ParseError);
}

TEST_CASE("edge list round trip keeps ids") {
    auto g = make_graph(6, {{0, 5}, {2, 3}, {3, 5}}); // 1 and 4 isolated
    std::ostringstream out;
    write_edge_list(out, g);
    std::istringstream in(out.str());
    auto h = load_edge_list(in);
    CHECK(h.vertex_count() == 6);
    CHECK(h.edges() == g.edges());
}

TEST_CASE("coordinate round trip") {
    std::vector<PolarPoint> pts{{1.25, 0.1}, {3.0, 6.2}, {0.0, 0.0}};
    std::vector<std::pair<std::string, std::string>> meta{{"seed", "4"}, {"alpha", "0.75"}};
    std::ostringstream out;
    write_coordinates(out, pts, meta);
    std::istringstream in(out.str());
    const auto file = read_coordinates(in);
    CHECK(file.points == pts);
    CHECK(file.find("seed") == std::optional<std::string>("4"));
    CHECK_FALSE(file.find("missing"));
    std::istringstream bad("0 1.0 0.0\n2 1.0 0.0\n");
    CHECK_THROWS_AS(read_coordinates(bad), ParseError);
}

TEST_CASE("alive mask") {
    AliveMask m(5);
    CHECK(m.alive_count() == 5);
    m.kill(2);
    m.kill(2);
    CHECK(m.alive_count() == 4);
    CHECK_FALSE(m.alive(2));
    m.revive(2);
    CHECK(m.alive_count() == 5);
}

TEST_CASE("bounded component") {
    AliveMask m1(1);
    auto single = make_graph(1, {});
    CHECK(bounded_component(single, m1, 0, 1) == std::vector<Vertex>{0});

    auto p5 = path_graph(5);
    AliveMask m5(5);
    CHECK_FALSE(bounded_component(p5, m5, 0, 3));

    auto c4 = cycle_graph(4);
    AliveMask m4(4);
    for (Vertex s = 0; s < 4; ++s) CHECK(bounded_component(c4, m4, s, 4)->size() == 4);

    m5.kill(2);
    CHECK(bounded_component(p5, m5, 4, 3) == std::vector<Vertex>{3, 4});
    CHECK_THROWS_AS(bounded_component(p5, m5, 2, 3), ContractError);
}

TEST_CASE("probe stops after limit + 1 vertices") {
    auto p = path_graph(50);
    AliveMask m(50);
    ComponentProbe probe(50);
    CHECK_FALSE(probe.explore(p, m, 0, 7));
    CHECK(probe.last_visited() == 8);
    // marks are cleared between calls
    CHECK(probe.explore(p, m, 0, 50)->size() == 50);
}

TEST_CASE("bounded component with limit n equals the connected component") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; ++t) {
        auto g = random_graph(30, 0.06, rng);
        AliveMask m(30);
        for (const auto& comp : connected_components(g, m)) {
            for (Vertex v : comp) CHECK(*bounded_component(g, m, v, 30) == comp);
        }
    }
}

TEST_CASE("connected components") {
    auto g = make_graph(4, {{0, 1}, {2, 3}});
    AliveMask all(4);
    auto comps = connected_components(g, all);
    REQUIRE(comps.size() == 2);
    CHECK(comps[0] == std::vector<Vertex>{0, 1});
    CHECK(comps[1] == std::vector<Vertex>{2, 3});
    AliveMask none(4, false);
    CHECK(connected_components(g, none).empty());
}

TEST_CASE("is_vertex_cover") {
    auto tri = complete_graph(3);
    CHECK(is_vertex_cover(tri, std::vector<Vertex>{0, 1}));
    CHECK_FALSE(is_vertex_cover(tri, std::vector<Vertex>{2}));
    auto pet = petersen_graph();
    CHECK(brute_force_cover_size(pet) == 6);
    CHECK(is_vertex_cover(pet, std::vector<Vertex>{1, 3, 4, 5, 6, 7}));
}

TEST_CASE("degree queue matches a naive max-degree scan") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 30; ++t) {
        auto g = random_graph(25, 0.25, rng);
        AliveMask m(g.vertex_count());
        AliveMask naive_mask(g.vertex_count());
        DegreeQueue q(g, m);
        while (true) {
            std::optional<Vertex> expect;
            std::size_t best = 0;
            for (Vertex v = 0; v < g.vertex_count(); ++v) {
                if (!naive_mask.alive(v)) continue;
                const auto d = residual_degree(g, naive_mask, v);
                if (d > best) {
                    best = d;
                    expect = v;
                }
            }
            const auto got = q.peek_max(m);
            CHECK(got == expect);
            if (!got) break;
            m.kill(*got);
            q.on_removed(g, m, *got);
            naive_mask.kill(*expect);
        }
    }
}

TEST_CASE("outer components fit inside one run") {
    const ModelParams params(2000, 0.75, 2.0);
    const auto g = generate({params, 3});
    const auto k = analysis_constants(params, 1.0);
    AliveMask outer(g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (g.coordinates()[v].radius < k.rho) outer.kill(v);
    const auto occ = discretize(g, params, 1.0);
    const auto runs = classify_runs(occ);
    std::size_t largest_run = 0;
    for (const auto& r : runs.runs) largest_run = std::max(largest_run, r.vertex_count);
    for (const auto& comp : connected_components(g, outer)) {
        CHECK(comp.size() <= largest_run);
        // all members share one run: their sectors form a block with no empty sector between
        std::vector<std::size_t> run_of(occ.counts.size(), SIZE_MAX);
        for (std::size_t i = 0; i < runs.runs.size(); ++i)
            for (std::size_t s = 0; s < runs.runs[i].length; ++s)
                run_of[(runs.runs[i].start + s) % occ.counts.size()] = i;
        const auto first = run_of[sector_of(g.coordinates()[comp.front()].angle, k)];
        for (Vertex v : comp) CHECK(run_of[sector_of(g.coordinates()[v].angle, k)] == first);
    }
}
