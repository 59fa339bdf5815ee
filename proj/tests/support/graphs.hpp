#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hrgvc/graph.hpp"

namespace hrgvc::testing {

inline Graph make_graph(std::size_t n, const std::vector<Edge>& edges) { return Graph::from_edges(n, edges); }

inline Graph path_graph(std::size_t n) {
    std::vector<Edge> e;
    for (Vertex v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
    return make_graph(n, e);
}

inline Graph cycle_graph(std::size_t n) {
    std::vector<Edge> e;
    for (Vertex v = 0; v < n; ++v) e.emplace_back(v, static_cast<Vertex>((v + 1) % n));
    return make_graph(n, e);
}

inline Graph complete_graph(std::size_t n) {
    std::vector<Edge> e;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) e.emplace_back(u, v);
    return make_graph(n, e);
}

inline Graph star_graph(std::size_t leaves) {
    std::vector<Edge> e;
    for (Vertex v = 1; v <= leaves; ++v) e.emplace_back(0, v);
    return make_graph(leaves + 1, e);
}

inline Graph petersen_graph() {
    std::vector<Edge> e;
    for (Vertex i = 0; i < 5; ++i) {
        e.emplace_back(i, (i + 1) % 5);
        e.emplace_back(i, i + 5);
        e.emplace_back(i + 5, (i + 2) % 5 + 5);
    }
    return make_graph(10, e);
}

inline Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(p);
    std::vector<Edge> e;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (coin(rng)) e.emplace_back(u, v);
    return make_graph(n, e);
}

inline Graph random_tree(std::size_t n, std::mt19937_64& rng) {
    std::vector<Edge> e;
    for (Vertex v = 1; v < n; ++v) {
        std::uniform_int_distribution<Vertex> parent(0, v - 1);
        e.emplace_back(parent(rng), v);
    }
    return make_graph(n, e);
}

/// Minimum cover size by trying every subset. n <= 20.
inline std::size_t brute_force_cover_size(const Graph& g) {
    const auto n = g.vertex_count();
    const auto edges = g.edges();
    std::size_t best = n;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        const auto size = static_cast<std::size_t>(__builtin_popcount(mask));
        if (size >= best) continue;
        bool ok = true;
        for (auto [u, v] : edges) {
            if (!((mask >> u) & 1u) && !((mask >> v) & 1u)) {
                ok = false;
                break;
            }
        }
        if (ok) best = size;
    }
    return best;
}

} // namespace hrgvc::testing
