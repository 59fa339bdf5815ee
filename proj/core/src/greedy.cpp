#include <algorithm>
#include <numeric>

#include "bit_solver.hpp"
#include "hrgvc/errors.hpp"
#include "hrgvc/geometry.hpp"
#include "hrgvc/vertex_cover.hpp"

namespace hrgvc {

namespace {

using Clock = std::chrono::steady_clock;

// Removes small components hanging off a freshly removed vertex and solves
// them optimally.
class SmallComponentSolver {
public:
    SmallComponentSolver(const Graph& g, std::size_t limit) : g_(g), limit_(limit), probe_(g.vertex_count()) {}

    void after_removal(Vertex removed, AliveMask& mask, CoverResult& out) {
        for (Vertex u : g_.neighbors(removed)) {
            if (!mask.alive(u)) continue;
            auto component = probe_.explore(g_, mask, u, limit_);
            if (!component) continue;
            out.exact_region_vertex_count += component->size();
            out.solved_component_sizes.push_back(component->size());
            if (component->size() > 1) {
                detail::BitSolver solver(g_, *component);
                const auto cover = solver.solve();
                out.exact_region_cover_count += cover.size();
                out.cover.insert(out.cover.end(), cover.begin(), cover.end());
            }
            // a separated component has no alive neighbors outside itself,
            // so no residual degree changes
            for (Vertex v : *component) mask.kill(v);
        }
    }

private:
    const Graph& g_;
    std::size_t limit_;
    ComponentProbe probe_;
};

void finish(CoverResult& out, Clock::time_point start) {
    std::sort(out.cover.begin(), out.cover.end());
    out.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
}

} // namespace

CoverResult standard_greedy(const Graph& g) {
    const auto start = Clock::now();
    CoverResult out;
    AliveMask mask(g.vertex_count());
    DegreeQueue queue(g, mask);
    while (auto v = queue.peek_max(mask)) {
        out.cover.push_back(*v);
        mask.kill(*v);
        queue.on_removed(g, mask, *v);
    }
    out.greedy_count = out.cover.size();
    finish(out, start);
    return out;
}

CoverResult adapted_greedy_degree(const Graph& g, std::size_t component_limit) {
    if (component_limit == 0) throw ContractError("adapted_greedy_degree: component limit must be >= 1");
    const auto start = Clock::now();
    CoverResult out;
    out.component_limit = component_limit;
    AliveMask mask(g.vertex_count());
    DegreeQueue queue(g, mask);
    SmallComponentSolver small(g, component_limit);
    while (auto v = queue.peek_max(mask)) {
        out.cover.push_back(*v);
        ++out.greedy_count;
        mask.kill(*v);
        queue.on_removed(g, mask, *v);
        small.after_removal(*v, mask, out);
    }
    finish(out, start);
    return out;
}

CoverResult adapted_greedy_radius_with_limit(const Graph& g, std::size_t component_limit) {
    if (!g.has_coordinates()) throw ContractError("adapted_greedy_radius: graph has no coordinates");
    if (component_limit == 0) throw ContractError("adapted_greedy_radius: component limit must be >= 1");
    const auto start = Clock::now();
    const auto coords = g.coordinates();
    std::vector<Vertex> order(g.vertex_count());
    std::iota(order.begin(), order.end(), Vertex{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Vertex a, Vertex b) { return coords[a].radius < coords[b].radius; });

    CoverResult out;
    out.component_limit = component_limit;
    AliveMask mask(g.vertex_count());
    SmallComponentSolver small(g, component_limit);
    for (Vertex v : order) {
        if (!mask.alive(v)) continue;
        const bool isolated = residual_degree(g, mask, v) == 0;
        mask.kill(v);
        if (isolated) continue;
        out.cover.push_back(v);
        ++out.greedy_count;
        small.after_removal(v, mask, out);
    }
    finish(out, start);
    return out;
}

CoverResult adapted_greedy_radius(const Graph& g, double tau) {
    return adapted_greedy_radius_with_limit(g, component_limit(g.vertex_count(), tau));
}

} // namespace hrgvc
