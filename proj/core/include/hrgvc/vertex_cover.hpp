#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hrgvc/graph.hpp"

namespace hrgvc {

/// Outcome of a greedy-style cover computation. The cover splits into the
/// vertices taken greedily and the optimal covers of the small components
/// that were separated along the way and solved exactly.
struct CoverResult {
    std::vector<Vertex> cover;
    std::size_t greedy_count = 0;
    std::size_t exact_region_cover_count = 0;
    std::size_t exact_region_vertex_count = 0;
    std::vector<std::size_t> solved_component_sizes;
    std::size_t component_limit = 0;
    std::chrono::nanoseconds elapsed{0};

    std::size_t size() const noexcept { return cover.size(); }
};

enum class ExactStatus { Optimal, LowerBoundOnly };

struct ExactResult {
    ExactStatus status = ExactStatus::Optimal;
    std::vector<Vertex> cover; // best cover found; optimal when status is Optimal
    std::size_t lower_bound = 0;
    std::size_t upper_bound = 0;
    std::chrono::nanoseconds elapsed{0};
};

struct Ratio {
    double value = 1.0;
    bool is_bound = false;
};

inline constexpr std::size_t kExactSmallCap = 64;

/// Repeatedly takes an alive vertex of maximum residual degree (smallest id
/// on ties) until the residual graph is edgeless.
CoverResult standard_greedy(const Graph& g);

/// Radius-ordered adapted greedy. Requires coordinates. Component limit is
/// floor(tau ln ln n), at least 1.
CoverResult adapted_greedy_radius(const Graph& g, double tau);
CoverResult adapted_greedy_radius_with_limit(const Graph& g, std::size_t component_limit);

/// Degree-ordered adapted greedy: the standard greedy loop, but every
/// component of size <= component_limit separated by a removal is solved
/// optimally and dropped.
CoverResult adapted_greedy_degree(const Graph& g, std::size_t component_limit);

/// Minimum vertex cover of the alive component `component` (sorted ids, at
/// most `cap` vertices). Throws ContractError above the cap.
std::vector<Vertex> exact_cover_small(const Graph& g, std::span<const Vertex> component,
                                      std::size_t cap = kExactSmallCap);

/// Minimum vertex cover of the whole graph: degree-0/1 and dominance
/// reductions, then branch-and-bound per kernel component. Returns
/// LowerBoundOnly with the best bounds found if the time limit runs out.
ExactResult exact_cover(const Graph& g, std::chrono::milliseconds time_limit);

/// Size of the greedy maximal matching over alive edges taken in id order.
std::size_t matching_lower_bound(const Graph& g, const AliveMask& mask);

/// Vertices forced into some optimal cover by one pass of the dominance
/// rule: returns a vertex u having a neighbor v with N(v) \ {u} within N(u),
/// if any. Exposed for testing the reduction.
std::optional<Vertex> find_dominating_vertex(const Graph& g, const AliveMask& mask);

/// cover_size / optimum, or cover_size / lower bound flagged as a bound.
/// Throws std::logic_error if cover_size is below the lower bound.
Ratio approximation_ratio(std::size_t cover_size, const ExactResult& opt);

} // namespace hrgvc
