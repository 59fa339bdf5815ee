#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "hrgvc/geometry.hpp"
#include "hrgvc/graph.hpp"

namespace hrgvc {

enum class SamplingMode { FixedN, PoissonN };
enum class EdgeBuilder { Naive, Accelerated };

/// Name of the pseudo random engine, recorded in generated file headers.
inline constexpr std::string_view kRandomEngineName = "std::mt19937_64";

struct GeneratorConfig {
    ModelParams params;
    std::uint64_t seed = 0;
    SamplingMode mode = SamplingMode::FixedN;
    EdgeBuilder edge_builder = EdgeBuilder::Accelerated;
};

std::string_view to_string(SamplingMode mode) noexcept;
std::string_view to_string(EdgeBuilder builder) noexcept;

/// Draws the vertex positions. FixedN yields exactly n points; PoissonN first
/// draws the point count from Poisson(n), then positions i.i.d.
std::vector<PolarPoint> sample_points(const GeneratorConfig& config);

/// Connects every pair at hyperbolic distance <= R. Both builders evaluate
/// the same predicate, so their edge sets are identical; the accelerated one
/// only prunes candidate pairs with a band/cell grid.
Graph build_edges(std::span<const PolarPoint> points, double R, EdgeBuilder builder);

/// Edge count of the graph build_edges would produce, without storing edges.
std::uint64_t count_edges(std::span<const PolarPoint> points, double R);

/// sample_points followed by build_edges; the result carries coordinates.
Graph generate(const GeneratorConfig& config);

struct CalibrationOptions {
    double lower = -20.0;
    double upper = 10.0;
    int max_steps = 30;
    /// Early-exit tolerance on the relative degree error.
    double tolerance = 0.01;
    /// Acceptance tolerance after the bracket is exhausted.
    double acceptance = 0.05;
    std::uint64_t first_seed = 1;
};

/// Finds C whose mean empirical average degree over `seeds` FixedN samples is
/// within 5% of the target. The same seeds are reused at every probe.
double calibrate_c(double target_avg_degree, std::uint64_t n, double alpha, int seeds,
                   const CalibrationOptions& options = {});

/// Mean average degree 2m/n over seeds first_seed.. first_seed + seeds - 1.
double mean_average_degree(const ModelParams& params, int seeds, std::uint64_t first_seed = 1);

} // namespace hrgvc
