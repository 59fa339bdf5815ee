#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "hrgvc/geometry.hpp"
#include "hrgvc/graph.hpp"

namespace hrgvc {

/// Outer-band vertices (radius >= rho) bucketed into angular sectors of
/// width theta(rho, rho). The last sector absorbs angles that round past the
/// final boundary.
struct SectorOccupancy {
    AnalysisConstants constants;
    std::vector<std::size_t> counts;
    std::size_t inner_vertices = 0;
    std::size_t outer_vertices = 0;
};

struct Run {
    std::size_t start = 0;  // first sector
    std::size_t length = 0; // sectors
    std::size_t vertex_count = 0;
    bool wide = false;  // length > w
    bool large = false; // narrow and vertex_count > component_limit
};

/// Maximal circular blocks of nonempty sectors, sorted by start sector.
struct RunClassification {
    std::vector<Run> runs;
};

struct RegionCounts {
    std::size_t inner_disk = 0;
    std::size_t wide_run_vertices = 0;
    std::size_t large_narrow_vertices = 0;
    std::size_t narrow_run_vertices = 0; // all narrow runs, large or not
    std::size_t n_outer = 0;
};

std::size_t sector_of(double angle, const AnalysisConstants& constants) noexcept;

/// `params` supplies alpha, C and the model n used for the constants; the
/// graph's realized vertex count may differ in the Poissonized model.
SectorOccupancy discretize(const Graph& g, const ModelParams& params, double tau);
SectorOccupancy discretize(std::span<const PolarPoint> points, const AnalysisConstants& constants);

RunClassification classify_runs(const SectorOccupancy& occupancy);

RegionCounts region_counts(const Graph& g, const ModelParams& params, double tau);
RegionCounts region_counts(const SectorOccupancy& occupancy, const RunClassification& runs);

/// Expected total length of success runs of length >= w in a circular
/// sequence of n_sectors i.i.d. Bernoulli(p) indicators:
/// n' p^w (w (1 - p) + p) for w < n', and n' p^n' when w = n' (only the
/// all-success circle qualifies). For the "longer than w" convention pass
/// w + 1.
double expected_run_mass(std::size_t n_sectors, double p, double w);

struct ProbabilityBounds {
    double lower = 0.0;
    double upper = 0.0;
};

/// 1 - e^(-gamma/4) and exp(-e^(-gamma)), the large-n bounds on the
/// probability that a sector is nonempty.
ProbabilityBounds occupancy_probability_bounds(const AnalysisConstants& constants);

/// Empirical region counts beside their leading-order predictors (big-O
/// constants taken as 1). Ratios only; no pass/fail judgment.
struct BoundsReport {
    std::string model; // "fixed" or "poisson"
    std::size_t n_model = 0;
    std::size_t n_realized = 0;
    std::size_t m = 0;
    AnalysisConstants constants;

    RegionCounts counts;
    std::size_t run_count = 0;
    std::size_t wide_run_count = 0;
    std::size_t widening_sectors = 0;

    double inner_predictor = 0.0;
    double wide_predictor = 0.0;
    double large_narrow_predictor = 0.0;
    double inner_ratio = 0.0;
    double wide_ratio = 0.0;
    double large_narrow_ratio = 0.0;
    double excess_ratio = 0.0; // gamma^-alpha

    double nonempty_sector_fraction = 0.0;
    ProbabilityBounds occupancy_bounds;
    double expected_widening_sectors = 0.0;

    /// Edges with both radii >= rho spanning more than one sector width.
    std::size_t outer_span_violations = 0;

    /// Named numeric fields in a fixed order, for CSV and text output.
    std::vector<std::pair<std::string, double>> fields() const;
};

BoundsReport bounds_report(const Graph& g, const ModelParams& params, double tau, std::string model = "fixed");

} // namespace hrgvc
