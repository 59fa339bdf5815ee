#include "hrgvc/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "hrgvc/errors.hpp"

namespace hrgvc {

std::size_t sector_of(double angle, const AnalysisConstants& constants) noexcept {
    const auto s = static_cast<std::size_t>(std::max(0.0, angle / constants.sector_width));
    return std::min(s, constants.n_sectors - 1);
}

SectorOccupancy discretize(std::span<const PolarPoint> points, const AnalysisConstants& constants) {
    SectorOccupancy occ;
    occ.constants = constants;
    occ.counts.assign(constants.n_sectors, 0);
    for (const auto& p : points) {
        if (p.radius < constants.rho) {
            ++occ.inner_vertices;
            continue;
        }
        ++occ.outer_vertices;
        ++occ.counts[sector_of(p.angle, constants)];
    }
    return occ;
}

SectorOccupancy discretize(const Graph& g, const ModelParams& params, double tau) {
    if (!g.has_coordinates()) throw ContractError("discretize: graph has no coordinates");
    return discretize(g.coordinates(), analysis_constants(params, tau));
}

RunClassification classify_runs(const SectorOccupancy& occ) {
    RunClassification out;
    const std::size_t n = occ.counts.size();
    const auto& k = occ.constants;
    const auto finish = [&](Run run) {
        run.wide = static_cast<double>(run.length) > k.w;
        run.large = !run.wide && run.vertex_count > k.component_limit;
        out.runs.push_back(run);
    };

    const auto empty_it = std::find(occ.counts.begin(), occ.counts.end(), std::size_t{0});
    if (empty_it == occ.counts.end()) {
        if (n == 0) return out;
        Run all;
        all.start = 0;
        all.length = n;
        for (auto c : occ.counts) all.vertex_count += c;
        finish(all);
        return out;
    }
    // walk once around the circle starting just after an empty sector
    const auto first_empty = static_cast<std::size_t>(empty_it - occ.counts.begin());
    Run current;
    bool open = false;
    for (std::size_t step = 1; step <= n; ++step) {
        const std::size_t s = (first_empty + step) % n;
        if (occ.counts[s] == 0) {
            if (open) finish(current);
            open = false;
            continue;
        }
        if (!open) {
            current = Run{};
            current.start = s;
            open = true;
        }
        ++current.length;
        current.vertex_count += occ.counts[s];
    }
    // the walk ends on the empty sector it started from, so no run is open
    std::sort(out.runs.begin(), out.runs.end(), [](const Run& a, const Run& b) { return a.start < b.start; });
    return out;
}

RegionCounts region_counts(const SectorOccupancy& occ, const RunClassification& runs) {
    RegionCounts rc;
    rc.inner_disk = occ.inner_vertices;
    rc.n_outer = occ.outer_vertices;
    for (const auto& run : runs.runs) {
        if (run.wide) {
            rc.wide_run_vertices += run.vertex_count;
        } else {
            rc.narrow_run_vertices += run.vertex_count;
            if (run.large) rc.large_narrow_vertices += run.vertex_count;
        }
    }
    return rc;
}

RegionCounts region_counts(const Graph& g, const ModelParams& params, double tau) {
    const auto occ = discretize(g, params, tau);
    return region_counts(occ, classify_runs(occ));
}

double expected_run_mass(std::size_t n_sectors, double p, double w) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("expected_run_mass: p must lie in [0, 1]");
    const auto n = static_cast<double>(n_sectors);
    if (!(w >= 1.0 && w <= n)) throw DomainError("expected_run_mass: w must lie in [1, n_sectors]");
    if (n_sectors >= 2 && w == n) return n * std::pow(p, n);
    return n * std::pow(p, w) * (w * (1.0 - p) + p);
}

ProbabilityBounds occupancy_probability_bounds(const AnalysisConstants& constants) {
    if (!(constants.gamma > 0.0)) throw DomainError("occupancy bounds: gamma must be positive");
    return {1.0 - std::exp(-constants.gamma / 4.0), std::exp(-std::exp(-constants.gamma))};
}

BoundsReport bounds_report(const Graph& g, const ModelParams& params, double tau, std::string model) {
    if (!g.has_coordinates()) throw ContractError("bounds_report: graph has no coordinates");
    BoundsReport r;
    r.model = std::move(model);
    r.n_model = params.n();
    r.n_realized = g.vertex_count();
    r.m = g.edge_count();

    const auto occ = discretize(g, params, tau);
    const auto runs = classify_runs(occ);
    r.constants = occ.constants;
    r.counts = region_counts(occ, runs);
    r.run_count = runs.runs.size();
    for (const auto& run : runs.runs) {
        if (!run.wide) continue;
        ++r.wide_run_count;
        r.widening_sectors += run.length;
    }

    const auto& k = r.constants;
    const double n = static_cast<double>(params.n());
    const double l1 = std::log(n);
    const double l2 = std::log(l1);
    const double l3 = std::log(l2);
    r.inner_predictor = n * std::pow(k.gamma, -params.alpha());
    r.wide_predictor = std::pow(tau, 0.75) * n / (std::pow(l2, 0.25) * std::sqrt(l3));
    r.large_narrow_predictor = tau * n * l2 / (k.gamma * std::pow(l1, tau / 18.0));
    r.inner_ratio = static_cast<double>(r.counts.inner_disk) / r.inner_predictor;
    r.wide_ratio = static_cast<double>(r.counts.wide_run_vertices) / r.wide_predictor;
    r.large_narrow_ratio = static_cast<double>(r.counts.large_narrow_vertices) / r.large_narrow_predictor;
    r.excess_ratio = std::pow(k.gamma, -params.alpha());

    std::size_t nonempty = 0;
    for (auto c : occ.counts) nonempty += c > 0 ? 1 : 0;
    r.nonempty_sector_fraction = static_cast<double>(nonempty) / static_cast<double>(k.n_sectors);
    r.occupancy_bounds = occupancy_probability_bounds(k);
    // widening sectors belong to runs of more than w sectors
    const double longer_than_w = std::floor(k.w) + 1.0;
    if (longer_than_w <= static_cast<double>(k.n_sectors)) {
        r.expected_widening_sectors = expected_run_mass(k.n_sectors, r.nonempty_sector_fraction, longer_than_w);
    }

    const auto coords = g.coordinates();
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        if (coords[u].radius < k.rho) continue;
        for (Vertex v : g.neighbors(u)) {
            if (v <= u || coords[v].radius < k.rho) continue;
            if (angular_distance(coords[u].angle, coords[v].angle) > k.sector_width) ++r.outer_span_violations;
        }
    }
    return r;
}

std::vector<std::pair<std::string, double>> BoundsReport::fields() const {
    const auto d = [](std::size_t x) { return static_cast<double>(x); };
    return {
        {"n_model", d(n_model)},
        {"n", d(n_realized)},
        {"m", d(m)},
        {"tau", constants.tau},
        {"gamma", constants.gamma},
        {"rho", constants.rho},
        {"w", constants.w},
        {"sector_width", constants.sector_width},
        {"n_sectors", d(constants.n_sectors)},
        {"component_limit", d(constants.component_limit)},
        {"inner_disk", d(counts.inner_disk)},
        {"n_outer", d(counts.n_outer)},
        {"narrow_run_vertices", d(counts.narrow_run_vertices)},
        {"wide_run_vertices", d(counts.wide_run_vertices)},
        {"large_narrow_vertices", d(counts.large_narrow_vertices)},
        {"inner_fraction", n_realized ? d(counts.inner_disk) / d(n_realized) : 0.0},
        {"inner_predictor", inner_predictor},
        {"inner_ratio", inner_ratio},
        {"wide_predictor", wide_predictor},
        {"wide_ratio", wide_ratio},
        {"large_narrow_predictor", large_narrow_predictor},
        {"large_narrow_ratio", large_narrow_ratio},
        {"excess_ratio", excess_ratio},
        {"runs", d(run_count)},
        {"wide_runs", d(wide_run_count)},
        {"widening_sectors", d(widening_sectors)},
        {"expected_widening_sectors", expected_widening_sectors},
        {"nonempty_sector_fraction", nonempty_sector_fraction},
        {"occupancy_lower", occupancy_bounds.lower},
        {"occupancy_upper", occupancy_bounds.upper},
        {"outer_span_violations", d(outer_span_violations)},
    };
}

} // namespace hrgvc
