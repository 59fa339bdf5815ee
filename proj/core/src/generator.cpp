#include "hrgvc/generator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "hrgvc/errors.hpp"

namespace hrgvc {

namespace {

// 53 random mantissa bits; identical on every platform for a given engine
// state, unlike std::uniform_real_distribution.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct PointCache {
    std::vector<double> radius;
    std::vector<double> angle;
    std::vector<double> sinh_r;

    explicit PointCache(std::span<const PolarPoint> points) {
        radius.reserve(points.size());
        angle.reserve(points.size());
        sinh_r.reserve(points.size());
        for (const auto& p : points) {
            radius.push_back(p.radius);
            angle.push_back(p.angle);
            sinh_r.push_back(std::sinh(p.radius));
        }
    }

    // Same expression as cosh_distance(), with sinh precomputed.
    bool connected(std::size_t u, std::size_t v, double cosh_R) const {
        const double half = std::sin(angular_distance(angle[u], angle[v]) / 2.0);
        const double value = std::cosh(radius[u] - radius[v]) + 2.0 * sinh_r[u] * sinh_r[v] * half * half;
        return std::max(1.0, value) <= cosh_R;
    }
};

template <typename Emit>
void naive_pairs(const PointCache& cache, double R, Emit&& emit) {
    const double cosh_R = std::cosh(R);
    const std::size_t n = cache.radius.size();
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            if (cache.connected(u, v, cosh_R)) emit(u, v);
        }
    }
}

// Unit-width radial bands, each split into equal angular cells no narrower
// than theta(b, b), where b is the band's inner radius.
struct BandGrid {
    struct Band {
        double inner = 0.0;
        std::size_t cells = 1;
        double cell_width = kTwoPi;
        std::vector<std::size_t> cell_start; // CSR over members
        std::vector<std::uint32_t> members;  // point ids sorted by (cell, angle)
    };
    std::vector<Band> bands;
    std::vector<std::uint32_t> band_of;

    BandGrid(const PointCache& cache, double R) {
        const auto count = static_cast<std::size_t>(std::max(1.0, std::ceil(R)));
        bands.resize(count);
        const std::size_t n = cache.radius.size();
        band_of.resize(n);
        std::vector<std::vector<std::uint32_t>> raw(count);
        for (std::size_t v = 0; v < n; ++v) {
            auto b = static_cast<std::size_t>(std::floor(cache.radius[v]));
            b = std::min(b, count - 1);
            band_of[v] = static_cast<std::uint32_t>(b);
            raw[b].push_back(static_cast<std::uint32_t>(v));
        }
        for (std::size_t b = 0; b < count; ++b) {
            Band& band = bands[b];
            band.inner = static_cast<double>(b);
            const double theta = max_angle_theta(band.inner, band.inner, R);
            const double cells = theta > 0.0 ? std::floor(kTwoPi / theta) : 1.0;
            // more cells than members only costs empty scans
            const double cap = static_cast<double>(std::max<std::size_t>(1, raw[b].size()));
            band.cells = static_cast<std::size_t>(std::clamp(cells, 1.0, cap));
            band.cell_width = kTwoPi / static_cast<double>(band.cells);
            auto cell_of = [&](std::uint32_t v) {
                return std::min(band.cells - 1, static_cast<std::size_t>(cache.angle[v] / band.cell_width));
            };
            std::sort(raw[b].begin(), raw[b].end(), [&](std::uint32_t x, std::uint32_t y) {
                const auto cx = cell_of(x), cy = cell_of(y);
                if (cx != cy) return cx < cy;
                if (cache.angle[x] != cache.angle[y]) return cache.angle[x] < cache.angle[y];
                return x < y;
            });
            band.cell_start.assign(band.cells + 1, 0);
            for (auto v : raw[b]) ++band.cell_start[cell_of(v) + 1];
            for (std::size_t c = 0; c < band.cells; ++c) band.cell_start[c + 1] += band.cell_start[c];
            band.members = std::move(raw[b]);
        }
    }
};

template <typename Emit>
void accelerated_pairs(const PointCache& cache, double R, Emit&& emit) {
    const double cosh_R = std::cosh(R);
    const BandGrid grid(cache, R);
    const std::size_t band_count = grid.bands.size();

    // Angular search radius per band pair, widened slightly so rounding in
    // theta never prunes a true edge. The exact predicate decides.
    std::vector<double> reach(band_count * band_count);
    for (std::size_t i = 0; i < band_count; ++i) {
        for (std::size_t j = 0; j < band_count; ++j) {
            const double theta = max_angle_theta(grid.bands[i].inner, grid.bands[j].inner, R);
            reach[i * band_count + j] = theta * (1.0 + 1e-9) + 1e-12;
        }
    }

    for (std::size_t bi = 0; bi < band_count; ++bi) {
        for (std::uint32_t u : grid.bands[bi].members) {
            const double phi = cache.angle[u];
            for (std::size_t bj = bi; bj < band_count; ++bj) {
                const auto& band = grid.bands[bj];
                if (band.members.empty()) continue;
                const double delta = reach[bi * band_count + bj];
                const bool same_band = bj == bi;
                auto check = [&](std::uint32_t v) {
                    if (same_band && v <= u) return;
                    if (angular_distance(phi, cache.angle[v]) > delta) return;
                    if (cache.connected(u, v, cosh_R)) emit(u, v);
                };
                if (delta >= kPi) {
                    for (auto v : band.members) check(v);
                    continue;
                }
                const auto first = static_cast<long long>(std::floor((phi - delta) / band.cell_width));
                const auto last = static_cast<long long>(std::floor((phi + delta) / band.cell_width));
                const auto cells = static_cast<long long>(band.cells);
                if (last - first + 1 >= cells) {
                    for (auto v : band.members) check(v);
                    continue;
                }
                for (long long c = first; c <= last; ++c) {
                    const auto idx = static_cast<std::size_t>(((c % cells) + cells) % cells);
                    for (std::size_t k = band.cell_start[idx]; k < band.cell_start[idx + 1]; ++k) {
                        check(band.members[k]);
                    }
                }
            }
        }
    }
}

} // namespace

std::string_view to_string(SamplingMode mode) noexcept {
    return mode == SamplingMode::FixedN ? "fixed" : "poisson";
}

std::string_view to_string(EdgeBuilder builder) noexcept {
    return builder == EdgeBuilder::Naive ? "naive" : "accelerated";
}

std::vector<PolarPoint> sample_points(const GeneratorConfig& config) {
    std::mt19937_64 rng(config.seed);
    std::uint64_t count = config.params.n();
    if (config.mode == SamplingMode::PoissonN) {
        std::poisson_distribution<std::uint64_t> poisson(static_cast<double>(config.params.n()));
        count = poisson(rng);
    }
    std::vector<PolarPoint> points;
    points.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        const double phi = kTwoPi * uniform01(rng);
        const double r = radial_quantile(uniform01(rng), config.params);
        points.emplace_back(r, phi);
    }
    return points;
}

Graph build_edges(std::span<const PolarPoint> points, double R, EdgeBuilder builder) {
    if (!(R > 0.0)) throw DomainError("build_edges: R must be positive");
    const PointCache cache(points);
    std::vector<Edge> edges;
    auto emit = [&](std::size_t u, std::size_t v) {
        edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    };
    if (builder == EdgeBuilder::Naive) {
        naive_pairs(cache, R, emit);
    } else {
        accelerated_pairs(cache, R, emit);
    }
    return Graph::from_edges(points.size(), edges, std::vector<PolarPoint>(points.begin(), points.end()));
}

std::uint64_t count_edges(std::span<const PolarPoint> points, double R) {
    if (!(R > 0.0)) throw DomainError("count_edges: R must be positive");
    const PointCache cache(points);
    std::uint64_t m = 0;
    accelerated_pairs(cache, R, [&](std::size_t, std::size_t) { ++m; });
    return m;
}

Graph generate(const GeneratorConfig& config) {
    return build_edges(sample_points(config), config.params.radius(), config.edge_builder);
}

double mean_average_degree(const ModelParams& params, int seeds, std::uint64_t first_seed) {
    if (seeds < 1) throw DomainError("mean_average_degree: seeds must be >= 1");
    double total = 0.0;
    for (int s = 0; s < seeds; ++s) {
        GeneratorConfig config{params, first_seed + static_cast<std::uint64_t>(s), SamplingMode::FixedN,
                               EdgeBuilder::Accelerated};
        const auto points = sample_points(config);
        const auto m = count_edges(points, params.radius());
        total += points.empty() ? 0.0 : 2.0 * static_cast<double>(m) / static_cast<double>(points.size());
    }
    return total / seeds;
}

double calibrate_c(double target_avg_degree, std::uint64_t n, double alpha, int seeds,
                   const CalibrationOptions& options) {
    if (!(target_avg_degree >= 1.0)) throw DomainError("calibrate_C: target average degree must be >= 1");
    if (seeds < 1) throw DomainError("calibrate_C: seeds must be >= 1");

    // Average degree decreases as C grows: a larger disk spreads the same
    // number of points further apart while the threshold grows only linearly.
    double lo = options.lower;
    double hi = options.upper;
    double best_c = 0.5 * (lo + hi);
    double best_err = std::numeric_limits<double>::infinity();
    double seen_min = std::numeric_limits<double>::infinity();
    double seen_max = 0.0;
    for (int step = 0; step < options.max_steps; ++step) {
        const double mid = 0.5 * (lo + hi);
        if (!(2.0 * std::log(static_cast<double>(n)) + mid > 0.0)) {
            // no disk at all; treat as denser than any target
            lo = mid;
            continue;
        }
        const ModelParams params(n, alpha, mid);
        const double degree = mean_average_degree(params, seeds, options.first_seed);
        seen_min = std::min(seen_min, degree);
        seen_max = std::max(seen_max, degree);
        const double err = std::abs(degree - target_avg_degree) / target_avg_degree;
        if (err < best_err) {
            best_err = err;
            best_c = mid;
        }
        if (err <= options.tolerance) break;
        if (degree > target_avg_degree) lo = mid; else hi = mid;
    }
    if (best_err > options.acceptance) {
        std::ostringstream os;
        os << "calibrate_C: no C in [" << options.lower << ", " << options.upper << "] reaches average degree "
           << target_avg_degree << " within " << options.acceptance * 100 << "%; achieved degrees ranged over ["
           << seen_min << ", " << seen_max << "]";
        throw CalibrationError(os.str());
    }
    return best_c;
}

} // namespace hrgvc
