#include <doctest.h>

#include <cmath>
#include <random>

#include "hrgvc/diagnostics.hpp"
#include "hrgvc/errors.hpp"
#include "hrgvc/generator.hpp"

using namespace hrgvc;

namespace {

SectorOccupancy occupancy(std::vector<std::size_t> counts, double w, std::size_t limit = 2) {
    SectorOccupancy occ;
    occ.constants.n_sectors = counts.size();
    occ.constants.w = w;
    occ.constants.component_limit = limit;
    for (auto c : counts) occ.outer_vertices += c;
    occ.counts = std::move(counts);
    return occ;
}

// Sum of lengths of maximal circular success runs of length >= w, averaged
// over all 2^n outcomes.
double enumerate_run_mass(std::size_t n, double p, std::size_t w) {
    double total = 0.0;
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
        const auto ones = static_cast<std::size_t>(__builtin_popcount(s));
        const double prob = std::pow(p, static_cast<double>(ones)) * std::pow(1.0 - p, static_cast<double>(n - ones));
        std::size_t mass = 0;
        if (ones == n) {
            mass = n >= w ? n : 0;
        } else {
            std::size_t zero = 0;
            while ((s >> zero) & 1u) ++zero;
            std::size_t len = 0;
            for (std::size_t k = 1; k <= n; ++k) {
                const std::size_t i = (zero + k) % n;
                if ((s >> i) & 1u) {
                    ++len;
                } else {
                    if (len >= w) mass += len;
                    len = 0;
                }
            }
        }
        total += prob * static_cast<double>(mass);
    }
    return total;
}

} // namespace

TEST_CASE("sector assignment clamps to the last sector") {
    AnalysisConstants k;
    k.sector_width = 1.0;
    k.n_sectors = 6; // 6 * 1.0 < 2 pi
    CHECK(sector_of(0.0, k) == 0);
    CHECK(sector_of(2.5, k) == 2);
    CHECK(sector_of(6.2, k) == 5);
}

TEST_CASE("discretize on hand placed points") {
    const ModelParams p(10000, 0.75, 2.0);
    const auto k = analysis_constants(p, 1.0);
    std::vector<PolarPoint> inner{{k.rho * 0.5, 0.0}, {k.rho * 0.9, 3.0}};
    auto occ = discretize(inner, k);
    CHECK(occ.inner_vertices == 2);
    CHECK(occ.outer_vertices == 0);
    for (auto c : occ.counts) CHECK(c == 0);

    std::vector<PolarPoint> single{{k.rho + 0.1, 0.0}};
    occ = discretize(single, k);
    CHECK(occ.counts[0] == 1);
    CHECK(occ.outer_vertices == 1);
}

TEST_CASE("classify runs") {
    CHECK(classify_runs(occupancy({0, 0, 0, 0}, 1.0)).runs.empty());

    const auto r = classify_runs(occupancy({1, 1, 0, 1, 0}, 1.0)).runs;
    REQUIRE(r.size() == 2);
    CHECK(r[0].start == 0);
    CHECK(r[0].length == 2);
    CHECK(r[0].wide);
    CHECK(r[1].start == 3);
    CHECK(r[1].length == 1);
    CHECK_FALSE(r[1].wide);

    const auto full = classify_runs(occupancy({2, 1, 1, 3}, 2.0)).runs;
    REQUIRE(full.size() == 1);
    CHECK(full[0].length == 4);
    CHECK(full[0].vertex_count == 7);
    CHECK(full[0].wide);

    // a run wrapping over the end of the circle
    const auto wrap = classify_runs(occupancy({4, 0, 0, 1, 1}, 3.0, 5)).runs;
    REQUIRE(wrap.size() == 1);
    CHECK(wrap[0].start == 3);
    CHECK(wrap[0].length == 3);
    CHECK(wrap[0].vertex_count == 6);
    CHECK_FALSE(wrap[0].wide);
    CHECK(wrap[0].large);
}

TEST_CASE("classify runs is rotation equivariant") {
    std::mt19937_64 rng(2);
    std::bernoulli_distribution occupied(0.6);
    std::uniform_int_distribution<std::size_t> count(1, 4);
    for (int t = 0; t < 100; ++t) {
        std::vector<std::size_t> counts(17);
        for (auto& c : counts) c = occupied(rng) ? count(rng) : 0;
        const auto base = classify_runs(occupancy(counts, 2.5, 5)).runs;
        for (std::size_t k = 1; k < counts.size(); ++k) {
            std::vector<std::size_t> rotated(counts.size());
            for (std::size_t i = 0; i < counts.size(); ++i) rotated[(i + k) % counts.size()] = counts[i];
            const auto rot = classify_runs(occupancy(rotated, 2.5, 5)).runs;
            REQUIRE(rot.size() == base.size());
            for (const auto& run : base) {
                const auto start = (run.start + k) % counts.size();
                auto it = std::find_if(rot.begin(), rot.end(), [&](const Run& r) { return r.start == start; });
                REQUIRE(it != rot.end());
                CHECK(it->length == run.length);
                CHECK(it->vertex_count == run.vertex_count);
                CHECK(it->wide == run.wide);
                CHECK(it->large == run.large);
            }
        }
    }
}

TEST_CASE("expected run mass") {
    CHECK(expected_run_mass(10, 1.0, 3) == doctest::Approx(10.0));
    CHECK(expected_run_mass(10, 0.0, 3) == 0.0);
    CHECK(expected_run_mass(5, 0.5, 2) == doctest::Approx(enumerate_run_mass(5, 0.5, 2)).epsilon(1e-12));
    CHECK_THROWS(expected_run_mass(5, 1.5, 2));
    CHECK_THROWS(expected_run_mass(5, 0.5, 0.5));
    CHECK_THROWS(expected_run_mass(5, 0.5, 6));
}

TEST_CASE("expected run mass equals circular enumeration") {
    for (std::size_t n = 1; n <= 12; ++n) {
        for (std::size_t w = 1; w <= n; ++w) {
            for (double p : {0.2, 0.5, 0.8}) {
                CAPTURE(n);
                CAPTURE(w);
                CAPTURE(p);
                CHECK(std::abs(expected_run_mass(n, p, static_cast<double>(w)) - enumerate_run_mass(n, p, w)) < 1e-12);
            }
        }
    }
}

TEST_CASE("occupancy bounds") {
    for (double g : {0.1, 0.5, 1.0, 3.0}) {
        AnalysisConstants k;
        k.gamma = g;
        auto b = occupancy_probability_bounds(k);
        CHECK(b.lower < b.upper);
        CHECK(b.lower > 0.0);
        CHECK(b.upper < 1.0);
    }
    AnalysisConstants big;
    big.gamma = 200.0;
    auto b = occupancy_probability_bounds(big);
    CHECK(b.lower == doctest::Approx(1.0));
    CHECK(b.upper == doctest::Approx(1.0));
}

TEST_CASE("region counts on a generated graph") {
    const ModelParams p(10000, 0.75, 2.0);
    const auto g = generate({p, 5});
    const auto occ = discretize(g, p, 1.0);
    std::size_t sum = 0;
    for (auto c : occ.counts) sum += c;
    CHECK(sum == occ.outer_vertices);
    const auto rc = region_counts(g, p, 1.0);
    CHECK(rc.inner_disk + rc.n_outer == g.vertex_count());
    CHECK(sum == g.vertex_count() - rc.inner_disk);
    CHECK(rc.inner_disk + rc.narrow_run_vertices + rc.wide_run_vertices == g.vertex_count());
    CHECK(rc.wide_run_vertices + rc.large_narrow_vertices + rc.inner_disk <= g.vertex_count());
}

TEST_CASE("all inner vertices") {
    const ModelParams p(10000, 0.75, 2.0);
    const auto k = analysis_constants(p, 1.0);
    std::vector<PolarPoint> pts;
    for (int i = 0; i < 50; ++i) pts.emplace_back(k.rho * 0.5, 0.1 * i);
    const auto g = build_edges(pts, p.radius(), EdgeBuilder::Accelerated);
    const auto rc = region_counts(g, p, 1.0);
    CHECK(rc.inner_disk == 50);
    CHECK(rc.n_outer == 0);
    CHECK(rc.wide_run_vertices == 0);
    CHECK(rc.large_narrow_vertices == 0);
}

TEST_CASE("bounds report") {
    const ModelParams p(10000, 0.75, 2.0);
    const auto g = generate({p, 8});
    const auto r = bounds_report(g, p, 1.0);
    CHECK(r.outer_span_violations == 0);
    for (const auto& [name, value] : r.fields()) {
        CAPTURE(name);
        CHECK(std::isfinite(value));
        CHECK(value >= 0.0);
    }
    CHECK(r.inner_ratio > 0.01);
    CHECK(r.inner_ratio < 100.0);
    CHECK_THROWS_AS(bounds_report(g, p, 0.2), DomainError);
    CHECK_THROWS(bounds_report(Graph::from_edges(3, {}), p, 1.0));
}
