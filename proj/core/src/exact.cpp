#include <algorithm>
#include <stdexcept>

#include "bit_solver.hpp"
#include "hrgvc/errors.hpp"
#include "hrgvc/vertex_cover.hpp"

namespace hrgvc {

namespace detail {

BitSolver::BitSolver(const Graph& g, std::span<const Vertex> vertices)
    : ids_(vertices.begin(), vertices.end()), k_(vertices.size()), words_((vertices.size() + 63) / 64) {
    if (!std::is_sorted(ids_.begin(), ids_.end())) std::sort(ids_.begin(), ids_.end());
    adj_.assign(k_ * words_, 0);
    for (std::uint32_t i = 0; i < k_; ++i) {
        for (Vertex x : g.neighbors(ids_[i])) {
            auto it = std::lower_bound(ids_.begin(), ids_.end(), x);
            if (it == ids_.end() || *it != x) continue;
            const auto j = static_cast<std::uint32_t>(it - ids_.begin());
            adj_[std::size_t{i} * words_ + (j >> 6)] |= std::uint64_t{1} << (j & 63);
        }
    }
}

BitSolver::Set BitSolver::full() const {
    Set s(words_, ~std::uint64_t{0});
    if (k_ % 64 != 0 && words_ > 0) s.back() = (std::uint64_t{1} << (k_ % 64)) - 1;
    return s;
}

bool BitSolver::empty(const Set& s) const noexcept {
    for (auto w : s) {
        if (w) return false;
    }
    return true;
}

std::size_t BitSolver::degree(const Set& alive, std::uint32_t v) const noexcept {
    const auto* r = row(v);
    std::size_t d = 0;
    for (std::size_t w = 0; w < words_; ++w) d += static_cast<std::size_t>(std::popcount(r[w] & alive[w]));
    return d;
}

bool BitSolver::dominated_by(const Set& alive, std::uint32_t v, std::uint32_t u) const noexcept {
    const auto* rv = row(v);
    const auto* ru = row(u);
    for (std::size_t w = 0; w < words_; ++w) {
        std::uint64_t rest = rv[w] & alive[w] & ~ru[w];
        if (w == (u >> 6)) rest &= ~(std::uint64_t{1} << (u & 63));
        if (rest) return false;
    }
    return true;
}

// Exhaustive degree-0 and dominance reductions; degree-1 is the special
// case N(v) \ {u} empty. With equal closed neighborhoods the smaller index
// is taken, which makes an isolated edge contribute its smaller endpoint.
void BitSolver::reduce(Set& alive, Cover& taken) const {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t w = 0; w < words_; ++w) {
            std::uint64_t bits = alive[w];
            while (bits) {
                const auto v = static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
                bits &= bits - 1;
                if (!test(alive, v)) continue;
                const std::size_t dv = degree(alive, v);
                if (dv == 0) {
                    reset(alive, v);
                    changed = true;
                    continue;
                }
                std::optional<std::uint32_t> pick;
                const auto* rv = row(v);
                for (std::size_t x = 0; x < words_ && !pick; ++x) {
                    std::uint64_t nb = rv[x] & alive[x];
                    while (nb) {
                        const auto u = static_cast<std::uint32_t>(x * 64 + static_cast<std::size_t>(std::countr_zero(nb)));
                        nb &= nb - 1;
                        if (degree(alive, u) < dv) continue;
                        if (!dominated_by(alive, v, u)) continue;
                        pick = dominated_by(alive, u, v) ? std::min(u, v) : u;
                        break;
                    }
                }
                if (!pick) continue;
                taken.push_back(*pick);
                reset(alive, *pick);
                changed = true;
            }
        }
    }
}

std::vector<BitSolver::Set> BitSolver::components(const Set& alive) const {
    std::vector<Set> out;
    Set left = alive;
    Set frontier(words_, 0);
    Set next(words_, 0);
    for (std::size_t w = 0; w < words_; ++w) {
        while (left[w]) {
            const auto s = static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(std::countr_zero(left[w])));
            Set comp(words_, 0);
            std::fill(frontier.begin(), frontier.end(), 0);
            set(comp, s);
            set(frontier, s);
            reset(left, s);
            while (!empty(frontier)) {
                std::fill(next.begin(), next.end(), 0);
                for_each(frontier, [&](std::uint32_t v) {
                    const auto* r = row(v);
                    for (std::size_t x = 0; x < words_; ++x) next[x] |= r[x];
                });
                for (std::size_t x = 0; x < words_; ++x) {
                    next[x] &= left[x];
                    left[x] &= ~next[x];
                    comp[x] |= next[x];
                }
                frontier.swap(next);
            }
            out.push_back(std::move(comp));
        }
    }
    return out;
}

std::size_t BitSolver::matching(const Set& alive) const {
    Set free = alive;
    std::size_t size = 0;
    for_each(alive, [&](std::uint32_t v) {
        if (!test(free, v)) return;
        reset(free, v);
        const auto* r = row(v);
        for (std::size_t x = 0; x < words_; ++x) {
            const std::uint64_t cand = r[x] & free[x];
            if (cand) {
                reset(free, static_cast<std::uint32_t>(x * 64 + static_cast<std::size_t>(std::countr_zero(cand))));
                ++size;
                return;
            }
        }
    });
    return size;
}

BitSolver::Cover BitSolver::greedy_cover(const Set& alive) const {
    Set left = alive;
    std::vector<std::size_t> deg(k_, 0);
    for_each(left, [&](std::uint32_t v) { deg[v] = degree(left, v); });
    Cover cover;
    while (true) {
        std::size_t best_deg = 0;
        std::uint32_t best = 0;
        for_each(left, [&](std::uint32_t v) {
            if (deg[v] > best_deg) {
                best_deg = deg[v];
                best = v;
            }
        });
        if (best_deg == 0) break;
        cover.push_back(best);
        reset(left, best);
        const auto* r = row(best);
        for (std::size_t x = 0; x < words_; ++x) {
            std::uint64_t nb = r[x] & left[x];
            while (nb) {
                --deg[x * 64 + static_cast<std::size_t>(std::countr_zero(nb))];
                nb &= nb - 1;
            }
        }
    }
    return cover;
}

void BitSolver::tick() {
    ++nodes_;
    if (deadline_ && (nodes_ & ((std::uint64_t{1} << 14) - 1)) == 0 && Clock::now() > *deadline_) {
        throw SearchTimeout{};
    }
}

BitSolver::Cover BitSolver::component_optimal(const Set& alive) {
    Cover best = greedy_cover(alive);
    Cover partial;
    search(alive, partial, best);
    return best;
}

void BitSolver::search(const Set& alive_in, Cover& partial, Cover& best) {
    tick();
    const std::size_t mark = partial.size();
    Set alive = alive_in;
    reduce(alive, partial);
    const auto done = [&] { partial.resize(mark); };

    if (partial.size() >= best.size()) return done();
    if (empty(alive)) {
        best = partial;
        return done();
    }
    if (partial.size() + matching(alive) >= best.size()) return done();

    auto comps = components(alive);
    if (comps.size() > 1) {
        // independent parts: solve each optimally and add up
        Cover total = partial;
        for (const auto& comp : comps) {
            const Cover sub = component_optimal(comp);
            total.insert(total.end(), sub.begin(), sub.end());
            if (total.size() >= best.size()) return done();
        }
        best = std::move(total);
        return done();
    }

    std::uint32_t pivot = 0;
    std::size_t pivot_deg = 0;
    for_each(alive, [&](std::uint32_t v) {
        const std::size_t d = degree(alive, v);
        if (d > pivot_deg) {
            pivot_deg = d;
            pivot = v;
        }
    });

    // include the pivot
    {
        Set next = alive;
        reset(next, pivot);
        partial.push_back(pivot);
        search(next, partial, best);
        partial.pop_back();
    }
    // exclude it: its whole neighborhood joins the cover
    {
        Set next = alive;
        const std::size_t before = partial.size();
        const auto* r = row(pivot);
        for (std::size_t x = 0; x < words_; ++x) {
            std::uint64_t nb = r[x] & alive[x];
            while (nb) {
                const auto u = static_cast<std::uint32_t>(x * 64 + static_cast<std::size_t>(std::countr_zero(nb)));
                nb &= nb - 1;
                partial.push_back(u);
                reset(next, u);
            }
        }
        reset(next, pivot);
        if (partial.size() < best.size()) search(next, partial, best);
        partial.resize(before);
    }
    done();
}

std::vector<Vertex> BitSolver::to_global(const Cover& local) const {
    std::vector<Vertex> out;
    out.reserve(local.size());
    for (auto v : local) out.push_back(ids_[v]);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Vertex> BitSolver::solve(std::optional<Clock::time_point> deadline) {
    deadline_ = deadline;
    const Set all = full();
    top_best_ = greedy_cover(all);
    Cover partial;
    search(all, partial, top_best_);
    return to_global(top_best_);
}

std::vector<Vertex> BitSolver::incumbent() const { return to_global(top_best_); }

std::size_t BitSolver::matching_bound() const { return matching(full()); }

std::vector<Vertex> BitSolver::greedy() const { return to_global(greedy_cover(full())); }

} // namespace detail

// --- public entry points --------------------------------------------------

std::vector<Vertex> exact_cover_small(const Graph& g, std::span<const Vertex> component, std::size_t cap) {
    if (component.size() > cap) {
        throw ContractError("exact_cover_small: component of " + std::to_string(component.size())
                            + " vertices exceeds the cap of " + std::to_string(cap));
    }
    detail::BitSolver solver(g, component);
    return solver.solve();
}

std::size_t matching_lower_bound(const Graph& g, const AliveMask& mask) {
    std::vector<unsigned char> matched(g.vertex_count(), 0);
    std::size_t size = 0;
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        if (!mask.alive(u) || matched[u]) continue;
        for (Vertex v : g.neighbors(u)) {
            if (v > u && mask.alive(v) && !matched[v]) {
                matched[u] = matched[v] = 1;
                ++size;
                break;
            }
        }
    }
    return size;
}

namespace {

// Every alive w in N(v) other than u is adjacent to u.
bool sparse_dominated_by(const Graph& g, const AliveMask& mask, Vertex v, Vertex u) {
    for (Vertex w : g.neighbors(v)) {
        if (w == u || !mask.alive(w)) continue;
        if (!g.has_edge(u, w)) return false;
    }
    return true;
}

// Vertex to take because it dominates v, if any (same rule as the bitset
// reducer).
std::optional<Vertex> dominator_of(const Graph& g, const AliveMask& mask, Vertex v, std::size_t dv,
                                   const std::vector<std::size_t>& deg) {
    for (Vertex u : g.neighbors(v)) {
        if (!mask.alive(u) || deg[u] < dv) continue;
        if (!sparse_dominated_by(g, mask, v, u)) continue;
        return sparse_dominated_by(g, mask, u, v) ? std::min(u, v) : u;
    }
    return std::nullopt;
}

} // namespace

std::optional<Vertex> find_dominating_vertex(const Graph& g, const AliveMask& mask) {
    std::vector<std::size_t> deg(g.vertex_count(), 0);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (mask.alive(v)) deg[v] = residual_degree(g, mask, v);
    }
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (!mask.alive(v) || deg[v] == 0) continue;
        if (auto u = dominator_of(g, mask, v, deg[v], deg)) return u;
    }
    return std::nullopt;
}

namespace {

constexpr std::size_t kDenseKernelLimit = 30000;

} // namespace

ExactResult exact_cover(const Graph& g, std::chrono::milliseconds time_limit) {
    using Clock = std::chrono::steady_clock;
    const auto start = Clock::now();
    const auto deadline = start + time_limit;

    AliveMask mask(g.vertex_count());
    std::vector<std::size_t> deg(g.vertex_count(), 0);
    for (Vertex v = 0; v < g.vertex_count(); ++v) deg[v] = g.degree(v);

    std::vector<Vertex> forced;
    std::vector<Vertex> work;
    std::vector<unsigned char> queued(g.vertex_count(), 1);
    work.reserve(g.vertex_count());
    for (Vertex v = g.vertex_count(); v-- > 0;) work.push_back(v); // pop smallest first

    const auto kill = [&](Vertex x) {
        mask.kill(x);
        for (Vertex y : g.neighbors(x)) {
            if (!mask.alive(y)) continue;
            --deg[y];
            if (!queued[y]) {
                queued[y] = 1;
                work.push_back(y);
            }
        }
    };
    while (!work.empty()) {
        const Vertex v = work.back();
        work.pop_back();
        queued[v] = 0;
        if (!mask.alive(v)) continue;
        if (deg[v] == 0) {
            mask.kill(v);
            continue;
        }
        if (auto u = dominator_of(g, mask, v, deg[v], deg)) {
            forced.push_back(*u);
            kill(*u);
            if (*u != v && mask.alive(v) && !queued[v]) {
                queued[v] = 1;
                work.push_back(v);
            }
        }
    }

    ExactResult result;
    result.cover = forced;
    result.lower_bound = forced.size();
    result.upper_bound = forced.size();
    bool timed_out = false;
    for (const auto& comp : connected_components(g, mask)) {
        if (comp.size() < 2) continue;
        if (comp.size() > kDenseKernelLimit || timed_out) {
            const Graph sub = g.induced(comp);
            const auto ub = standard_greedy(sub);
            result.lower_bound += matching_lower_bound(sub, AliveMask(sub.vertex_count()));
            result.upper_bound += ub.cover.size();
            for (Vertex v : ub.cover) result.cover.push_back(comp[v]);
            timed_out = true;
            continue;
        }
        detail::BitSolver solver(g, comp);
        try {
            const auto cover = solver.solve(deadline);
            result.lower_bound += cover.size();
            result.upper_bound += cover.size();
            result.cover.insert(result.cover.end(), cover.begin(), cover.end());
        } catch (const detail::SearchTimeout&) {
            timed_out = true;
            const auto cover = solver.incumbent();
            result.lower_bound += solver.matching_bound();
            result.upper_bound += cover.size();
            result.cover.insert(result.cover.end(), cover.begin(), cover.end());
        }
    }
    std::sort(result.cover.begin(), result.cover.end());
    result.status = timed_out ? ExactStatus::LowerBoundOnly : ExactStatus::Optimal;
    result.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
    return result;
}

Ratio approximation_ratio(std::size_t cover_size, const ExactResult& opt) {
    if (cover_size < opt.lower_bound) {
        throw std::logic_error("approximation_ratio: cover of size " + std::to_string(cover_size)
                               + " is below the lower bound " + std::to_string(opt.lower_bound)
                               + " (solver inconsistency)");
    }
    if (opt.status == ExactStatus::Optimal) {
        if (opt.upper_bound == 0) return {1.0, false};
        return {static_cast<double>(cover_size) / static_cast<double>(opt.upper_bound), false};
    }
    if (opt.lower_bound == 0) return {1.0, true};
    return {static_cast<double>(cover_size) / static_cast<double>(opt.lower_bound), true};
}

} // namespace hrgvc
