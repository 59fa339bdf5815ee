#pragma once

#include <bit>
#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hrgvc/graph.hpp"

namespace hrgvc::detail {

struct SearchTimeout {};

/// Branch-and-reduce minimum vertex cover on a dense bitset copy of an
/// induced subgraph. Local vertex i is the i-th smallest global id, so every
/// "smallest local index" tie-break is a smallest-global-id tie-break.
class BitSolver {
public:
    using Clock = std::chrono::steady_clock;

    BitSolver(const Graph& g, std::span<const Vertex> vertices);

    std::size_t size() const noexcept { return k_; }

    /// Optimal cover in global ids. Throws SearchTimeout past the deadline;
    /// incumbent() then holds the best cover found so far.
    std::vector<Vertex> solve(std::optional<Clock::time_point> deadline = std::nullopt);

    std::vector<Vertex> incumbent() const;
    std::size_t matching_bound() const;
    std::vector<Vertex> greedy() const;

    std::uint64_t nodes() const noexcept { return nodes_; }

private:
    using Set = std::vector<std::uint64_t>;
    using Cover = std::vector<std::uint32_t>;

    const std::uint64_t* row(std::uint32_t v) const noexcept { return adj_.data() + std::size_t{v} * words_; }

    static bool test(const Set& s, std::uint32_t v) noexcept { return (s[v >> 6] >> (v & 63)) & 1u; }
    static void reset(Set& s, std::uint32_t v) noexcept { s[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
    static void set(Set& s, std::uint32_t v) noexcept { s[v >> 6] |= std::uint64_t{1} << (v & 63); }
    bool empty(const Set& s) const noexcept;
    std::size_t degree(const Set& alive, std::uint32_t v) const noexcept;
    /// N(v) \ {u} within alive is contained in N(u).
    bool dominated_by(const Set& alive, std::uint32_t v, std::uint32_t u) const noexcept;

    template <typename F>
    void for_each(const Set& s, F&& f) const {
        for (std::size_t w = 0; w < words_; ++w) {
            std::uint64_t bits = s[w];
            while (bits) {
                const auto b = static_cast<std::uint32_t>(std::countr_zero(bits));
                bits &= bits - 1;
                f(static_cast<std::uint32_t>(w * 64 + b));
            }
        }
    }

    void reduce(Set& alive, Cover& taken) const;
    std::vector<Set> components(const Set& alive) const;
    std::size_t matching(const Set& alive) const;
    Cover greedy_cover(const Set& alive) const;
    Cover component_optimal(const Set& alive);
    void search(const Set& alive, Cover& partial, Cover& best);
    void tick();

    Set full() const;
    std::vector<Vertex> to_global(const Cover& local) const;

    std::vector<Vertex> ids_;
    std::size_t k_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> adj_;
    std::optional<Clock::time_point> deadline_;
    std::uint64_t nodes_ = 0;
    Cover top_best_;
};

} // namespace hrgvc::detail
