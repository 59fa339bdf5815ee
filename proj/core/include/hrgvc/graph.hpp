#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hrgvc/geometry.hpp"

namespace hrgvc {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Immutable simple undirected graph in compressed adjacency form.
/// Neighbor lists are sorted; coordinates are optional.
class Graph {
public:
    Graph() = default;

    /// Normalizes the edge list: self-loops and duplicates are dropped and
    /// both directions are stored.
    static Graph from_edges(std::size_t vertex_count, std::span<const Edge> edges,
                            std::optional<std::vector<PolarPoint>> coordinates = std::nullopt);

    std::size_t vertex_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t edge_count() const noexcept { return neighbors_.size() / 2; }

    std::span<const Vertex> neighbors(Vertex v) const noexcept {
        return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
    }
    std::size_t degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
    bool has_edge(Vertex u, Vertex v) const noexcept;

    bool has_coordinates() const noexcept { return coordinates_.has_value(); }
    std::span<const PolarPoint> coordinates() const;

    /// Edges with u < v, in lexicographic order.
    std::vector<Edge> edges() const;

    /// Subgraph induced by `vertices` (must be sorted). Local id i maps to
    /// vertices[i]; coordinates are carried over when present.
    Graph induced(std::span<const Vertex> vertices) const;

private:
    std::vector<std::size_t> offsets_;
    std::vector<Vertex> neighbors_;
    std::optional<std::vector<PolarPoint>> coordinates_;
};

/// Residual-graph membership over an immutable Graph.
class AliveMask {
public:
    AliveMask() = default;
    explicit AliveMask(std::size_t n, bool alive = true) : alive_(n, alive ? 1 : 0), count_(alive ? n : 0) {}

    bool alive(Vertex v) const noexcept { return alive_[v] != 0; }
    std::size_t alive_count() const noexcept { return count_; }
    std::size_t size() const noexcept { return alive_.size(); }

    void kill(Vertex v) noexcept {
        if (alive_[v]) { alive_[v] = 0; --count_; }
    }
    void revive(Vertex v) noexcept {
        if (!alive_[v]) { alive_[v] = 1; ++count_; }
    }

private:
    std::vector<unsigned char> alive_;
    std::size_t count_ = 0;
};

/// Residual degree of v: number of alive neighbors.
std::size_t residual_degree(const Graph& g, const AliveMask& mask, Vertex v) noexcept;

/// Max-degree bucket queue with lazy invalidation. Ties go to the smallest
/// vertex id. Degrees only ever decrease, so every vertex enters each bucket
/// at most once.
class DegreeQueue {
public:
    DegreeQueue(const Graph& g, const AliveMask& mask);

    std::size_t degree(Vertex v) const noexcept { return degree_[v]; }

    /// Alive vertex of maximum residual degree, provided that degree is at
    /// least `min_degree`. Does not remove it.
    std::optional<Vertex> peek_max(const AliveMask& mask, std::size_t min_degree = 1);

    /// Must be called after `v` was killed in `mask`: lowers the degree of
    /// its alive neighbors.
    void on_removed(const Graph& g, const AliveMask& mask, Vertex v);

private:
    void push(Vertex v, std::size_t d);

    std::vector<std::size_t> degree_;
    std::vector<std::vector<Vertex>> buckets_; // min-heaps on vertex id
    std::size_t top_ = 0;
};

/// Bounded breadth-first probe over alive vertices. Keeps its visited marks
/// between calls and clears only what it touched.
class ComponentProbe {
public:
    explicit ComponentProbe(std::size_t n) : visited_(n, 0) {}

    /// The connected component of `start` (sorted), or nullopt once more than
    /// `limit` vertices have been reached.
    std::optional<std::vector<Vertex>> explore(const Graph& g, const AliveMask& mask, Vertex start,
                                               std::size_t limit);

    /// Vertices touched by the last call, including the overflow vertex.
    std::size_t last_visited() const noexcept { return last_visited_; }

private:
    std::vector<unsigned char> visited_;
    std::vector<Vertex> queue_;
    std::size_t last_visited_ = 0;
};

std::optional<std::vector<Vertex>> bounded_component(const Graph& g, const AliveMask& mask, Vertex start,
                                                     std::size_t limit);

bool is_vertex_cover(const Graph& g, std::span<const Vertex> cover);

/// Components of the alive subgraph, each sorted, ordered by smallest id.
std::vector<std::vector<Vertex>> connected_components(const Graph& g, const AliveMask& mask);

// --- text formats -------------------------------------------------------

struct EdgeListData {
    Graph graph;
    /// original_ids[v] is the id the input file used for dense vertex v.
    std::vector<std::int64_t> original_ids;
};

/// Reads a whitespace separated edge list. Lines starting with '#' or '%'
/// are comments. Ids are remapped to 0.. in first-seen order, unless the
/// file carries the header written by write_edge_list, in which case ids are
/// already dense and kept verbatim (isolated vertices included).
EdgeListData read_edge_list(std::istream& in);
Graph load_edge_list(std::istream& in);

void write_edge_list(std::ostream& out, const Graph& g);

struct CoordinateFile {
    std::vector<PolarPoint> points;
    /// "key: value" pairs from the comment header, in file order.
    std::vector<std::pair<std::string, std::string>> metadata;

    std::optional<std::string> find(const std::string& key) const;
};

/// One "id radius angle" line per vertex; ids must be exactly 0..N-1.
CoordinateFile read_coordinates(std::istream& in);

/// Writes metadata as "# key: value" lines, then one line per vertex with
/// round-trip precision.
void write_coordinates(std::ostream& out, std::span<const PolarPoint> points,
                       std::span<const std::pair<std::string, std::string>> metadata = {});

/// Attaches coordinates to a graph with matching vertex count.
Graph with_coordinates(const Graph& g, std::vector<PolarPoint> points);

} // namespace hrgvc
