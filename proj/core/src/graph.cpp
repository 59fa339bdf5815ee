#include "hrgvc/graph.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <limits>
#include <ostream>
#include <unordered_map>

#include "hrgvc/errors.hpp"

namespace hrgvc {

Graph Graph::from_edges(std::size_t vertex_count, std::span<const Edge> edges,
                        std::optional<std::vector<PolarPoint>> coordinates) {
    if (vertex_count > std::numeric_limits<Vertex>::max()) throw ContractError("Graph: too many vertices");
    if (coordinates && coordinates->size() != vertex_count) {
        throw ContractError("Graph: coordinate count does not match vertex count");
    }
    Graph g;
    g.offsets_.assign(vertex_count + 1, 0);
    for (const auto& [u, v] : edges) {
        if (u >= vertex_count || v >= vertex_count) throw ContractError("Graph: edge endpoint out of range");
        if (u == v) continue;
        ++g.offsets_[u + 1];
        ++g.offsets_[v + 1];
    }
    for (std::size_t i = 0; i < vertex_count; ++i) g.offsets_[i + 1] += g.offsets_[i];
    std::vector<Vertex> adj(g.offsets_.back());
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& [u, v] : edges) {
        if (u == v) continue;
        adj[fill[u]++] = v;
        adj[fill[v]++] = u;
    }
    // sort and dedupe each list, then compact
    std::vector<std::size_t> offsets(vertex_count + 1, 0);
    std::size_t out = 0;
    for (std::size_t v = 0; v < vertex_count; ++v) {
        auto first = adj.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
        auto last = adj.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
        std::sort(first, last);
        last = std::unique(first, last);
        offsets[v] = out;
        for (auto it = first; it != last; ++it) adj[out++] = *it;
    }
    offsets[vertex_count] = out;
    adj.resize(out);
    adj.shrink_to_fit();
    g.offsets_ = std::move(offsets);
    g.neighbors_ = std::move(adj);
    g.coordinates_ = std::move(coordinates);
    return g;
}

bool Graph::has_edge(Vertex u, Vertex v) const noexcept {
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::span<const PolarPoint> Graph::coordinates() const {
    if (!coordinates_) throw ContractError("Graph: no coordinates attached");
    return *coordinates_;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (Vertex u = 0; u < vertex_count(); ++u) {
        for (Vertex v : neighbors(u)) {
            if (u < v) out.emplace_back(u, v);
        }
    }
    return out;
}

Graph Graph::induced(std::span<const Vertex> vertices) const {
    std::vector<Edge> local;
    for (Vertex i = 0; i < vertices.size(); ++i) {
        for (Vertex x : neighbors(vertices[i])) {
            auto it = std::lower_bound(vertices.begin(), vertices.end(), x);
            if (it != vertices.end() && *it == x) {
                const auto j = static_cast<Vertex>(it - vertices.begin());
                if (i < j) local.emplace_back(i, j);
            }
        }
    }
    std::optional<std::vector<PolarPoint>> coords;
    if (coordinates_) {
        coords.emplace();
        coords->reserve(vertices.size());
        for (Vertex v : vertices) coords->push_back((*coordinates_)[v]);
    }
    return from_edges(vertices.size(), local, std::move(coords));
}

std::size_t residual_degree(const Graph& g, const AliveMask& mask, Vertex v) noexcept {
    std::size_t d = 0;
    for (Vertex u : g.neighbors(v)) d += mask.alive(u) ? 1 : 0;
    return d;
}

// --- DegreeQueue --------------------------------------------------------

DegreeQueue::DegreeQueue(const Graph& g, const AliveMask& mask) : degree_(g.vertex_count(), 0) {
    std::size_t max_degree = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (!mask.alive(v)) continue;
        degree_[v] = residual_degree(g, mask, v);
        max_degree = std::max(max_degree, degree_[v]);
    }
    buckets_.resize(max_degree + 1);
    // ascending ids already form a valid min-heap
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (mask.alive(v)) buckets_[degree_[v]].push_back(v);
    }
    top_ = max_degree;
}

void DegreeQueue::push(Vertex v, std::size_t d) {
    auto& bucket = buckets_[d];
    bucket.push_back(v);
    std::push_heap(bucket.begin(), bucket.end(), std::greater<>{});
}

std::optional<Vertex> DegreeQueue::peek_max(const AliveMask& mask, std::size_t min_degree) {
    while (true) {
        auto& bucket = buckets_[top_];
        while (!bucket.empty()) {
            const Vertex v = bucket.front();
            if (mask.alive(v) && degree_[v] == top_) break;
            std::pop_heap(bucket.begin(), bucket.end(), std::greater<>{});
            bucket.pop_back();
        }
        if (!bucket.empty()) {
            if (top_ < min_degree) return std::nullopt;
            return bucket.front();
        }
        if (top_ == 0) return std::nullopt;
        --top_;
    }
}

void DegreeQueue::on_removed(const Graph& g, const AliveMask& mask, Vertex v) {
    for (Vertex u : g.neighbors(v)) {
        if (!mask.alive(u)) continue;
        push(u, --degree_[u]);
    }
}

// --- traversal ------------------------------------------------------------

std::optional<std::vector<Vertex>> ComponentProbe::explore(const Graph& g, const AliveMask& mask, Vertex start,
                                                           std::size_t limit) {
    if (!mask.alive(start)) throw ContractError("bounded_component: start vertex is not alive");
    if (limit == 0) throw ContractError("bounded_component: limit must be positive");
    queue_.clear();
    queue_.push_back(start);
    visited_[start] = 1;
    bool exceeded = false;
    for (std::size_t head = 0; head < queue_.size() && !exceeded; ++head) {
        for (Vertex u : g.neighbors(queue_[head])) {
            if (visited_[u] || !mask.alive(u)) continue;
            visited_[u] = 1;
            queue_.push_back(u);
            if (queue_.size() > limit) {
                exceeded = true;
                break;
            }
        }
    }
    last_visited_ = queue_.size();
    for (Vertex v : queue_) visited_[v] = 0;
    if (exceeded) return std::nullopt;
    std::vector<Vertex> component(queue_.begin(), queue_.end());
    std::sort(component.begin(), component.end());
    return component;
}

std::optional<std::vector<Vertex>> bounded_component(const Graph& g, const AliveMask& mask, Vertex start,
                                                     std::size_t limit) {
    ComponentProbe probe(g.vertex_count());
    return probe.explore(g, mask, start, limit);
}

bool is_vertex_cover(const Graph& g, std::span<const Vertex> cover) {
    std::vector<unsigned char> in(g.vertex_count(), 0);
    for (Vertex v : cover) {
        if (v >= g.vertex_count()) return false;
        in[v] = 1;
    }
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        if (in[u]) continue;
        for (Vertex v : g.neighbors(u)) {
            if (!in[v]) return false;
        }
    }
    return true;
}

std::vector<std::vector<Vertex>> connected_components(const Graph& g, const AliveMask& mask) {
    std::vector<std::vector<Vertex>> out;
    std::vector<unsigned char> seen(g.vertex_count(), 0);
    for (Vertex s = 0; s < g.vertex_count(); ++s) {
        if (seen[s] || !mask.alive(s)) continue;
        std::vector<Vertex> comp{s};
        seen[s] = 1;
        for (std::size_t head = 0; head < comp.size(); ++head) {
            for (Vertex u : g.neighbors(comp[head])) {
                if (seen[u] || !mask.alive(u)) continue;
                seen[u] = 1;
                comp.push_back(u);
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

// --- text formats -------------------------------------------------------

namespace {

constexpr std::string_view kEdgeListMarker = "# hrgvc-edge-list";

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == ','; }

// Next integer token; false on end of line, throws on junk.
bool next_int(std::string_view& rest, std::int64_t& value, std::size_t line_no) {
    std::size_t i = 0;
    while (i < rest.size() && is_space(rest[i])) ++i;
    if (i == rest.size()) return false;
    const char* first = rest.data() + i;
    const char* last = rest.data() + rest.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || (ptr != last && !is_space(*ptr))) {
        throw ParseError(line_no, "expected two integer vertex ids");
    }
    rest.remove_prefix(static_cast<std::size_t>(ptr - rest.data()));
    return true;
}

std::optional<std::size_t> parse_marker(std::string_view line) {
    if (line.substr(0, kEdgeListMarker.size()) != kEdgeListMarker) return std::nullopt;
    const auto pos = line.find("vertices=");
    if (pos == std::string_view::npos) return std::nullopt;
    std::size_t n = 0;
    const char* first = line.data() + pos + 9;
    auto [ptr, ec] = std::from_chars(first, line.data() + line.size(), n);
    if (ec != std::errc{}) return std::nullopt;
    return n;
}

} // namespace

EdgeListData read_edge_list(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::optional<std::size_t> declared;
    std::unordered_map<std::int64_t, Vertex> ids;
    std::vector<std::int64_t> original;
    std::vector<Edge> edges;

    const auto dense = [&](std::int64_t raw, std::size_t ln) -> Vertex {
        if (declared) {
            if (raw < 0 || static_cast<std::size_t>(raw) >= *declared) {
                throw ParseError(ln, "vertex id out of the declared range");
            }
            return static_cast<Vertex>(raw);
        }
        auto [it, inserted] = ids.try_emplace(raw, static_cast<Vertex>(original.size()));
        if (inserted) original.push_back(raw);
        return it->second;
    };

    while (std::getline(in, line)) {
        ++line_no;
        std::string_view rest(line);
        std::size_t i = 0;
        while (i < rest.size() && is_space(rest[i])) ++i;
        if (i == rest.size()) continue;
        if (rest[i] == '#' || rest[i] == '%') {
            if (edges.empty() && original.empty() && !declared) declared = parse_marker(rest.substr(i));
            continue;
        }
        std::int64_t a = 0, b = 0;
        if (!next_int(rest, a, line_no) || !next_int(rest, b, line_no)) {
            throw ParseError(line_no, "expected two integer vertex ids");
        }
        // trailing tokens (weights, timestamps) are ignored
        const Vertex u = dense(a, line_no);
        const Vertex v = dense(b, line_no);
        edges.emplace_back(u, v);
    }

    EdgeListData data;
    if (declared) {
        data.original_ids.resize(*declared);
        for (std::size_t v = 0; v < *declared; ++v) data.original_ids[v] = static_cast<std::int64_t>(v);
        data.graph = Graph::from_edges(*declared, edges);
    } else {
        data.graph = Graph::from_edges(original.size(), edges);
        data.original_ids = std::move(original);
    }
    return data;
}

Graph load_edge_list(std::istream& in) { return read_edge_list(in).graph; }

void write_edge_list(std::ostream& out, const Graph& g) {
    out << kEdgeListMarker << " vertices=" << g.vertex_count() << " edges=" << g.edge_count() << '\n';
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        for (Vertex v : g.neighbors(u)) {
            if (u < v) out << u << ' ' << v << '\n';
        }
    }
}

std::optional<std::string> CoordinateFile::find(const std::string& key) const {
    for (const auto& [k, v] : metadata) {
        if (k == key) return v;
    }
    return std::nullopt;
}

CoordinateFile read_coordinates(std::istream& in) {
    CoordinateFile file;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view rest(line);
        while (!rest.empty() && is_space(rest.front())) rest.remove_prefix(1);
        while (!rest.empty() && is_space(rest.back())) rest.remove_suffix(1);
        if (rest.empty()) continue;
        if (rest.front() == '#' || rest.front() == '%') {
            rest.remove_prefix(1);
            const auto colon = rest.find(':');
            if (colon == std::string_view::npos) continue;
            auto key = rest.substr(0, colon);
            auto value = rest.substr(colon + 1);
            while (!key.empty() && key.front() == ' ') key.remove_prefix(1);
            while (!value.empty() && value.front() == ' ') value.remove_prefix(1);
            file.metadata.emplace_back(std::string(key), std::string(value));
            continue;
        }
        std::int64_t id = 0;
        if (!next_int(rest, id, line_no)) throw ParseError(line_no, "expected 'id radius angle'");
        double values[2] = {0.0, 0.0};
        for (double& x : values) {
            while (!rest.empty() && is_space(rest.front())) rest.remove_prefix(1);
            auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), x);
            if (ec != std::errc{}) throw ParseError(line_no, "expected 'id radius angle'");
            rest.remove_prefix(static_cast<std::size_t>(ptr - rest.data()));
        }
        if (id != static_cast<std::int64_t>(file.points.size())) {
            throw ParseError(line_no, "coordinate ids must be dense and in order");
        }
        if (!(values[0] >= 0.0)) throw ParseError(line_no, "negative radius");
        file.points.emplace_back(values[0], values[1]);
    }
    return file;
}

void write_coordinates(std::ostream& out, std::span<const PolarPoint> points,
                       std::span<const std::pair<std::string, std::string>> metadata) {
    for (const auto& [key, value] : metadata) out << "# " << key << ": " << value << '\n';
    char buf[64];
    for (std::size_t v = 0; v < points.size(); ++v) {
        out << v;
        for (double x : {points[v].radius, points[v].angle}) {
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
            (void)ec;
            out << ' ' << std::string_view(buf, static_cast<std::size_t>(ptr - buf));
        }
        out << '\n';
    }
}

Graph with_coordinates(const Graph& g, std::vector<PolarPoint> points) {
    if (points.size() != g.vertex_count()) {
        throw ContractError("with_coordinates: " + std::to_string(points.size()) + " coordinates for "
                            + std::to_string(g.vertex_count()) + " vertices");
    }
    return Graph::from_edges(g.vertex_count(), g.edges(), std::move(points));
}

} // namespace hrgvc
