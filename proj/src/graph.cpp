#include "dgs/graph.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace dgs {

double WeightedGraph::edge_weight(int x, int y) const {
    check_vertex(x);
    check_vertex(y);
    const auto& row = adj_[x];
    auto it = std::lower_bound(row.begin(), row.end(), y,
                               [](const Edge& e, int v) { return e.to < v; });
    if (it != row.end() && it->to == y) return it->weight;
    return 0.0;
}

double WeightedGraph::weighted_degree(int x) const {
    check_vertex(x);
    double s = 0.0;
    for (const Edge& e : adj_[x]) s += e.weight;
    return s;
}

void WeightedGraph::check_vertex(int x) const {
    if (!has_vertex(x))
        throw InputError("invalid vertex index " + std::to_string(x) + " (graph has " +
                         std::to_string(vertex_count()) + " vertices)");
}

int GraphBuilder::add_vertex(double m, double c) {
    return add_vertex(std::to_string(vertex_count()), m, c);
}

int GraphBuilder::add_vertex(std::string label, double m, double c) {
    if (!(m > 0.0) || !std::isfinite(m))
        throw InputError("vertex '" + label + "': measure m must be positive and finite, got " +
                         std::to_string(m));
    if (!(c >= 0.0) || !std::isfinite(c))
        throw InputError("vertex '" + label + "': potential c must be nonnegative and finite, got " +
                         std::to_string(c));
    adj_.emplace_back();
    m_.push_back(m);
    c_.push_back(c);
    labels_.push_back(std::move(label));
    return vertex_count() - 1;
}

void GraphBuilder::add_edge(int x, int y, double b) {
    auto name = [this](int v) {
        return v >= 0 && v < vertex_count() ? "'" + labels_[v] + "'" : std::to_string(v);
    };
    if (x < 0 || x >= vertex_count() || y < 0 || y >= vertex_count())
        throw InputError("edge references undeclared vertex (" + std::to_string(x) + "," +
                         std::to_string(y) + ")");
    if (x == y) throw InputError("self-loop at vertex " + name(x) + " (b(x,x) must be 0)");
    if (!std::isfinite(b) || !(b > 0.0))
        throw InputError("edge " + name(x) + "-" + name(y) + ": weight must be positive, got " +
                         std::to_string(b));
    if (b < kMinEdgeWeight)
        throw InputError("edge " + name(x) + "-" + name(y) + ": weight below minimum 1e-300");
    for (const Edge& e : adj_[x])
        if (e.to == y) throw InputError("duplicate edge " + name(x) + "-" + name(y));
    adj_[x].push_back({y, b});
    adj_[y].push_back({x, b});
}

WeightedGraph GraphBuilder::build() {
    WeightedGraph g;
    for (auto& row : adj_)
        std::sort(row.begin(), row.end(), [](const Edge& a, const Edge& b) { return a.to < b.to; });
    g.adj_ = std::move(adj_);
    g.m_ = std::move(m_);
    g.c_ = std::move(c_);
    g.labels_ = std::move(labels_);
    *this = GraphBuilder();
    return g;
}

namespace {

double parse_number(const std::string& tok, int line_no, const char* what) {
    const char* begin = tok.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(v))
        throw InputError("line " + std::to_string(line_no) + ": bad " + what + " '" + tok + "'");
    return v;
}

}  // namespace

WeightedGraph parse_graph(std::string_view text) {
    GraphBuilder builder;
    std::unordered_map<std::string, int> index_of;
    struct PendingEdge {
        int x, y, line;
        double b;
    };
    std::vector<PendingEdge> edges;

    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind) || kind[0] == '#') continue;
        if (kind == "v") {
            std::string label, ms, cs, extra;
            if (!(ls >> label >> ms >> cs) || (ls >> extra))
                throw InputError("line " + std::to_string(line_no) +
                                 ": expected 'v <label> <m> <c>'");
            if (index_of.count(label))
                throw InputError("line " + std::to_string(line_no) + ": duplicate vertex '" +
                                 label + "'");
            double m = parse_number(ms, line_no, "measure");
            double c = parse_number(cs, line_no, "potential");
            try {
                index_of[label] = builder.add_vertex(label, m, c);
            } catch (const InputError& e) {
                throw InputError("line " + std::to_string(line_no) + ": " + e.what());
            }
        } else if (kind == "e") {
            std::string l1, l2, bs, extra;
            if (!(ls >> l1 >> l2 >> bs) || (ls >> extra))
                throw InputError("line " + std::to_string(line_no) +
                                 ": expected 'e <label1> <label2> <b>'");
            auto find = [&](const std::string& l) {
                auto it = index_of.find(l);
                if (it == index_of.end())
                    throw InputError("line " + std::to_string(line_no) + ": undeclared vertex '" +
                                     l + "'");
                return it->second;
            };
            int x = find(l1), y = find(l2);
            double b = parse_number(bs, line_no, "edge weight");
            edges.push_back({x, y, line_no, b});
        } else {
            throw InputError("line " + std::to_string(line_no) + ": unknown directive '" + kind +
                             "'");
        }
    }
    for (const PendingEdge& e : edges) {
        try {
            builder.add_edge(e.x, e.y, e.b);
        } catch (const InputError& err) {
            throw InputError("line " + std::to_string(e.line) + ": " + err.what());
        }
    }
    if (builder.vertex_count() == 0) throw InputError("graph has no vertices");
    return builder.build();
}

WeightedGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open graph file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_graph(buf.str());
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

VertexSubset::VertexSubset(int universe_size, std::vector<int> members)
    : n_(universe_size), members_(std::move(members)), mask_(universe_size, 0) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    for (int v : members_) {
        if (v < 0 || v >= n_)
            throw InputError("subset member " + std::to_string(v) + " outside universe of size " +
                             std::to_string(n_));
        mask_[v] = 1;
    }
}

VertexSubset VertexSubset::full(int universe_size) {
    std::vector<int> all(universe_size);
    for (int i = 0; i < universe_size; ++i) all[i] = i;
    return VertexSubset(universe_size, std::move(all));
}

VertexSubset VertexSubset::empty_set(int universe_size) {
    return VertexSubset(universe_size, {});
}

VertexSubset VertexSubset::complement() const {
    std::vector<int> rest;
    rest.reserve(n_ - size());
    for (int v = 0; v < n_; ++v)
        if (!mask_[v]) rest.push_back(v);
    return VertexSubset(n_, std::move(rest));
}

std::vector<int> components(const WeightedGraph& g) {
    const int n = g.vertex_count();
    std::vector<int> comp(n, -1);
    int next_id = 0;
    std::deque<int> queue;
    for (int s = 0; s < n; ++s) {
        if (comp[s] != -1) continue;
        comp[s] = next_id;
        queue.push_back(s);
        while (!queue.empty()) {
            int x = queue.front();
            queue.pop_front();
            for (const Edge& e : g.neighbors(x)) {
                if (comp[e.to] == -1) {
                    comp[e.to] = next_id;
                    queue.push_back(e.to);
                }
            }
        }
        ++next_id;
    }
    return comp;
}

int component_count(const WeightedGraph& g) {
    auto comp = components(g);
    return comp.empty() ? 0 : 1 + *std::max_element(comp.begin(), comp.end());
}

bool is_connected(const WeightedGraph& g) { return component_count(g) <= 1; }

std::vector<int> bfs_distances(const WeightedGraph& g, int x0) {
    g.check_vertex(x0);
    std::vector<int> dist(g.vertex_count(), -1);
    dist[x0] = 0;
    std::deque<int> queue{x0};
    while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        for (const Edge& e : g.neighbors(x)) {
            if (dist[e.to] == -1) {
                dist[e.to] = dist[x] + 1;
                queue.push_back(e.to);
            }
        }
    }
    return dist;
}

std::optional<int> graph_distance(const WeightedGraph& g, int x, int y) {
    g.check_vertex(y);
    int d = bfs_distances(g, x)[y];
    if (d < 0) return std::nullopt;
    return d;
}

int eccentricity(const WeightedGraph& g, int x0) {
    auto dist = bfs_distances(g, x0);
    int ecc = 0;
    for (int d : dist) ecc = std::max(ecc, d);
    return ecc;
}

VertexSubset ball(const WeightedGraph& g, int x0, int r) {
    if (r < 0) throw InputError("ball radius must be nonnegative, got " + std::to_string(r));
    auto dist = bfs_distances(g, x0);
    std::vector<int> members;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (dist[v] >= 0 && dist[v] <= r) members.push_back(v);
    return VertexSubset(g.vertex_count(), std::move(members));
}

Boundaries boundary(const WeightedGraph& g, const VertexSubset& a) {
    if (a.universe_size() != g.vertex_count())
        throw InputError("subset universe does not match graph");
    std::vector<int> in_b, out_b;
    std::vector<char> seen_out(g.vertex_count(), 0);
    for (int x : a.members()) {
        bool crossing = false;
        for (const Edge& e : g.neighbors(x)) {
            if (!a.contains(e.to)) {
                crossing = true;
                if (!seen_out[e.to]) {
                    seen_out[e.to] = 1;
                    out_b.push_back(e.to);
                }
            }
        }
        if (crossing) in_b.push_back(x);
    }
    return Boundaries{VertexSubset(g.vertex_count(), std::move(in_b)),
                      VertexSubset(g.vertex_count(), std::move(out_b))};
}

std::vector<VertexSubset> exhausting_balls(const WeightedGraph& g, int x0) {
    if (!is_connected(g)) throw InputError("exhausting_balls requires a connected graph");
    g.check_vertex(x0);
    std::vector<VertexSubset> out;
    int n = g.vertex_count();
    for (int r = 0;; ++r) {
        VertexSubset b = ball(g, x0, r);
        if (out.empty() || b.size() > out.back().size()) out.push_back(b);
        if (b.size() == n) break;
    }
    return out;
}

std::vector<int> shortest_path(const WeightedGraph& g, int x, int y) {
    g.check_vertex(x);
    g.check_vertex(y);
    std::vector<int> parent(g.vertex_count(), -2);
    parent[x] = -1;
    std::deque<int> queue{x};
    while (!queue.empty() && parent[y] == -2) {
        int v = queue.front();
        queue.pop_front();
        for (const Edge& e : g.neighbors(v)) {
            if (parent[e.to] == -2) {
                parent[e.to] = v;
                queue.push_back(e.to);
            }
        }
    }
    if (parent[y] == -2)
        throw InputError("vertices " + std::to_string(x) + " and " + std::to_string(y) +
                         " are in different components");
    std::vector<int> path;
    for (int v = y; v != -1; v = parent[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace dgs
