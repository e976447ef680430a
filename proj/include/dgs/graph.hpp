#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dgs/errors.hpp"

namespace dgs {

// Real-valued function on the vertex set, indexed like the owning graph.
using GraphFunction = std::vector<double>;

struct Edge {
    int to;
    double weight;  // b(x,y) > 0
};

// Finite weighted graph (V, b, c, m): symmetric edge weights b > 0, vertex
// measure m > 0, potential c >= 0. No self-loops. Both directions of every
// undirected edge are stored with the same weight, so symmetry is structural.
// Immutable after construction; all member queries are pure and thread-safe.
class WeightedGraph {
public:
    int vertex_count() const { return static_cast<int>(adj_.size()); }

    // neighbors of x, sorted by vertex index
    const std::vector<Edge>& neighbors(int x) const { return adj_[x]; }

    double measure(int x) const { return m_[x]; }
    double potential(int x) const { return c_[x]; }
    const std::vector<double>& measures() const { return m_; }
    const std::vector<double>& potentials() const { return c_; }
    const std::string& label(int x) const { return labels_[x]; }

    // b(x,y), 0 when not adjacent
    double edge_weight(int x, int y) const;
    bool adjacent(int x, int y) const { return edge_weight(x, y) > 0.0; }

    // weighted degree b(x) = sum_y b(x,y)
    double weighted_degree(int x) const;

    bool has_vertex(int x) const { return x >= 0 && x < vertex_count(); }
    void check_vertex(int x) const;  // throws InputError

private:
    friend class GraphBuilder;
    std::vector<std::vector<Edge>> adj_;
    std::vector<double> m_;
    std::vector<double> c_;
    std::vector<std::string> labels_;
};

// Weights below this are rejected at construction: 1/b(x,y) enters the
// Harnack constant and must not overflow.
inline constexpr double kMinEdgeWeight = 1e-300;

// Validating builder; the only way to make a WeightedGraph.
class GraphBuilder {
public:
    // label defaults to the decimal index
    int add_vertex(double m = 1.0, double c = 0.0);
    int add_vertex(std::string label, double m, double c);
    void add_edge(int x, int y, double b);
    WeightedGraph build();

    int vertex_count() const { return static_cast<int>(m_.size()); }

private:
    std::vector<std::vector<Edge>> adj_;
    std::vector<double> m_;
    std::vector<double> c_;
    std::vector<std::string> labels_;
};

// Line-oriented graph text format:
//   # comment
//   v <label> <m> <c>
//   e <label1> <label2> <b>
// Labels must be declared before use; each undirected edge appears once.
// Errors name the offending line.
WeightedGraph parse_graph(std::string_view text);
WeightedGraph load_graph_file(const std::string& path);

// Subset A of the vertices of a graph with n vertices. Members kept sorted;
// membership is O(1).
class VertexSubset {
public:
    VertexSubset() : n_(0) {}
    VertexSubset(int universe_size, std::vector<int> members);

    static VertexSubset full(int universe_size);
    static VertexSubset empty_set(int universe_size);

    int universe_size() const { return n_; }
    int size() const { return static_cast<int>(members_.size()); }
    bool empty() const { return members_.empty(); }
    bool is_full() const { return size() == n_; }
    bool contains(int v) const { return v >= 0 && v < n_ && mask_[v] != 0; }
    const std::vector<int>& members() const { return members_; }
    VertexSubset complement() const;

    bool operator==(const VertexSubset& o) const {
        return n_ == o.n_ && members_ == o.members_;
    }

private:
    int n_;
    std::vector<int> members_;
    std::vector<char> mask_;
};

// Inner boundaries of A and of its complement:
//   boundary_in  = dA   = vertices of A with a neighbor outside A
//   boundary_out = dA^c = vertices of A^c with a neighbor inside A
struct Boundaries {
    VertexSubset boundary_in;
    VertexSubset boundary_out;
};

bool is_connected(const WeightedGraph& g);
// component id per vertex, ids dense from 0 in order of first appearance
std::vector<int> components(const WeightedGraph& g);
int component_count(const WeightedGraph& g);

// BFS hop distances from x0; -1 for unreachable vertices
std::vector<int> bfs_distances(const WeightedGraph& g, int x0);
// graph metric d(x,y); nullopt across components
std::optional<int> graph_distance(const WeightedGraph& g, int x, int y);
// max distance from x0 within its component
int eccentricity(const WeightedGraph& g, int x0);

// ball {x : d(x0,x) <= r}
VertexSubset ball(const WeightedGraph& g, int x0, int r);
Boundaries boundary(const WeightedGraph& g, const VertexSubset& a);

// strictly increasing balls B_0 c B_1 c ... ending at V (graph must be
// connected); consecutive duplicates removed
std::vector<VertexSubset> exhausting_balls(const WeightedGraph& g, int x0);

// one hop-shortest path from x to y (deterministic: BFS with ascending
// neighbor order); throws InputError if x,y are in different components
std::vector<int> shortest_path(const WeightedGraph& g, int x, int y);

}  // namespace dgs
