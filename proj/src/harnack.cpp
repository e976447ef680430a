#include "dgs/harnack.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>
#include <string>

#include "dgs/forms.hpp"

namespace dgs {

namespace {

double step_numerator(const WeightedGraph& g, double energy, int x) {
    return g.weighted_degree(x) + g.potential(x) - g.measure(x) * energy;
}

void check_window(const WeightedGraph& g, const VertexSubset& window) {
    if (window.universe_size() != g.vertex_count())
        throw InputError("window universe does not match graph");
    if (window.empty()) throw InputError("window is empty");
    // connectivity in the induced subgraph
    std::vector<char> seen(g.vertex_count(), 0);
    std::deque<int> queue{window.members().front()};
    seen[queue.front()] = 1;
    int reached = 0;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        ++reached;
        for (const Edge& e : g.neighbors(v))
            if (window.contains(e.to) && !seen[e.to]) {
                seen[e.to] = 1;
                queue.push_back(e.to);
            }
    }
    if (reached != window.size())
        throw InputError("window is disconnected in the induced subgraph");
}

double path_product(const WeightedGraph& g, double energy, const std::vector<int>& path) {
    double prod = 1.0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        prod *= edge_factor(g, energy, path[i], path[i + 1]);
    return prod;
}

struct PairWitness {
    double product = 0.0;
    std::vector<int> path;
};

// Exact minimum over simple paths inside the window, by dynamic programming
// over (visited set, last vertex). Exponential in |W|; guarded by the caller.
HarnackReport enumerate_paths(const WeightedGraph& g, const VertexSubset& window, double energy) {
    const std::vector<int>& verts = window.members();
    const int k = static_cast<int>(verts.size());
    std::vector<int> local(g.vertex_count(), -1);
    for (int i = 0; i < k; ++i) local[verts[i]] = i;
    // factors of the induced subgraph, local indices
    std::vector<std::vector<std::pair<int, double>>> adj(k);
    for (int i = 0; i < k; ++i)
        for (const Edge& e : g.neighbors(verts[i]))
            if (local[e.to] >= 0)
                adj[i].push_back({local[e.to], edge_factor(g, energy, verts[i], e.to)});

    const double inf = std::numeric_limits<double>::infinity();
    const std::size_t nmask = std::size_t{1} << k;
    HarnackReport report;
    report.method = HarnackMethod::ExactEnumeration;
    report.constant = 1.0;
    report.worst_pair = {verts[0], verts[0]};
    report.witness_path = {verts[0]};
    std::vector<double> dp(nmask * k);
    std::vector<signed char> parent(nmask * k);
    for (int s = 0; s < k; ++s) {
        std::fill(dp.begin(), dp.end(), inf);
        std::fill(parent.begin(), parent.end(), static_cast<signed char>(-1));
        dp[(std::size_t{1} << s) * k + s] = 1.0;
        std::vector<double> best(k, inf);
        std::vector<std::size_t> best_mask(k, 0);
        best[s] = 1.0;
        best_mask[s] = std::size_t{1} << s;
        for (std::size_t mask = 1; mask < nmask; ++mask) {
            if (!(mask & (std::size_t{1} << s))) continue;
            for (int v = 0; v < k; ++v) {
                double cur = dp[mask * k + v];
                if (cur == inf || !(mask & (std::size_t{1} << v))) continue;
                if (cur < best[v]) {
                    best[v] = cur;
                    best_mask[v] = mask;
                }
                for (const auto& [u, f] : adj[v]) {
                    if (mask & (std::size_t{1} << u)) continue;
                    std::size_t nm = mask | (std::size_t{1} << u);
                    double cand = cur * f;
                    if (cand < dp[nm * k + u]) {
                        dp[nm * k + u] = cand;
                        parent[nm * k + u] = static_cast<signed char>(v);
                    }
                }
            }
        }
        for (int t = 0; t < k; ++t) {
            if (t == s || best[t] == inf) continue;
            // reconstruct the minimizing path, then recompute its product so
            // the reported constant is exactly the product of its factors
            std::vector<int> path;
            std::size_t mask = best_mask[t];
            int v = t;
            while (v != -1) {
                path.push_back(verts[v]);
                int p = parent[mask * k + v];
                mask &= ~(std::size_t{1} << v);
                v = p;
            }
            std::reverse(path.begin(), path.end());
            double prod = path_product(g, energy, path);
            if (prod > report.constant) {
                report.constant = prod;
                report.worst_pair = {verts[s], verts[t]};
                report.witness_path = std::move(path);
            }
        }
    }
    return report;
}

// Dijkstra on log-costs; exact when every factor is >= 1 (all log-costs
// nonnegative, so the min over walks is attained on a simple path).
HarnackReport dijkstra_paths(const WeightedGraph& g, const VertexSubset& window, double energy) {
    const std::vector<int>& verts = window.members();
    const double inf = std::numeric_limits<double>::infinity();
    HarnackReport report;
    report.method = HarnackMethod::DijkstraFastPath;
    report.constant = 1.0;
    report.worst_pair = {verts[0], verts[0]};
    report.witness_path = {verts[0]};
    std::vector<double> dist(g.vertex_count());
    std::vector<int> parent(g.vertex_count());
    for (int s : verts) {
        std::fill(dist.begin(), dist.end(), inf);
        std::fill(parent.begin(), parent.end(), -1);
        dist[s] = 0.0;
        using Item = std::pair<double, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
        heap.push({0.0, s});
        while (!heap.empty()) {
            auto [d, v] = heap.top();
            heap.pop();
            if (d > dist[v]) continue;
            for (const Edge& e : g.neighbors(v)) {
                if (!window.contains(e.to)) continue;
                double nd = d + std::log(edge_factor(g, energy, v, e.to));
                if (nd < dist[e.to]) {
                    dist[e.to] = nd;
                    parent[e.to] = v;
                    heap.push({nd, e.to});
                }
            }
        }
        for (int t : verts) {
            if (t == s || dist[t] == inf) continue;
            std::vector<int> path;
            for (int v = t; v != -1; v = parent[v]) path.push_back(v);
            std::reverse(path.begin(), path.end());
            double prod = path_product(g, energy, path);
            if (prod > report.constant) {
                report.constant = prod;
                report.worst_pair = {s, t};
                report.witness_path = std::move(path);
            }
        }
    }
    return report;
}

constexpr int kEnumerationLimit = 16;

}  // namespace

double edge_factor(const WeightedGraph& g, double energy, int x, int y) {
    g.check_vertex(x);
    g.check_vertex(y);
    double b = g.edge_weight(x, y);
    if (b <= 0.0)
        throw InputError("edge_factor requires adjacent vertices (" + std::to_string(x) + ", " +
                         std::to_string(y) + ")");
    double num = step_numerator(g, energy, x);
    if (num <= 0.0)
        throw EnergyTooHigh("energy " + std::to_string(energy) + " reaches (b(x)+c(x))/m(x) = " +
                            std::to_string((g.weighted_degree(x) + g.potential(x)) / g.measure(x)) +
                            " at vertex " + std::to_string(x) +
                            "; nonnegative super-solutions vanish and no Harnack constant exists");
    return num / b;
}

HarnackReport harnack_constant(const WeightedGraph& g, const VertexSubset& window, double energy) {
    check_window(g, window);
    if (window.size() == 1) {
        HarnackReport r;
        r.constant = 1.0;
        r.worst_pair = {window.members()[0], window.members()[0]};
        r.witness_path = {window.members()[0]};
        r.method = HarnackMethod::ExactEnumeration;
        return r;
    }
    // probe all directed factors once: raises EnergyTooHigh early and decides
    // whether the fast path is sound
    bool all_at_least_one = true;
    for (int x : window.members())
        for (const Edge& e : g.neighbors(x))
            if (window.contains(e.to) && edge_factor(g, energy, x, e.to) < 1.0)
                all_at_least_one = false;
    if (all_at_least_one) return dijkstra_paths(g, window, energy);
    if (window.size() > kEnumerationLimit)
        throw NumericError("window of size " + std::to_string(window.size()) +
                           " has edge factors below 1; exact simple-path enumeration is limited "
                           "to " +
                           std::to_string(kEnumerationLimit) + " vertices");
    return enumerate_paths(g, window, energy);
}

HarnackReport harnack_constant_enumerated(const WeightedGraph& g, const VertexSubset& window,
                                          double energy) {
    check_window(g, window);
    if (window.size() > kEnumerationLimit)
        throw NumericError("window of size " + std::to_string(window.size()) +
                           " exceeds the exact enumeration limit " +
                           std::to_string(kEnumerationLimit));
    if (window.size() == 1) {
        HarnackReport r;
        r.constant = 1.0;
        r.worst_pair = {window.members()[0], window.members()[0]};
        r.witness_path = {window.members()[0]};
        return r;
    }
    return enumerate_paths(g, window, energy);
}

bool harnack_verify(const WeightedGraph& g, const VertexSubset& window, double energy,
                    const GraphFunction& w, double tol) {
    if (static_cast<int>(w.size()) != g.vertex_count())
        throw InputError("w has wrong length");
    for (int x = 0; x < g.vertex_count(); ++x)
        if (!(w[x] >= 0.0))
            throw InputError("w has a negative entry at vertex " + std::to_string(x));
    check_window(g, window);
    FormContext ctx(g);
    GraphFunction lw = apply_L(ctx, w);
    double scale = 0.0;
    for (int x : window.members())
        scale = std::max(scale, std::fabs(lw[x]) + std::fabs(energy) * std::fabs(w[x]));
    double gate = identity_tolerance(scale);
    for (int x : window.members())
        if (lw[x] - energy * w[x] < -gate)
            throw InputError("w is not a super-solution at energy " + std::to_string(energy) +
                             " on the window (violated at vertex " + std::to_string(x) + ")");
    double c = harnack_constant(g, window, energy).constant;
    double wmax = 0.0, wmin = std::numeric_limits<double>::infinity();
    for (int x : window.members()) {
        wmax = std::max(wmax, w[x]);
        wmin = std::min(wmin, w[x]);
    }
    double bound = c * wmin;
    return wmax <= bound + tol * (1.0 + std::fabs(bound));
}

MinimumPrincipleResult minimum_principle_check(const WeightedGraph& g, const VertexSubset& window,
                                               const GraphFunction& w, double energy, double tol) {
    if (static_cast<int>(w.size()) != g.vertex_count())
        throw InputError("w has wrong length");
    for (int x = 0; x < g.vertex_count(); ++x)
        if (!(w[x] >= 0.0))
            throw InputError("w has a negative entry at vertex " + std::to_string(x));
    check_window(g, window);
    FormContext ctx(g);
    GraphFunction lw = apply_L(ctx, w);
    for (int x : window.members())
        if (lw[x] - energy * w[x] < -tol)
            throw InputError("w is not a super-solution at energy " + std::to_string(energy) +
                             " on the window (violated at vertex " + std::to_string(x) + ")");
    bool any_positive = false, any_zero = false;
    for (int x : window.members()) {
        if (w[x] > 0.0)
            any_positive = true;
        else
            any_zero = true;
    }
    if (any_positive && any_zero) return MinimumPrincipleResult::Violation;
    return any_positive ? MinimumPrincipleResult::AllPositive : MinimumPrincipleResult::AllZero;
}

double vertex_bound(const WeightedGraph& g, int x0, int x, double energy_low, double energy_high) {
    g.check_vertex(x0);
    g.check_vertex(x);
    if (!(energy_low <= energy_high)) throw InputError("empty energy interval");
    std::vector<int> path = shortest_path(g, x0, x);
    VertexSubset window(g.vertex_count(), path);
    return harnack_constant(g, window, energy_low).constant;
}

}  // namespace dgs
