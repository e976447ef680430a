#include "dgs/fixtures.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "dgs/rng.hpp"

namespace dgs {

namespace {

void check_overrides(const FixtureOverrides& ov) {
    if (!(ov.b > 0.0)) throw InputError("fixture edge weight override must be positive");
    if (!(ov.m > 0.0)) throw InputError("fixture measure override must be positive");
    if (!(ov.c >= 0.0)) throw InputError("fixture potential override must be nonnegative");
}

}  // namespace

WeightedGraph make_path(int n, FixtureOverrides ov) {
    if (n < 1) throw InputError("path fixture needs at least one vertex");
    check_overrides(ov);
    GraphBuilder b;
    for (int i = 0; i < n; ++i) b.add_vertex(ov.m, ov.c);
    for (int i = 0; i + 1 < n; ++i) b.add_edge(i, i + 1, ov.b);
    return b.build();
}

WeightedGraph make_cycle(int n, FixtureOverrides ov) {
    if (n < 3) throw InputError("cycle fixture needs at least three vertices");
    check_overrides(ov);
    GraphBuilder b;
    for (int i = 0; i < n; ++i) b.add_vertex(ov.m, ov.c);
    for (int i = 0; i + 1 < n; ++i) b.add_edge(i, i + 1, ov.b);
    b.add_edge(n - 1, 0, ov.b);
    return b.build();
}

WeightedGraph make_star(int leaves, FixtureOverrides ov) {
    if (leaves < 1) throw InputError("star fixture needs at least one leaf");
    check_overrides(ov);
    GraphBuilder b;
    b.add_vertex("center", ov.m, ov.c);
    for (int i = 1; i <= leaves; ++i) b.add_vertex("leaf" + std::to_string(i), ov.m, ov.c);
    for (int i = 1; i <= leaves; ++i) b.add_edge(0, i, ov.b);
    return b.build();
}

WeightedGraph make_z_segment(int radius, FixtureOverrides ov) {
    if (radius < 0) throw InputError("segment radius must be nonnegative");
    check_overrides(ov);
    GraphBuilder b;
    for (int k = -radius; k <= radius; ++k)
        b.add_vertex(std::to_string(k), ov.m, ov.c);
    for (int i = 0; i + 1 <= 2 * radius; ++i) b.add_edge(i, i + 1, ov.b);
    return b.build();
}

WeightedGraph make_random(int n, double p, std::uint64_t seed, FixtureOverrides ov) {
    if (n < 1) throw InputError("random fixture needs at least one vertex");
    if (!(p >= 0.0 && p <= 1.0)) throw InputError("edge probability must lie in [0,1]");
    check_overrides(ov);
    Lcg rng(seed);
    GraphBuilder b;
    for (int i = 0; i < n; ++i) b.add_vertex(ov.m, ov.c);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.next_unit() < p) b.add_edge(i, j, ov.b);
    return b.build();
}

WeightedGraph make_random_connected(int n, double p, std::uint64_t seed, FixtureOverrides ov) {
    for (int attempt = 0; attempt < 500; ++attempt) {
        WeightedGraph g = make_random(n, p, seed + 0x9e37 * static_cast<std::uint64_t>(attempt), ov);
        if (is_connected(g)) return g;
    }
    throw NumericError("could not sample a connected random graph (p too small?)");
}

GraphFunction z_cos_solution(int radius, double theta) {
    GraphFunction w(2 * radius + 1);
    for (int k = -radius; k <= radius; ++k) w[k + radius] = std::cos(theta * k);
    return w;
}

GraphFunction z_geometric_solution(int radius, double t) {
    if (t == 0.0) throw InputError("geometric ratio must be nonzero");
    GraphFunction w(2 * radius + 1);
    for (int k = -radius; k <= radius; ++k) w[k + radius] = std::pow(t, k);
    return w;
}

double z_cos_energy(double theta) { return 2.0 - 2.0 * std::cos(theta); }

double z_geometric_energy(double t) {
    if (t == 0.0) throw InputError("geometric ratio must be nonzero");
    return 2.0 - t - 1.0 / t;
}

TruncationFamily z_family(FixtureOverrides ov) {
    check_overrides(ov);
    TruncationFamily f;
    f.make = [ov](int radius) { return make_z_segment(radius, ov); };
    f.center = [](int radius) { return radius; };
    f.locate = [](int radius, int id) -> std::optional<int> {
        if (id < -radius || id > radius) return std::nullopt;
        return id + radius;
    };
    f.core_ids = [](int core_radius) {
        std::vector<int> ids;
        for (int k = -core_radius; k <= core_radius; ++k) ids.push_back(k);
        return ids;
    };
    return f;
}

TruncationFamily star_family(FixtureOverrides ov) {
    check_overrides(ov);
    TruncationFamily f;
    f.make = [ov](int radius) { return make_star(radius, ov); };
    f.center = [](int) { return 0; };
    f.locate = [](int radius, int id) -> std::optional<int> {
        if (id < 0 || id > radius) return std::nullopt;
        return id;
    };
    // center and first leaf; every truncation has both
    f.core_ids = [](int) { return std::vector<int>{0, 1}; };
    return f;
}

TruncationFamily constant_family(const WeightedGraph& g, int x0) {
    g.check_vertex(x0);
    TruncationFamily f;
    f.make = [g](int) { return g; };
    f.center = [x0](int) { return x0; };
    int n = g.vertex_count();
    f.locate = [n](int, int id) -> std::optional<int> {
        if (id < 0 || id >= n) return std::nullopt;
        return id;
    };
    auto shared = g;
    f.core_ids = [shared, x0](int core_radius) {
        return ball(shared, x0, core_radius).members();
    };
    return f;
}

namespace {

std::vector<std::string> split_colon(const std::string& s) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, ':')) parts.push_back(cur);
    return parts;
}

double parse_number(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw InputError("");
        return v;
    } catch (...) {
        throw InputError(std::string("fixture spec: cannot parse ") + what + " from '" + s + "'");
    }
}

int parse_int(const std::string& s, const char* what) {
    double v = parse_number(s, what);
    int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw InputError(std::string("fixture spec: ") + what + " must be an integer, got '" + s +
                         "'");
    return i;
}

// consumes trailing key=value override tokens
FixtureOverrides parse_overrides(const std::vector<std::string>& parts, std::size_t from) {
    FixtureOverrides ov;
    for (std::size_t i = from; i < parts.size(); ++i) {
        const std::string& t = parts[i];
        auto eq = t.find('=');
        if (eq == std::string::npos || eq == 0)
            throw InputError("fixture spec: expected key=value override, got '" + t + "'");
        std::string key = t.substr(0, eq);
        double val = parse_number(t.substr(eq + 1), "override value");
        if (key == "b")
            ov.b = val;
        else if (key == "m")
            ov.m = val;
        else if (key == "c")
            ov.c = val;
        else
            throw InputError("fixture spec: unknown override '" + key + "' (use b, m or c)");
    }
    return ov;
}

std::size_t positional_count(const std::vector<std::string>& parts) {
    std::size_t k = 1;
    while (k < parts.size() && parts[k].find('=') == std::string::npos) ++k;
    return k;  // index one past the last positional token
}

}  // namespace

WeightedGraph parse_fixture(const std::string& spec, std::uint64_t seed) {
    std::vector<std::string> parts = split_colon(spec);
    if (parts.empty() || parts[0].empty()) throw InputError("empty fixture spec");
    const std::string& family = parts[0];
    std::size_t np = positional_count(parts);
    FixtureOverrides ov = parse_overrides(parts, np);
    auto need = [&](std::size_t want) {
        if (np - 1 != want)
            throw InputError("fixture spec '" + spec + "': family '" + family + "' takes " +
                             std::to_string(want) + " size argument(s)");
    };
    if (family == "path") {
        need(1);
        return make_path(parse_int(parts[1], "path length"), ov);
    }
    if (family == "cycle") {
        need(1);
        return make_cycle(parse_int(parts[1], "cycle length"), ov);
    }
    if (family == "star") {
        need(1);
        return make_star(parse_int(parts[1], "leaf count"), ov);
    }
    if (family == "z" || family == "z_segment") {
        need(1);
        return make_z_segment(parse_int(parts[1], "segment radius"), ov);
    }
    if (family == "random") {
        need(2);
        return make_random(parse_int(parts[1], "vertex count"),
                           parse_number(parts[2], "edge probability"), seed, ov);
    }
    throw InputError("unknown fixture family '" + family +
                     "' (expected path, cycle, star, z or random)");
}

int fixture_default_center(const std::string& spec) {
    std::vector<std::string> parts = split_colon(spec);
    if (parts.empty()) return 0;
    if ((parts[0] == "z" || parts[0] == "z_segment") && parts.size() >= 2) {
        try {
            return parse_int(parts[1], "segment radius");
        } catch (const InputError&) {
            return 0;
        }
    }
    return 0;
}

}  // namespace dgs
