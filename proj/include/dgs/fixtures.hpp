#pragma once

#include <cstdint>
#include <string>

#include "dgs/graph.hpp"
#include "dgs/spectral.hpp"

namespace dgs {

// Constant overrides applied uniformly by the generators below.
struct FixtureOverrides {
    double b = 1.0;
    double m = 1.0;
    double c = 0.0;
};

WeightedGraph make_path(int n, FixtureOverrides ov = {});
WeightedGraph make_cycle(int n, FixtureOverrides ov = {});
// center is vertex 0, leaves 1..leaves; edges only between center and leaves
WeightedGraph make_star(int leaves, FixtureOverrides ov = {});
// segment of the integer line: offsets -radius..radius at indices 0..2*radius,
// labels carry the signed offset; center sits at index `radius`
WeightedGraph make_z_segment(int radius, FixtureOverrides ov = {});
// Erdos-Renyi G(n, p); may be disconnected
WeightedGraph make_random(int n, double p, std::uint64_t seed, FixtureOverrides ov = {});
// retries seeds derived from `seed` until the sample is connected
WeightedGraph make_random_connected(int n, double p, std::uint64_t seed, FixtureOverrides ov = {});

// Solutions of the line recurrence w(k+1) + w(k-1) = (2-E) w(k) on the
// segment of the given radius (unit weights and measure):
//   cos:       w(k) = cos(theta k),  E = 2 - 2 cos(theta)
//   geometric: w(k) = t^k,           E = 2 - t - 1/t
GraphFunction z_cos_solution(int radius, double theta);
GraphFunction z_geometric_solution(int radius, double t);
double z_cos_energy(double theta);
double z_geometric_energy(double t);

// Truncation families for the exhaustion diagnostics. Persistent ids: signed
// offsets for the line, 0 = center / k = k-th leaf for stars, plain indices
// for the constant family.
TruncationFamily z_family(FixtureOverrides ov = {});
TruncationFamily star_family(FixtureOverrides ov = {});
TruncationFamily constant_family(const WeightedGraph& g, int x0);

// CLI fixture spec: "family:args" with optional constant overrides, e.g.
//   path:5   cycle:8   star:3   z:60   random:30:0.2   path:5:b=2:m=0.5:c=0.1
WeightedGraph parse_fixture(const std::string& spec, std::uint64_t seed);
// default --x0 for the family (the line's center); 0 otherwise
int fixture_default_center(const std::string& spec);

}  // namespace dgs
