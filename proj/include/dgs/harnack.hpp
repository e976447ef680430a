#pragma once

#include <utility>
#include <vector>

#include "dgs/graph.hpp"

namespace dgs {

// Multiplicative cost of the directed step x -> y:
//   (b(x) + c(x) - m(x) E) / b(x,y).
// Requires x ~ y. A nonpositive numerator means E is so large that every
// nonnegative super-solution on a set containing x vanishes; reported as
// EnergyTooHigh rather than clamped.
double edge_factor(const WeightedGraph& g, double energy, int x, int y);

enum class HarnackMethod { ExactEnumeration, DijkstraFastPath };

// C_W(E) with a witness: the maximizing ordered pair and the minimizing
// simple path inside W between them. Multiplying the edge factors along
// witness_path reproduces constant exactly.
struct HarnackReport {
    double constant = 1.0;
    std::pair<int, int> worst_pair{-1, -1};
    std::vector<int> witness_path;
    HarnackMethod method = HarnackMethod::ExactEnumeration;
};

// C_W(E) = max over ordered pairs x != y in W of the min over simple paths
// from x to y inside W of the product of edge factors. When every factor is
// >= 1 the minimum over walks equals the minimum over simple paths and
// Dijkstra on log-costs is exact; otherwise exact dynamic programming over
// simple paths with a hard |W| <= 16 guard (min-cost simple path with
// sub-unit factors does not decompose). |W| = 1 yields the constant 1.
HarnackReport harnack_constant(const WeightedGraph& g, const VertexSubset& window, double energy);

// Always uses the exact simple-path enumeration (with the same size guard);
// the independent cross-check for the Dijkstra fast path.
HarnackReport harnack_constant_enumerated(const WeightedGraph& g, const VertexSubset& window,
                                          double energy);

// True iff max_W w <= C_W(E) min_W w up to tolerance. Gates its
// preconditions first and reports them distinctly: a negative entry of w and
// a failed super-solution check on the window are InputErrors, never a
// Harnack verdict.
bool harnack_verify(const WeightedGraph& g, const VertexSubset& window, double energy,
                    const GraphFunction& w, double tol = 1e-9);

enum class MinimumPrincipleResult { AllPositive, AllZero, Violation };

// Classifies a nonnegative super-solution on a connected window: strictly
// positive throughout, identically zero, or mixed. Mixed (Violation) cannot
// occur for valid inputs; returning it is evidence of a bug upstream.
MinimumPrincipleResult minimum_principle_check(const WeightedGraph& g, const VertexSubset& window,
                                               const GraphFunction& w, double energy, double tol);

// Two-sided bound C_x for solution values along a path: picks one
// hop-shortest path from x0 to x and evaluates the Harnack constant of its
// vertex set at the lower end of the energy interval, where the constant is
// largest. Any positive solution w with energy in [energy_low, energy_high]
// and w(x0) = 1 satisfies 1/C_x <= w(x) <= C_x.
double vertex_bound(const WeightedGraph& g, int x0, int x, double energy_low, double energy_high);

}  // namespace dgs
