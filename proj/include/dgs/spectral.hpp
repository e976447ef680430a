#pragma once

#include <functional>
#include <optional>

#include "dgs/forms.hpp"
#include "dgs/graph.hpp"

namespace dgs {

// Smallest eigenpair of L on l^2(V,m). ground_state is m-normalized and
// entrywise positive (graph connected), sign fixed by vertex 0.
struct SpectralResult {
    double ground_energy = 0.0;                  // E0 = inf spec(L)
    GraphFunction ground_state;
    double residual = 0.0;                       // ||L w - E0 w||_m
    int iterations = 0;
};

// Full spectrum of L via cyclic Jacobi rotations on the symmetrized matrix.
// The independent cross-check for the iterative path; intended for small
// graphs (cost is O(n^3) per sweep).
struct DenseSpectrum {
    std::vector<double> eigenvalues;             // ascending
    std::vector<GraphFunction> eigenvectors;     // [k] pairs with eigenvalues[k], m-normalized
};
DenseSpectrum dense_spectrum(const WeightedGraph& g);

// E0 and the ground state by shifted inverse iteration with Rayleigh-quotient
// acceleration. Requires a connected graph; certifies residual <= tol.
SpectralResult ground_energy(const WeightedGraph& g, double tol = 1e-10);

// Second-smallest eigenvalue by the same iteration on the complement of the
// ground state.
double second_eigenvalue(const WeightedGraph& g, const SpectralResult& ground,
                         double tol = 1e-10);

// margin below E0 required of resolvent energies
inline double resolvent_margin(double tol) { return tol > 1e-8 ? tol : 1e-8; }

// Solves (L - E) u = phi for E < E0 by conjugate gradients in the m-weighted
// inner product. phi must be nonnegative and nontrivial; the solution is
// checked to be strictly positive (positivity improving resolvent).
GraphFunction resolvent_solve(const WeightedGraph& g, double energy, const GraphFunction& phi,
                              double tol = 1e-10);
// same, with the ground energy already known (skips the eigensolve)
GraphFunction resolvent_solve(const WeightedGraph& g, double energy, const GraphFunction& phi,
                              double tol, double known_ground_energy);

// Positive super-solution built from the resolvent: w = (L-E)^{-1} 1_{V\W},
// normalized so w(x0) = 1. Solves (L-E)w = 0 on W exactly (up to solver
// tolerance) and (L-E)w >= 0 everywhere.
struct SupersolutionCertificate {
    GraphFunction w;
    double energy = 0.0;
    VertexSubset window;
    std::vector<double> slack;                   // (L-E)w at window.members()[i]
    int normalization_vertex = 0;
    double slack_tolerance = 0.0;                // bound used for the min-slack check
};
SupersolutionCertificate construct_supersolution(const WeightedGraph& g, double energy, int x0,
                                                 const VertexSubset& window, double tol = 1e-10);
SupersolutionCertificate construct_supersolution(const WeightedGraph& g, double energy, int x0,
                                                 const VertexSubset& window, double tol,
                                                 double known_ground_energy);

// max_W |(L-E)w| <= tol, resp. min_W (L-E)w >= -tol
bool is_solution(const WeightedGraph& g, const GraphFunction& w, double energy,
                 const VertexSubset& on, double tol);
bool is_supersolution(const WeightedGraph& g, const GraphFunction& w, double energy,
                      const VertexSubset& on, double tol);

// ||(L-E)u||_m / ||u||_m; upper bound for dist(E, spec(L)) on finite graphs
double weyl_residual(const WeightedGraph& g, double energy, const GraphFunction& u);

// Family of nested finite truncations of one infinite graph. Vertices are
// identified across truncations by a persistent id (family-specific, e.g.
// the signed offset from the center of a segment of the integer line).
struct TruncationFamily {
    std::function<WeightedGraph(int radius)> make;
    std::function<int(int radius)> center;
    // index of persistent id in the truncation of the given radius
    std::function<std::optional<int>(int radius, int id)> locate;
    // persistent ids of the comparison window
    std::function<std::vector<int>(int core_radius)> core_ids;
};

// Per-truncation super-solution values on a fixed core window, with
// successive sup-differences. Diagnostic for the pointwise-limit argument
// behind exhaustion; not a proof. The construction window in each truncation
// is everything but the outermost shell around the center.
struct ExhaustionRow {
    int radius = 0;
    double truncation_ground_energy = 0.0;
    std::vector<double> core_values;             // ordered like core_ids
    double sup_diff_prev = 0.0;                  // NaN in the first row
};
std::vector<ExhaustionRow> exhaustion_diagnostic(const TruncationFamily& family, double energy,
                                                 const std::vector<int>& radii, int core_radius,
                                                 double tol = 1e-10);

}  // namespace dgs
