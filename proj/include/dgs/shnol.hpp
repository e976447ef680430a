#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "dgs/forms.hpp"
#include "dgs/graph.hpp"

namespace dgs {

// Boundary measures of a subset A, supported exactly on the inner boundaries:
//   mu_A(x)  = sum_{y in dA^c} b(y,x) (sum_{z in dA} b(y,z)) / m(y),  x in dA
//   nu_A(x)  = (sum_{y in dA^c} b(x,y)^2 / m(y))^{1/2},               x in dA
// and the mirrored mu_{A^c}, nu_{A^c} on dA^c. Values are (vertex, value)
// pairs in ascending vertex order.
struct BoundaryReport {
    Boundaries bd;
    std::vector<std::pair<int, double>> mu_on_dA;
    std::vector<std::pair<int, double>> mu_on_dAc;
    std::vector<std::pair<int, double>> nu_on_dA;
    std::vector<std::pair<int, double>> nu_on_dAc;
};
BoundaryReport boundary_measures(const WeightedGraph& g, const VertexSubset& a);

// p(w,A) = (sum_{dA} w^2 mu_A + sum_{dA^c} w^2 mu_{A^c})^{1/2}   (l2-style)
// q(w,A) =  sum_{dA} |w| nu_A + sum_{dA^c} |w| nu_{A^c}          (l1-style)
// Neither is uniformly tighter than the other; both are always reported.
std::pair<double, double> boundary_norms(const WeightedGraph& g, const VertexSubset& a,
                                         const GraphFunction& w);

// Defect of the restriction w_A = w 1_A of a solution w at energy E, computed
// two ways: through the crossing-edge formula
//   (L-E)w_A(x) = (1/m(x)) sum_{y notin A} b(x,y) w(y)   for x in A,
//               = -(1/m(x)) sum_{y in A} b(x,y) w(y)     for x notin A,
// and directly as apply_L(w_A) - E w_A. The two agree exactly when w solves
// (L-E)w = 0; the solution residual of w is gated at tol times term scale.
std::pair<GraphFunction, GraphFunction> restricted_defect(const WeightedGraph& g, double energy,
                                                          const GraphFunction& w,
                                                          const VertexSubset& a,
                                                          double tol = 1e-7);

// Certifies the two defect bounds for a solution w:
//   ||(L-E)w_A||_m <= p(w,A)
//   sum_x |(L-E)w_A(x) v(x)| m(x) <= min(p,q) ||v||_m
// the second over `trials` random v supported on radius-3 balls with entries
// from the seeded generator. Violations raise NumericError; the report keeps
// the tightest observed ratios.
struct DefectBoundReport {
    double p = 0.0;
    double q = 0.0;
    double defect_norm = 0.0;        // ||(L-E)w_A||_m
    double l2_ratio = 0.0;           // defect_norm / p, 0 when p = 0
    double max_pairing_ratio = 0.0;  // max over trials of lhs / (min(p,q) ||v||_m)
    int trials = 0;
};
DefectBoundReport defect_bound_check(const WeightedGraph& g, double energy, const GraphFunction& w,
                                     const VertexSubset& a, int trials,
                                     std::uint64_t seed = 0x5eed, double tol = 1e-7);

// Per-ball record of the boundary norms of w against the growing balls
// B_n around x0, the quotients against ||w 1_{B_n}||_m, and the Weyl
// residual of the truncated function. Small quotients are the desk-scale
// evidence that E is close to the spectrum.
struct ShnolRow {
    int n = 0;
    double norm = 0.0;  // ||w 1_{B_n}||_m
    double p = 0.0;
    double q = 0.0;
    double quot_p = 0.0;
    double quot_q = 0.0;
    double weyl = 0.0;  // weyl_residual(E, w 1_{B_n})
};
struct ShnolReport {
    std::vector<ShnolRow> rows;       // starts at the first n with norm > 0
    double interior_residual = 0.0;   // max |(L-E)w| over ball(x0, max_radius + 1)
};
// Requires max_radius <= eccentricity(x0) - 2 so every boundary sum sees
// only vertices where a truncated solution is exact (rows never touch the
// outermost shell).
ShnolReport shnol_sequence(const WeightedGraph& g, const GraphFunction& w, double energy, int x0,
                           int max_radius);

// q(1_A,A), Q(1_A), p(1_A,A)^2 and the maximal crossing degrees over the two
// boundaries, on graphs normalized to b in {0,1}, m = 1, c = 0 (refused
// otherwise). Asserts both inequality chains
//   q <= Q <= p^2   and   p^2 / deg_A(dA^c) <= Q <= deg_A(dA) q
// (each reverse half only when its boundary is nonempty).
struct CheegerReport {
    double q1 = 0.0;
    double big_q1 = 0.0;
    double p1_sq = 0.0;
    int deg_dA = 0;   // max crossing degree over dA
    int deg_dAc = 0;  // max crossing degree over dA^c
};
CheegerReport cheeger_compare(const WeightedGraph& g, const VertexSubset& a);

// C_b = max_x b(x)/m(x); b(x) <= C_b m(x) for all x, and ||L|| <= 2 C_b
// when c = 0.
struct CbBound {
    double c_b = 0.0;
    int attained_at = 0;
};
CbBound laplace_bound(const WeightedGraph& g);

// Smallest r with J(r+step) <= e^delta J(r), scanning a finite window of a
// nonnegative sequence indexed from 0. Absence within the window is evidence,
// never a disproof: finite data cannot settle "arbitrarily large r".
std::optional<int> subexp_radius(const std::vector<double>& j, int step, double delta);

// Weighted norms ||e^{-alpha d(.,x0)} w||_m with a per-alpha tail diagnostic:
// the last distance shell's share of the largest shell. A small share is the
// finite-window evidence that the weighted function is square-summable.
struct AlphaNormRow {
    double alpha = 0.0;
    double norm = 0.0;
    double tail_ratio = 0.0;
    bool subexponential = false;  // tail_ratio < 0.1
};
// Bracketing row at ball radius n:
//   p(w,B_n)^2 <= C_b^2 (||w_{n+1}||^2 - ||w_{n-1}||^2)
// asserted for every n (it is a pure inequality, no solution property
// needed); the same right side against q^2 is reported without assertion.
struct BoundedShnolRow {
    int n = 0;
    double norm_sq = 0.0;  // ||w 1_{B_n}||_m^2
    double p = 0.0;
    double q = 0.0;
    double bracket_rhs = 0.0;
    bool p_bracket_ok = false;
    bool q_bracket_ok = false;
};
// Radius picked by subexp_radius on J(n) = ||w_n||^2 with step 2 at level
// delta, shifted to the ball index n = r+1 it controls; there
//   (p(w,B_n)/||w_n||)^2 <= C_b^2 (e^delta - 1),
// which is asserted. literal_bound is (e^delta - 1)/||w_n||^2.
struct SubexpPick {
    double delta = 0.0;
    std::optional<int> radius;
    double literal_bound = 0.0;
    double quot_sq_bound = 0.0;
    double actual_quot_sq = 0.0;
};
struct BoundedShnolReport {
    CbBound cb;
    double interior_residual = 0.0;  // max |(L-E)w| off the outermost shell
    std::vector<AlphaNormRow> alpha_rows;
    bool subexponential_evidence = false;  // all alpha rows subexponential
    std::vector<BoundedShnolRow> rows;     // n = 1 .. eccentricity - 1
    std::vector<SubexpPick> picks;
};
BoundedShnolReport bounded_shnol_run(const WeightedGraph& g, const GraphFunction& w, double energy,
                                     int x0, const std::vector<double>& alphas);

}  // namespace dgs
