#include "dgs/shnol.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dgs/rng.hpp"
#include "dgs/spectral.hpp"

namespace dgs {

namespace {

// max residual scale 1 + max_x (|Lw(x)| + |E||w(x)|), shared by the
// solution gates below
double residual_scale(const GraphFunction& lw, const GraphFunction& w, double energy) {
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i)
        s = std::max(s, std::fabs(lw[i]) + std::fabs(energy) * std::fabs(w[i]));
    return 1.0 + s;
}

// The restricted defect (L-E)(w 1_A) equals the solution residual of w on
// the interior of A, residual + crossing formula on dA, and the crossing
// formula alone off A. Only the residual on A enters the identity and the
// bounds, so the gate scans A and tolerates rim residuals elsewhere (a
// truncated line solution is exact except at the outermost shell).
void check_solution_gate(const WeightedGraph&, double energy, const GraphFunction& w,
                         const GraphFunction& lw, const VertexSubset& a, double tol,
                         const char* who) {
    double gate = tol * residual_scale(lw, w, energy);
    for (int x : a.members()) {
        double r = lw[x] - energy * w[x];
        if (std::fabs(r) > gate)
            throw InputError(std::string(who) + ": w is not a solution at energy; residual " +
                             std::to_string(r) + " at vertex " + std::to_string(x) +
                             " exceeds the gate " + std::to_string(gate));
    }
}

}  // namespace

BoundaryReport boundary_measures(const WeightedGraph& g, const VertexSubset& a) {
    if (a.universe_size() != g.vertex_count())
        throw InputError("subset universe does not match graph");
    BoundaryReport rep;
    rep.bd = boundary(g, a);
    const VertexSubset& da = rep.bd.boundary_in;
    const VertexSubset& dac = rep.bd.boundary_out;

    // crossing mass seen from the far side:
    //   s_towards_a(y in dA^c)  = sum_{z in A} b(y,z)   (all such z lie in dA)
    //   s_towards_ac(y in dA)   = sum_{z in A^c} b(y,z)
    std::vector<double> s_towards_a(g.vertex_count(), 0.0);
    std::vector<double> s_towards_ac(g.vertex_count(), 0.0);
    for (int y : dac.members())
        for (const Edge& e : g.neighbors(y))
            if (a.contains(e.to)) s_towards_a[y] += e.weight;
    for (int y : da.members())
        for (const Edge& e : g.neighbors(y))
            if (!a.contains(e.to)) s_towards_ac[y] += e.weight;

    for (int x : da.members()) {
        double mu = 0.0, nu2 = 0.0;
        for (const Edge& e : g.neighbors(x)) {
            if (a.contains(e.to)) continue;  // only y in dA^c contribute
            mu += e.weight * s_towards_a[e.to] / g.measure(e.to);
            nu2 += e.weight * e.weight / g.measure(e.to);
        }
        rep.mu_on_dA.push_back({x, mu});
        rep.nu_on_dA.push_back({x, std::sqrt(nu2)});
    }
    for (int x : dac.members()) {
        double mu = 0.0, nu2 = 0.0;
        for (const Edge& e : g.neighbors(x)) {
            if (!a.contains(e.to)) continue;  // only y in dA contribute
            mu += e.weight * s_towards_ac[e.to] / g.measure(e.to);
            nu2 += e.weight * e.weight / g.measure(e.to);
        }
        rep.mu_on_dAc.push_back({x, mu});
        rep.nu_on_dAc.push_back({x, std::sqrt(nu2)});
    }
    return rep;
}

std::pair<double, double> boundary_norms(const WeightedGraph& g, const VertexSubset& a,
                                         const GraphFunction& w) {
    if (static_cast<int>(w.size()) != g.vertex_count()) throw InputError("w has wrong length");
    BoundaryReport rep = boundary_measures(g, a);
    double p2 = 0.0, q = 0.0;
    for (const auto& [x, mu] : rep.mu_on_dA) p2 += w[x] * w[x] * mu;
    for (const auto& [x, mu] : rep.mu_on_dAc) p2 += w[x] * w[x] * mu;
    for (const auto& [x, nu] : rep.nu_on_dA) q += std::fabs(w[x]) * nu;
    for (const auto& [x, nu] : rep.nu_on_dAc) q += std::fabs(w[x]) * nu;
    return {std::sqrt(p2), q};
}

std::pair<GraphFunction, GraphFunction> restricted_defect(const WeightedGraph& g, double energy,
                                                          const GraphFunction& w,
                                                          const VertexSubset& a, double tol) {
    const int n = g.vertex_count();
    if (static_cast<int>(w.size()) != n) throw InputError("w has wrong length");
    if (a.universe_size() != n) throw InputError("subset universe does not match graph");
    FormContext ctx(g);
    GraphFunction lw = apply_L(ctx, w);
    check_solution_gate(g, energy, w, lw, a, tol, "restricted_defect");

    GraphFunction via(n, 0.0), direct(n, 0.0);
    for (int x = 0; x < n; ++x) {
        double s = 0.0;
        if (a.contains(x)) {
            for (const Edge& e : g.neighbors(x))
                if (!a.contains(e.to)) s += e.weight * w[e.to];
            via[x] = s / g.measure(x);
        } else {
            for (const Edge& e : g.neighbors(x))
                if (a.contains(e.to)) s += e.weight * w[e.to];
            via[x] = -s / g.measure(x);
        }
    }
    GraphFunction wa(n, 0.0);
    for (int x : a.members()) wa[x] = w[x];
    GraphFunction lwa = apply_L(ctx, wa);
    for (int x = 0; x < n; ++x) direct[x] = lwa[x] - energy * wa[x];
    return {std::move(via), std::move(direct)};
}

DefectBoundReport defect_bound_check(const WeightedGraph& g, double energy, const GraphFunction& w,
                                     const VertexSubset& a, int trials, std::uint64_t seed,
                                     double tol) {
    const int n = g.vertex_count();
    if (static_cast<int>(w.size()) != n) throw InputError("w has wrong length");
    if (a.universe_size() != n) throw InputError("subset universe does not match graph");
    if (trials < 0) throw InputError("trials must be nonnegative");
    FormContext ctx(g);
    GraphFunction lw = apply_L(ctx, w);
    check_solution_gate(g, energy, w, lw, a, tol, "defect_bound_check");

    auto [p, q] = boundary_norms(g, a, w);
    GraphFunction wa(n, 0.0);
    for (int x : a.members()) wa[x] = w[x];
    GraphFunction defect = apply_L(ctx, wa);
    for (int x = 0; x < n; ++x) defect[x] -= energy * wa[x];

    DefectBoundReport rep;
    rep.p = p;
    rep.q = q;
    rep.defect_norm = norm_m(ctx, defect);
    double slack = identity_tolerance(std::max(rep.defect_norm, p));
    if (rep.defect_norm > p + slack)
        throw NumericError("defect norm " + std::to_string(rep.defect_norm) +
                           " exceeds p(w,A) = " + std::to_string(p));
    rep.l2_ratio = p > 0.0 ? rep.defect_norm / p : 0.0;

    double min_pq = std::min(p, q);
    Lcg rng(seed);
    rep.trials = trials;
    GraphFunction v(n);
    for (int t = 0; t < trials; ++t) {
        std::fill(v.begin(), v.end(), 0.0);
        int center = rng.next_int(n);
        VertexSubset support = ball(g, center, 3);
        for (int x : support.members()) v[x] = 2.0 * rng.next_unit() - 1.0;
        double lhs = 0.0;
        for (int x = 0; x < n; ++x) lhs += std::fabs(defect[x] * v[x]) * g.measure(x);
        double rhs = min_pq * norm_m(ctx, v);
        if (lhs > rhs + identity_tolerance(std::max(lhs, rhs)))
            throw NumericError("pairing bound violated: " + std::to_string(lhs) + " > min(p,q)" +
                               "||v|| = " + std::to_string(rhs));
        double ratio = rhs > 0.0 ? lhs / rhs : 0.0;
        rep.max_pairing_ratio = std::max(rep.max_pairing_ratio, ratio);
    }
    return rep;
}

ShnolReport shnol_sequence(const WeightedGraph& g, const GraphFunction& w, double energy, int x0,
                           int max_radius) {
    const int n = g.vertex_count();
    if (static_cast<int>(w.size()) != n) throw InputError("w has wrong length");
    g.check_vertex(x0);
    if (max_radius < 0) throw InputError("max radius must be nonnegative");
    int ecc = eccentricity(g, x0);
    if (max_radius > ecc - 2)
        throw InputError("max radius " + std::to_string(max_radius) +
                         " exceeds eccentricity(x0) - 2 = " + std::to_string(ecc - 2) +
                         "; boundary sums would touch the outermost shell");

    FormContext ctx(g);
    GraphFunction lw = apply_L(ctx, w);
    ShnolReport rep;
    VertexSubset interior = ball(g, x0, max_radius + 1);
    for (int x : interior.members())
        rep.interior_residual =
            std::max(rep.interior_residual, std::fabs(lw[x] - energy * w[x]));

    bool any = false;
    for (int r = 0; r <= max_radius; ++r) {
        VertexSubset b = ball(g, x0, r);
        double norm2 = 0.0;
        for (int x : b.members()) norm2 += w[x] * w[x] * g.measure(x);
        if (norm2 == 0.0) {
            if (any)
                throw NumericError("||w 1_B|| decreased to zero at radius " + std::to_string(r));
            continue;  // leading zero rows skipped
        }
        any = true;
        ShnolRow row;
        row.n = r;
        row.norm = std::sqrt(norm2);
        std::tie(row.p, row.q) = boundary_norms(g, b, w);
        row.quot_p = row.p / row.norm;
        row.quot_q = row.q / row.norm;
        GraphFunction wn(n, 0.0);
        for (int x : b.members()) wn[x] = w[x];
        row.weyl = weyl_residual(g, energy, wn);
        rep.rows.push_back(row);
    }
    if (!any) throw InputError("w vanishes on every ball around x0");
    return rep;
}

CheegerReport cheeger_compare(const WeightedGraph& g, const VertexSubset& a) {
    const int n = g.vertex_count();
    if (a.universe_size() != n) throw InputError("subset universe does not match graph");
    for (int x = 0; x < n; ++x) {
        if (g.measure(x) != 1.0 || g.potential(x) != 0.0)
            throw InputError("cheeger_compare requires m = 1 and c = 0 (refused, not normalized)");
        for (const Edge& e : g.neighbors(x))
            if (e.weight != 1.0)
                throw InputError("cheeger_compare requires unweighted edges b in {0,1}");
    }
    Boundaries bd = boundary(g, a);
    GraphFunction ind(n, 0.0);
    for (int x : a.members()) ind[x] = 1.0;

    CheegerReport rep;
    FormContext ctx(g);
    rep.big_q1 = form_Q(ctx, ind);
    auto [p, q] = boundary_norms(g, a, ind);
    rep.q1 = q;
    rep.p1_sq = p * p;
    for (int x : bd.boundary_in.members()) {
        int deg = 0;
        for (const Edge& e : g.neighbors(x))
            if (!a.contains(e.to)) ++deg;
        rep.deg_dA = std::max(rep.deg_dA, deg);
    }
    for (int x : bd.boundary_out.members()) {
        int deg = 0;
        for (const Edge& e : g.neighbors(x))
            if (a.contains(e.to)) ++deg;
        rep.deg_dAc = std::max(rep.deg_dAc, deg);
    }

    double tol = identity_tolerance(std::max({rep.q1, rep.big_q1, rep.p1_sq}));
    if (rep.q1 > rep.big_q1 + tol || rep.big_q1 > rep.p1_sq + tol)
        throw NumericError("comparison chain q <= Q <= p^2 violated");
    if (!bd.boundary_out.empty() && rep.p1_sq > rep.deg_dAc * rep.big_q1 + tol)
        throw NumericError("reverse chain p^2 <= deg(dA^c) Q violated");
    if (!bd.boundary_in.empty() && rep.big_q1 > rep.deg_dA * rep.q1 + tol)
        throw NumericError("reverse chain Q <= deg(dA) q violated");
    return rep;
}

CbBound laplace_bound(const WeightedGraph& g) {
    CbBound rep;
    for (int x = 0; x < g.vertex_count(); ++x) {
        double v = g.weighted_degree(x) / g.measure(x);
        if (v > rep.c_b) {
            rep.c_b = v;
            rep.attained_at = x;
        }
    }
    return rep;
}

std::optional<int> subexp_radius(const std::vector<double>& j, int step, double delta) {
    if (j.empty()) throw InputError("empty J sequence");
    if (step < 1) throw InputError("step must be positive");
    if (!(delta > 0.0)) throw InputError("delta must be positive");
    for (double v : j)
        if (!(v >= 0.0)) throw InputError("J must be nonnegative");
    double factor = std::exp(delta);
    for (int r = 0; r + step < static_cast<int>(j.size()); ++r)
        if (j[r + step] <= factor * j[r]) return r;
    return std::nullopt;
}

BoundedShnolReport bounded_shnol_run(const WeightedGraph& g, const GraphFunction& w, double energy,
                                     int x0, const std::vector<double>& alphas) {
    const int n = g.vertex_count();
    if (static_cast<int>(w.size()) != n) throw InputError("w has wrong length");
    g.check_vertex(x0);
    if (!is_connected(g)) throw InputError("bounded_shnol_run requires a connected graph");
    for (double a : alphas)
        if (!(a > 0.0)) throw InputError("alphas must be positive");

    BoundedShnolReport rep;
    rep.cb = laplace_bound(g);
    std::vector<int> dist = bfs_distances(g, x0);
    int ecc = *std::max_element(dist.begin(), dist.end());

    FormContext ctx(g);
    GraphFunction lw = apply_L(ctx, w);
    for (int x = 0; x < n; ++x)
        if (dist[x] <= ecc - 1)
            rep.interior_residual =
                std::max(rep.interior_residual, std::fabs(lw[x] - energy * w[x]));

    // shell mass w^2 m per distance, then J(n) = ||w 1_{B_n}||^2 by prefix sums
    std::vector<double> shell(ecc + 1, 0.0);
    for (int x = 0; x < n; ++x) shell[dist[x]] += w[x] * w[x] * g.measure(x);
    std::vector<double> j(ecc + 1, 0.0);
    double acc = 0.0;
    for (int r = 0; r <= ecc; ++r) {
        acc += shell[r];
        j[r] = acc;
    }
    if (acc == 0.0) throw InputError("w is identically zero");

    rep.subexponential_evidence = true;
    for (double alpha : alphas) {
        AlphaNormRow row;
        row.alpha = alpha;
        double total = 0.0, peak = 0.0, last = 0.0;
        for (int r = 0; r <= ecc; ++r) {
            double s = shell[r] * std::exp(-2.0 * alpha * r);
            total += s;
            peak = std::max(peak, s);
            if (r == ecc) last = s;
        }
        row.norm = std::sqrt(total);
        row.tail_ratio = peak > 0.0 ? last / peak : 0.0;
        row.subexponential = row.tail_ratio < 0.1;
        rep.subexponential_evidence = rep.subexponential_evidence && row.subexponential;
        rep.alpha_rows.push_back(row);
    }

    for (int r = 1; r <= ecc - 1; ++r) {
        BoundedShnolRow row;
        row.n = r;
        row.norm_sq = j[r];
        std::tie(row.p, row.q) = boundary_norms(g, ball(g, x0, r), w);
        row.bracket_rhs = rep.cb.c_b * rep.cb.c_b * (j[r + 1] - j[r - 1]);
        double tol = identity_tolerance(std::max(row.p * row.p, row.bracket_rhs));
        row.p_bracket_ok = row.p * row.p <= row.bracket_rhs + tol;
        row.q_bracket_ok = row.q * row.q <= row.bracket_rhs + tol;
        if (!row.p_bracket_ok)
            throw NumericError("bracketing inequality p^2 <= C_b^2 (J(n+1)-J(n-1)) violated at n=" +
                               std::to_string(r));
        rep.rows.push_back(row);
    }

    const double deltas[] = {0.5, 0.25, 0.1, 0.05, 0.02, 0.01};
    for (double delta : deltas) {
        SubexpPick pick;
        pick.delta = delta;
        std::optional<int> r = subexp_radius(j, 2, delta);
        if (r) {
            int nk = *r + 1;  // the ball index controlled by J(r+2) <= e^delta J(r)
            pick.radius = nk;
            double jn = j[nk];
            const BoundedShnolRow& row = rep.rows[nk - 1];
            pick.literal_bound = jn > 0.0 ? (std::expm1(delta)) / jn : 0.0;
            pick.quot_sq_bound = rep.cb.c_b * rep.cb.c_b * std::expm1(delta);
            pick.actual_quot_sq = jn > 0.0 ? row.p * row.p / jn : 0.0;
            if (pick.actual_quot_sq >
                pick.quot_sq_bound + identity_tolerance(pick.quot_sq_bound))
                throw NumericError("diagonal quotient bound violated at picked radius " +
                                   std::to_string(nk));
        }
        rep.picks.push_back(pick);
    }
    return rep;
}

}  // namespace dgs
