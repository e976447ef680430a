// Acceptance gate: nine numbered criteria, one [PASS]/[FAIL] line each,
// nonzero exit when any fails. Thresholds are pinned literals; desk-scale
// reference numbers come from hand derivations and from frozen oracle runs
// noted next to each check.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "dgs/fixtures.hpp"
#include "dgs/forms.hpp"
#include "dgs/harnack.hpp"
#include "dgs/rng.hpp"
#include "dgs/shnol.hpp"
#include "dgs/spectral.hpp"
#include "test_util.hpp"

using namespace dgs;
using dgs::testing::random_connected_graph;

namespace {

int g_failures = 0;

struct Reporter {
    std::vector<std::string> notes;
    void require(bool ok, const std::string& note) {
        if (!ok) notes.push_back(note);
    }
};

void criterion(int id, const std::string& title, const std::function<void(Reporter&)>& body) {
    Reporter rep;
    try {
        body(rep);
    } catch (const std::exception& e) {
        rep.notes.push_back(std::string("exception: ") + e.what());
    }
    if (rep.notes.empty()) {
        std::printf("[PASS] %d. %s\n", id, title.c_str());
    } else {
        ++g_failures;
        std::string joined;
        std::size_t shown = std::min<std::size_t>(rep.notes.size(), 4);
        for (std::size_t i = 0; i < shown; ++i) joined += (i ? "; " : "") + rep.notes[i];
        if (rep.notes.size() > shown)
            joined += "; (+" + std::to_string(rep.notes.size() - shown) + " more)";
        std::printf("[FAIL] %d. %s: %s\n", id, title.c_str(), joined.c_str());
    }
    std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// -------------------------------------------------------------------------
// 1. fixture spectra and the iterative-vs-dense cross-check
void c1(Reporter& rep) {
    auto t0 = std::chrono::steady_clock::now();

    DenseSpectrum p3 = dense_spectrum(make_path(3));
    const double p3_expected[] = {0.0, 1.0, 3.0};
    for (int k = 0; k < 3; ++k)
        rep.require(std::fabs(p3.eigenvalues[k] - p3_expected[k]) <= 1e-9,
                    "path:3 eigenvalue " + std::to_string(k) + " off");

    DenseSpectrum star = dense_spectrum(make_star(3));
    const double star_expected[] = {0.0, 1.0, 1.0, 4.0};
    for (int k = 0; k < 4; ++k)
        rep.require(std::fabs(star.eigenvalues[k] - star_expected[k]) <= 1e-9,
                    "star:3 eigenvalue " + std::to_string(k) + " off");

    Lcg rng(0xacc1);
    for (int i = 0; i < 50; ++i) {
        int n = 2 + rng.next_int(63);  // up to 64 vertices
        WeightedGraph g = random_connected_graph(rng, n, 0.1, i % 2 == 0);
        double iterative = ground_energy(g, 1e-11).ground_energy;
        double oracle = dense_spectrum(g).eigenvalues.front();
        rep.require(std::fabs(iterative - oracle) <= 1e-9,
                    "graph " + std::to_string(i) + ": |iterative - dense| = " +
                        std::to_string(std::fabs(iterative - oracle)));
    }
    double dt = seconds_since(t0);
    rep.require(dt < 5.0, "runtime " + std::to_string(dt) + " s exceeds the 5 s budget");
}

// -------------------------------------------------------------------------
// 2. ground state representation identity and its super-solution direction
void c2(Reporter& rep) {
    std::vector<WeightedGraph> fixtures;
    for (int n = 2; n <= 6; ++n) fixtures.push_back(make_path(n));
    for (int n = 3; n <= 6; ++n) fixtures.push_back(make_cycle(n));
    for (int n = 1; n <= 4; ++n) fixtures.push_back(make_star(n));
    for (int r = 1; r <= 3; ++r) fixtures.push_back(make_z_segment(r));
    for (int s = 1; s <= 4; ++s)
        fixtures.push_back(make_random_connected(6 + 2 * s, 0.4, 0xf00d + s));

    Lcg rng(0xacc2);
    int fi = 0;
    for (const WeightedGraph& g : fixtures) {
        ++fi;
        FormContext ctx(g);
        int n = g.vertex_count();
        SpectralResult res = ground_energy(g, 1e-11);
        for (int t = 0; t < 100; ++t) {
            GraphFunction u = dgs::testing::random_function(rng, n);
            double q = form_Q(ctx, u);
            double qw = form_Qw(ctx, res.ground_state, u);
            double nm = norm_m(ctx, u);
            double scale = std::max({std::fabs(q), std::fabs(qw),
                                     std::fabs(res.ground_energy) * nm * nm});
            double defect = gsr_defect(ctx, res.ground_state, res.ground_energy, u);
            rep.require(std::fabs(defect) <= 1e-9 * (1.0 + scale),
                        "fixture " + std::to_string(fi) + ": identity defect " +
                            std::to_string(defect));
        }
        // super-solution direction: w = (L-E)^{-1} 1 satisfies (L-E)w = 1 > 0
        for (int k = 1; k <= 10; ++k) {
            double e = res.ground_energy - 0.1 * k;
            GraphFunction w =
                resolvent_solve(g, e, GraphFunction(n, 1.0), 1e-11, res.ground_energy);
            for (int t = 0; t < 10; ++t) {
                GraphFunction u = dgs::testing::random_function(rng, n);
                double q = form_Q(ctx, u);
                double nm = norm_m(ctx, u);
                double scale = std::max(std::fabs(q), std::fabs(e) * nm * nm);
                rep.require(gsr_defect(ctx, w, e, u) >= -1e-9 * (1.0 + scale),
                            "fixture " + std::to_string(fi) +
                                ": negative defect on a super-solution at E = " +
                                std::to_string(e));
            }
        }
    }
}

// -------------------------------------------------------------------------
// 3. Harnack constant: hand values, enumeration oracle, verification, monotone
void c3(Reporter& rep) {
    WeightedGraph p3 = make_path(3);
    VertexSubset all3 = VertexSubset::full(3);
    double c0 = harnack_constant(p3, all3, 0.0).constant;
    double cm1 = harnack_constant(p3, all3, -1.0).constant;
    rep.require(std::fabs(c0 - 2.0) <= 1e-12, "C(0) = " + std::to_string(c0) + ", want 2");
    rep.require(std::fabs(cm1 - 6.0) <= 1e-12, "C(-1) = " + std::to_string(cm1) + ", want 6");

    Lcg rng(0xacc3);
    int compared = 0;
    for (int i = 0; i < 60; ++i) {
        int n = 2 + rng.next_int(7);  // |W| <= 8 keeps the enumeration cheap
        WeightedGraph g = random_connected_graph(rng, n, 0.3, true);
        VertexSubset w = VertexSubset::full(n);
        double e = -rng.next_in(0.0, 2.0);  // c >= 0 and E <= 0: every factor >= 1
        HarnackReport fast = harnack_constant(g, w, e);
        if (fast.method != HarnackMethod::DijkstraFastPath) continue;
        HarnackReport exact = harnack_constant_enumerated(g, w, e);
        rep.require(std::fabs(fast.constant - exact.constant) <=
                        1e-12 * (1.0 + std::fabs(exact.constant)),
                    "fast path disagrees with enumeration on sample " + std::to_string(i));
        ++compared;
    }
    rep.require(compared >= 40, "only " + std::to_string(compared) + " oracle comparisons ran");

    // every resolvent-built super-solution on the grid passes verification
    struct Case {
        WeightedGraph g;
        int x0;
    };
    for (const Case& cs : {Case{make_path(7), 0}, Case{make_cycle(6), 0}, Case{make_star(4), 1}}) {
        double e0 = ground_energy(cs.g).ground_energy;
        VertexSubset window = ball(cs.g, cs.x0, 1);
        for (int k = 1; k <= 4; ++k) {
            double e = e0 - 0.25 * k;
            SupersolutionCertificate cert = construct_supersolution(cs.g, e, cs.x0, window);
            rep.require(harnack_verify(cs.g, window, e, cert.w),
                        "harnack_verify failed at E = " + std::to_string(e));
        }
    }

    // monotone non-increase over a 10-point energy grid
    for (const WeightedGraph& g : {make_path(6), make_star(4)}) {
        VertexSubset w = VertexSubset::full(g.vertex_count());
        double prev = 1e300;
        for (int k = 0; k < 10; ++k) {
            double e = -3.0 + 0.3 * k;
            double c = harnack_constant(g, w, e).constant;
            rep.require(c <= prev + 1e-12, "C_W not monotone at grid point " + std::to_string(k));
            prev = c;
        }
    }
}

// -------------------------------------------------------------------------
// 4. minimum principle: no Violation over 500 fresh certificates
void c4(Reporter& rep) {
    Lcg rng(0xacc4);
    int certificates = 0;
    while (certificates < 500) {
        int n = 3 + rng.next_int(12);
        WeightedGraph g = random_connected_graph(rng, n, 0.2, certificates % 2 == 0);
        VertexSubset window = ball(g, rng.next_int(n), 1 + rng.next_int(2));
        if (window.is_full()) continue;  // the construction needs V \ W nonempty
        double e0 = ground_energy(g).ground_energy;
        double e = e0 - rng.next_in(0.05, 2.0);
        SupersolutionCertificate cert =
            construct_supersolution(g, e, window.members().front(), window, 1e-10, e0);
        MinimumPrincipleResult verdict = minimum_principle_check(g, window, cert.w, e, 1e-8);
        rep.require(verdict != MinimumPrincipleResult::Violation,
                    "Violation at certificate " + std::to_string(certificates));
        rep.require(verdict == MinimumPrincipleResult::AllPositive,
                    "certificate " + std::to_string(certificates) + " not strictly positive");
        ++certificates;
    }
}

// -------------------------------------------------------------------------
// 5. crossing-edge formula and the two defect bounds
void c5(Reporter& rep) {
    // equality case: P3, A = {0,1}, w = 1 has defect norm = p = sqrt(2)
    WeightedGraph p3 = make_path(3);
    DefectBoundReport tight =
        defect_bound_check(p3, 0.0, GraphFunction(3, 1.0), VertexSubset(3, {0, 1}), 50);
    rep.require(std::fabs(tight.defect_norm - std::sqrt(2.0)) <= 1e-12,
                "P3 defect norm " + std::to_string(tight.defect_norm));
    rep.require(std::fabs(tight.p - std::sqrt(2.0)) <= 1e-12, "P3 p " + std::to_string(tight.p));
    rep.require(std::fabs(tight.l2_ratio - 1.0) <= 1e-9, "P3 equality case not tight");

    Lcg rng(0xacc5);
    for (int i = 0; i < 25; ++i) {
        int n = 4 + rng.next_int(17);  // up to 20 vertices
        WeightedGraph g = random_connected_graph(rng, n, 0.2, true);
        DenseSpectrum sp = dense_spectrum(g);
        for (int s = 0; s < 2; ++s) {
            int k = rng.next_int(n);
            VertexSubset a = ball(g, rng.next_int(n), 1 + rng.next_int(2));
            if (a.is_full()) a = VertexSubset(n, {rng.next_int(n)});
            auto [via_formula, direct] =
                restricted_defect(g, sp.eigenvalues[k], sp.eigenvectors[k], a);
            double scale = 0.0;
            double diff = 0.0;
            for (int x = 0; x < n; ++x) {
                scale = std::max(scale, std::fabs(direct[x]));
                diff = std::max(diff, std::fabs(via_formula[x] - direct[x]));
            }
            rep.require(diff <= 1e-10 * (1.0 + scale),
                        "formula mismatch " + std::to_string(diff) + " on sample " +
                            std::to_string(i));
            // the l2 and pairing bounds; a violation throws NumericError
            DefectBoundReport r = defect_bound_check(g, sp.eigenvalues[k], sp.eigenvectors[k], a,
                                                     50, 0xacc5 + static_cast<std::uint64_t>(i));
            rep.require(r.l2_ratio <= 1.0 + 1e-9, "l2 ratio " + std::to_string(r.l2_ratio));
            rep.require(r.max_pairing_ratio <= 1.0 + 1e-9,
                        "pairing ratio " + std::to_string(r.max_pairing_ratio));
        }
    }
}

// -------------------------------------------------------------------------
// 6. comparison chains for indicator functions on unweighted graphs
void c6(Reporter& rep) {
    WeightedGraph p3 = make_path(3);
    CheegerReport tight = cheeger_compare(p3, VertexSubset(3, {0, 1}));
    rep.require(tight.q1 == 1.0 && tight.big_q1 == 1.0 && tight.p1_sq == 1.0,
                "P3 tight case is not exactly (1,1,1)");

    Lcg rng(0xacc6);
    for (int i = 0; i < 200; ++i) {
        int n = 2 + rng.next_int(13);
        WeightedGraph g = random_connected_graph(rng, n, 0.3, false);
        VertexSubset a = dgs::testing::random_proper_subset(rng, n);
        CheegerReport r = cheeger_compare(g, a);  // asserts both chains internally
        rep.require(r.q1 <= r.big_q1 + 1e-12 && r.big_q1 <= r.p1_sq + 1e-12,
                    "forward chain violated on sample " + std::to_string(i));
        if (r.deg_dAc > 0)
            rep.require(r.p1_sq <= r.deg_dAc * r.big_q1 + 1e-12,
                        "reverse chain (p^2 side) violated on sample " + std::to_string(i));
        if (r.deg_dA > 0)
            rep.require(r.big_q1 <= r.deg_dA * r.q1 + 1e-12,
                        "reverse chain (q side) violated on sample " + std::to_string(i));
    }
}

// -------------------------------------------------------------------------
// 7. quotient decay on the segment, thresholds frozen from the oracle run
void c7(Reporter& rep) {
    auto t0 = std::chrono::steady_clock::now();
    const double theta = 3.14159265358979323846 / 3.0;  // E = 2 - 2 cos = 1
    WeightedGraph z = make_z_segment(60);
    ShnolReport r = shnol_sequence(z, z_cos_solution(60, theta), z_cos_energy(theta), 60, 40);

    auto row = [&](int n) -> const ShnolRow& {
        for (const ShnolRow& s : r.rows)
            if (s.n == n) return s;
        throw NumericError("row n = " + std::to_string(n) + " missing");
    };
    // frozen oracle run (radius 60, theta = pi/3):
    //   quot_p(10) = 0.308607, quot_p(40) = 0.157135, ratio 0.509175
    //   quot_q(10) = 0.617213, quot_q(40) = 0.314270, ratio 0.509175
    // p and q stay bounded while ||w_n|| grows like sqrt(n), so the 40-vs-10
    // ratio sits near sqrt(10.5/40.5) = 0.50918; thresholds pinned just above
    double ratio_p = row(40).quot_p / row(10).quot_p;
    double ratio_q = row(40).quot_q / row(10).quot_q;
    rep.require(ratio_p < 0.52, "quot_p(40)/quot_p(10) = " + std::to_string(ratio_p));
    rep.require(ratio_q < 0.52, "quot_q(40)/quot_q(10) = " + std::to_string(ratio_q));
    rep.require(row(40).quot_p < 0.16, "quot_p(40) = " + std::to_string(row(40).quot_p));
    rep.require(row(40).quot_q < 0.32, "quot_q(40) = " + std::to_string(row(40).quot_q));
    rep.require(row(40).weyl < 0.2, "weyl(1, w_40) = " + std::to_string(row(40).weyl));

    // the Weyl residual really does bound the distance to the spectrum here
    DenseSpectrum sp = dense_spectrum(z);
    double dist = 1e300;
    for (double lam : sp.eigenvalues) dist = std::min(dist, std::fabs(1.0 - lam));
    rep.require(dist < row(40).weyl,
                "spectral distance " + std::to_string(dist) + " not below the Weyl residual");

    // growing counterexample: the geometric solution never looks spectral
    ShnolReport geo = shnol_sequence(z, z_geometric_solution(60, 2.0), -0.5, 60, 40);
    double min_weyl = 1e300;
    for (const ShnolRow& s : geo.rows) min_weyl = std::min(min_weyl, s.weyl);
    rep.require(min_weyl > 0.3,
                "geometric solution: min weyl " + std::to_string(min_weyl) + " <= 0.3");

    double dt = seconds_since(t0);
    rep.require(dt < 10.0, "runtime " + std::to_string(dt) + " s exceeds the 10 s budget");
}

// -------------------------------------------------------------------------
// 8. bounded-geometry machinery: bracketing, the r^2 window, norm bound
void c8(Reporter& rep) {
    const double theta = 3.14159265358979323846 / 3.0;
    WeightedGraph z = make_z_segment(80);
    BoundedShnolReport run =
        bounded_shnol_run(z, z_cos_solution(80, theta), z_cos_energy(theta), 80, {0.1, 0.5});
    rep.require(!run.rows.empty(), "no bracketing rows produced");
    for (const BoundedShnolRow& row : run.rows)
        rep.require(row.p_bracket_ok, "bracketing failed at n = " + std::to_string(row.n));

    std::vector<double> jr(60);
    for (int i = 0; i < 60; ++i) jr[i] = static_cast<double>(i) * i;
    std::optional<int> r20 = subexp_radius(jr, 1, 0.1);
    rep.require(r20.has_value() && *r20 == 20,
                "subexp_radius(r^2, 1, 0.1) = " +
                    (r20 ? std::to_string(*r20) : std::string("none")) + ", want 20");

    for (const WeightedGraph& g :
         {make_path(9), make_cycle(7), make_star(5), make_z_segment(10),
          make_random_connected(12, 0.3, 0xacc8)}) {
        double bound = 2.0 * laplace_bound(g).c_b;
        DenseSpectrum sp = dense_spectrum(g);
        rep.require(sp.eigenvalues.front() >= -1e-10 && sp.eigenvalues.back() <= bound + 1e-10,
                    "spectrum escapes [0, 2 C_b]");
    }
}

// -------------------------------------------------------------------------
// 9. star fixture: sign change at the top, no positive solution above E0
void c9(Reporter& rep) {
    for (int leaves : {3, 5, 8}) {
        WeightedGraph star = make_star(leaves);
        DenseSpectrum sp = dense_spectrum(star);
        double top = sp.eigenvalues.back();
        rep.require(std::fabs(top - (leaves + 1.0)) <= 1e-9,
                    "star:" + std::to_string(leaves) + " top eigenvalue " + std::to_string(top));
        GraphFunction v = sp.eigenvectors.back();
        rep.require(std::fabs(v[0]) > 1e-12, "top eigenvector vanishes at the center");
        for (int l = 1; l <= leaves; ++l) {
            double scaled = v[l] / v[0];  // normalize w(center) = 1
            rep.require(std::fabs(scaled + 1.0 / leaves) <= 1e-9,
                        "star:" + std::to_string(leaves) + " leaf value " +
                            std::to_string(scaled) + " != " + std::to_string(-1.0 / leaves));
        }

        // sweep E > E0 = 0: either E misses the spectrum (no solution exists
        // at all) or it hits an eigenvalue whose eigenspace is m-orthogonal
        // to the strictly positive ground state - and a nonnegative
        // nontrivial function cannot be m-orthogonal to a positive one
        SpectralResult ground = ground_energy(star, 1e-11);
        for (double gval : ground.ground_state)
            rep.require(gval > 0.0, "ground state not strictly positive");
        FormContext ctx(star);
        for (int k = 1; k <= 20; ++k) {
            double e = 0.25 * k;
            for (std::size_t i = 0; i < sp.eigenvalues.size(); ++i) {
                if (std::fabs(sp.eigenvalues[i] - e) > 0.05) continue;
                const GraphFunction& u = sp.eigenvectors[i];
                double lo = *std::min_element(u.begin(), u.end());
                double hi = *std::max_element(u.begin(), u.end());
                rep.require(lo < 0.0 && hi > 0.0,
                            "eigenvector at E = " + std::to_string(e) + " has no sign change");
                rep.require(std::fabs(inner_m(ctx, u, ground.ground_state)) <= 1e-9,
                            "eigenvector at E = " + std::to_string(e) +
                                " not orthogonal to the ground state");
            }
        }
    }
}

}  // namespace

int main() {
    criterion(1, "fixture spectra: path {0,1,3}, star {0,1,1,4}, 50-graph dense cross-check", c1);
    criterion(2, "ground state representation identity and super-solution direction", c2);
    criterion(3, "Harnack constant: hand values, enumeration oracle, verification, monotone", c3);
    criterion(4, "minimum principle: 500 certificates, no Violation", c4);
    criterion(5, "crossing-edge formula and both defect bounds, tight case included", c5);
    criterion(6, "indicator comparison chains on 200 random unweighted samples", c6);
    criterion(7, "segment quotient decay at E = 1 and the growing counterexample", c7);
    criterion(8, "bounded-geometry bracketing, r^2 window radius, spectrum in [0, 2 C_b]", c8);
    criterion(9, "star fixture: top eigenvector shape, no positive solution above E0", c9);

    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all 9 criteria passed\n");
    return 0;
}
