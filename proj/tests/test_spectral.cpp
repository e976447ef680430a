#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "dgs/fixtures.hpp"
#include "dgs/forms.hpp"
#include "dgs/rng.hpp"
#include "dgs/spectral.hpp"
#include "test_util.hpp"

using namespace dgs;
using namespace dgs::testing;
using doctest::Approx;

TEST_CASE("dense spectrum of the small fixtures") {
    DenseSpectrum p3 = dense_spectrum(make_p3());
    REQUIRE(p3.eigenvalues.size() == 3);
    CHECK(p3.eigenvalues[0] == Approx(0.0).scale(1.0));
    CHECK(p3.eigenvalues[1] == Approx(1.0));
    CHECK(p3.eigenvalues[2] == Approx(3.0));

    DenseSpectrum star = dense_spectrum(make_star(3));
    REQUIRE(star.eigenvalues.size() == 4);
    CHECK(star.eigenvalues[0] == Approx(0.0).scale(1.0));
    CHECK(star.eigenvalues[1] == Approx(1.0));
    CHECK(star.eigenvalues[2] == Approx(1.0));
    CHECK(star.eigenvalues[3] == Approx(4.0));
}

TEST_CASE("dense eigenpairs satisfy the eigenvalue equation") {
    Lcg rng(60);
    for (int rep = 0; rep < 10; ++rep) {
        WeightedGraph g = random_connected_graph(rng, 2 + rng.next_int(20), 0.3, true);
        DenseSpectrum sp = dense_spectrum(g);
        FormContext ctx(g);
        for (std::size_t k = 0; k < sp.eigenvalues.size(); ++k) {
            GraphFunction lu = apply_L(ctx, sp.eigenvectors[k]);
            for (int i = 0; i < g.vertex_count(); ++i)
                lu[i] -= sp.eigenvalues[k] * sp.eigenvectors[k][i];
            CHECK(norm_m(ctx, lu) <= 1e-9 * (1.0 + std::fabs(sp.eigenvalues[k])));
            CHECK(norm_m(ctx, sp.eigenvectors[k]) == Approx(1.0));
        }
    }
}

TEST_CASE("ground_energy on the fixtures") {
    SpectralResult p3 = ground_energy(make_p3());
    CHECK(p3.ground_energy == Approx(0.0).scale(1.0));
    CHECK(p3.residual <= 1e-10);
    for (double v : p3.ground_state) CHECK(v == Approx(1.0 / std::sqrt(3.0)));

    SpectralResult star = ground_energy(make_star(3));
    CHECK(star.ground_energy == Approx(0.0).scale(1.0));

    GraphBuilder two;
    two.add_vertex();
    two.add_vertex();
    CHECK_THROWS_AS(ground_energy(two.build()), NumericError);  // disconnected
}

TEST_CASE("second_eigenvalue by deflation") {
    WeightedGraph p3 = make_p3();
    CHECK(second_eigenvalue(p3, ground_energy(p3)) == Approx(1.0));

    WeightedGraph star = make_star(3);
    CHECK(second_eigenvalue(star, ground_energy(star)) == Approx(1.0));

    WeightedGraph c8 = make_cycle(8);
    CHECK(second_eigenvalue(c8, ground_energy(c8)) ==
          Approx(2.0 - 2.0 * std::cos(2.0 * 3.14159265358979323846 / 8.0)));
}

TEST_CASE("iterative ground energy agrees with the dense oracle") {
    Lcg rng(61);
    for (int rep = 0; rep < 10; ++rep) {
        WeightedGraph g = random_connected_graph(rng, 2 + rng.next_int(40), 0.2, true);
        SpectralResult it = ground_energy(g, 1e-11);
        DenseSpectrum sp = dense_spectrum(g);
        CHECK(std::fabs(it.ground_energy - sp.eigenvalues.front()) <= 1e-9);
        for (double v : it.ground_state) CHECK(v > 0.0);  // Perron positivity
    }
}

TEST_CASE("ground state realizes the variational minimum") {
    Lcg rng(62);
    for (int rep = 0; rep < 5; ++rep) {
        WeightedGraph g = random_connected_graph(rng, 2 + rng.next_int(25), 0.3, true);
        FormContext ctx(g);
        SpectralResult res = ground_energy(g, 1e-11);
        double rq = form_Q(ctx, res.ground_state) /
                    (norm_m(ctx, res.ground_state) * norm_m(ctx, res.ground_state));
        CHECK(std::fabs(rq - res.ground_energy) <= 2e-11 + 1e-12 * std::fabs(rq));
        for (int t = 0; t < 100; ++t) {
            GraphFunction u = random_function(rng, g.vertex_count());
            double nm = norm_m(ctx, u);
            CHECK(form_Q(ctx, u) / (nm * nm) >= res.ground_energy - 1e-11);
        }
    }
}

TEST_CASE("resolvent_solve matches the hand-solved system") {
    WeightedGraph p3 = make_p3();
    GraphFunction u = resolvent_solve(p3, -1.0, {1.0, 0.0, 0.0});
    CHECK(u[0] == Approx(5.0 / 8.0));
    CHECK(u[1] == Approx(1.0 / 4.0));
    CHECK(u[2] == Approx(1.0 / 8.0));

    // constructed right-hand side: phi = (L+1)1 = 1, so u = 1
    Lcg rng(63);
    WeightedGraph g = random_connected_graph(rng, 12, 0.3, true);
    FormContext ctx(g);
    GraphFunction ones(g.vertex_count(), 1.0);
    GraphFunction phi = apply_L(ctx, ones);
    for (int i = 0; i < g.vertex_count(); ++i) phi[i] += 1.0;
    GraphFunction w = resolvent_solve(g, -1.0, phi);
    for (double v : w) CHECK(v == Approx(1.0).epsilon(1e-8));

    CHECK_THROWS_AS(resolvent_solve(p3, 0.0, {1.0, 0.0, 0.0}), NumericError);  // E = E0
    CHECK_THROWS_AS(resolvent_solve(p3, 5.0, {1.0, 0.0, 0.0}), NumericError);  // E > E0
    CHECK_THROWS_AS(resolvent_solve(p3, -1.0, {0.0, 0.0, 0.0}), InputError);   // phi = 0
    CHECK_THROWS_AS(resolvent_solve(p3, -1.0, {-1.0, 0.0, 1.0}), InputError);  // phi < 0
}

TEST_CASE("resolvent is positivity improving") {
    Lcg rng(64);
    for (int rep = 0; rep < 20; ++rep) {
        WeightedGraph g = random_connected_graph(rng, 2 + rng.next_int(25), 0.2, true);
        GraphFunction phi(g.vertex_count(), 0.0);
        phi[rng.next_int(g.vertex_count())] = 1.0;  // single spike
        GraphFunction u = resolvent_solve(g, -0.5, phi);
        for (double v : u) CHECK(v > 0.0);
    }
}

TEST_CASE("construct_supersolution certifies the contract") {
    WeightedGraph p5 = make_path(5);
    SupersolutionCertificate cert = construct_supersolution(p5, -0.5, 2, ball(p5, 2, 1));
    CHECK(cert.w[2] == Approx(1.0));
    double min_slack = *std::min_element(cert.slack.begin(), cert.slack.end());
    CHECK(min_slack >= -1e-8);
    for (double v : cert.w) CHECK(v > 0.0);
    CHECK(is_supersolution(p5, cert.w, -0.5, VertexSubset::full(5), 1e-8));
    CHECK(is_solution(p5, cert.w, -0.5, cert.window, 1e-8));

    // K2, W = {0}, E = -1: (L+1)u = e_1 gives u = (1/3, 2/3), so w = (1, 2)
    WeightedGraph k2 = make_k2();
    SupersolutionCertificate k2c = construct_supersolution(k2, -1.0, 0, VertexSubset(2, {0}));
    CHECK(k2c.w[0] == Approx(1.0));
    CHECK(k2c.w[1] == Approx(2.0));

    CHECK_THROWS_AS(construct_supersolution(p5, 0.0, 2, ball(p5, 2, 1)), NumericError);  // E = E0
    CHECK_THROWS_AS(construct_supersolution(p5, -0.5, 2, VertexSubset::full(5)),
                    InputError);  // W = V leaves no support for phi
    CHECK_THROWS_AS(construct_supersolution(p5, -0.5, 0, ball(p5, 2, 1)),
                    InputError);  // x0 outside W
}

TEST_CASE("is_solution and is_supersolution classify the hand examples") {
    WeightedGraph p3 = make_p3();
    VertexSubset all3 = VertexSubset::full(3);
    CHECK(is_solution(p3, {1.0, 1.0, 1.0}, 0.0, all3, 1e-12));
    CHECK_FALSE(is_solution(p3, {1.0, 2.0, 3.0}, 0.0, all3, 1e-6));  // residual (-1,0,1)
    CHECK(is_supersolution(p3, {1.0, 2.0, 3.0}, 0.0, VertexSubset(3, {1, 2}), 1e-12));

    WeightedGraph star = make_star(3);
    GraphFunction top{1.0, -1.0 / 3.0, -1.0 / 3.0, -1.0 / 3.0};
    CHECK(is_solution(star, top, 4.0, VertexSubset::full(4), 1e-12));
}

TEST_CASE("weyl_residual matches hand values and bounds spectral distance") {
    WeightedGraph p3 = make_p3();
    CHECK(weyl_residual(p3, 0.0, {1.0, 1.0, 1.0}) == Approx(0.0).scale(1.0));
    CHECK(weyl_residual(p3, 0.0, {1.0, 0.0, 0.0}) == Approx(std::sqrt(2.0)));
    CHECK_THROWS_AS(weyl_residual(p3, 0.0, {0.0, 0.0, 0.0}), InputError);

    SpectralResult res = ground_energy(p3, 1e-12);
    CHECK(weyl_residual(p3, res.ground_energy, res.ground_state) <= 1e-11);

    Lcg rng(65);
    for (int rep = 0; rep < 10; ++rep) {
        WeightedGraph g = random_connected_graph(rng, 2 + rng.next_int(30), 0.25, true);
        DenseSpectrum sp = dense_spectrum(g);
        for (int t = 0; t < 10; ++t) {
            GraphFunction u = random_function(rng, g.vertex_count());
            double e = rng.next_in(-1.0, 5.0);
            double dist = 1e300;
            for (double lam : sp.eigenvalues) dist = std::min(dist, std::fabs(e - lam));
            CHECK(weyl_residual(g, e, u) >= dist - 1e-8);
        }
    }
}

TEST_CASE("finite-scale positivity battery around the ground energy") {
    Lcg rng(66);
    for (int rep = 0; rep < 8; ++rep) {
        WeightedGraph g = random_connected_graph(rng, 3 + rng.next_int(12), 0.3, true);
        int n = g.vertex_count();
        SpectralResult res = ground_energy(g, 1e-11);
        VertexSubset window = ball(g, 0, 1);
        if (window.is_full()) window = VertexSubset(n, {0});

        // below E0: super-solutions exist and are strictly positive
        for (int k = 1; k <= 5; ++k) {
            double e = res.ground_energy - 0.15 * k;
            SupersolutionCertificate cert = construct_supersolution(g, e, 0, window, 1e-10);
            for (double v : cert.w) CHECK(v > 0.0);
        }
        // at E0: the Perron pair is a positive solution
        CHECK(is_solution(g, res.ground_state, res.ground_energy, VertexSubset::full(n), 1e-8));
        // above E0: every eigenvector changes sign
        DenseSpectrum sp = dense_spectrum(g);
        for (std::size_t k = 1; k < sp.eigenvalues.size(); ++k) {
            if (sp.eigenvalues[k] <= res.ground_energy + 1e-9) continue;
            double lo = *std::min_element(sp.eigenvectors[k].begin(), sp.eigenvectors[k].end());
            double hi = *std::max_element(sp.eigenvectors[k].begin(), sp.eigenvectors[k].end());
            CHECK(lo < 0.0);
            CHECK(hi > 0.0);
        }
    }
}

TEST_CASE("exhaustion diagnostic on segment truncations is stationary at the core") {
    std::vector<ExhaustionRow> rows = exhaustion_diagnostic(z_family(), -0.1, {5, 10, 20}, 3);
    REQUIRE(rows.size() == 3);
    CHECK(std::isnan(rows[0].sup_diff_prev));
    // the symmetric interior recurrence plus w(center) = 1 pins the whole
    // core independently of the radius, so successive differences sit at
    // solver tolerance rather than showing a geometric Cauchy tail
    CHECK(rows[1].sup_diff_prev <= 1e-10);
    CHECK(rows[2].sup_diff_prev <= 1e-10);
    for (const ExhaustionRow& r : rows) {
        CHECK(r.core_values.size() == 7);  // offsets -3..3
        for (double v : r.core_values) CHECK(v > 0.0);
        CHECK(-0.1 < r.truncation_ground_energy);
    }
}

TEST_CASE("exhaustion diagnostic is exactly stationary for the constant family") {
    WeightedGraph p7 = make_path(7);
    std::vector<ExhaustionRow> rows =
        exhaustion_diagnostic(constant_family(p7, 3), -0.25, {1, 2, 3}, 1);
    REQUIRE(rows.size() == 3);
    CHECK(rows[1].sup_diff_prev <= 1e-12);
    CHECK(rows[2].sup_diff_prev <= 1e-12);
}

TEST_CASE("exhaustion diagnostic on growing stars: leaf value (N+1)/N at E=-1") {
    std::vector<ExhaustionRow> rows = exhaustion_diagnostic(star_family(), -1.0, {3, 5, 8}, 1);
    REQUIRE(rows.size() == 3);
    double prev_leaf = 1e300;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        REQUIRE(rows[i].core_values.size() == 2);  // center, first leaf
        double n_leaves = static_cast<double>(rows[i].radius);
        CHECK(rows[i].core_values[0] == Approx(1.0));
        CHECK(rows[i].core_values[1] == Approx((n_leaves + 1.0) / n_leaves).epsilon(1e-8));
        CHECK(rows[i].core_values[1] < prev_leaf);  // leaf values shrink
        prev_leaf = rows[i].core_values[1];
    }
}

TEST_CASE("exhaustion diagnostic rejects energies above a truncation ground energy") {
    CHECK_THROWS_AS(exhaustion_diagnostic(z_family(), 0.5, {5, 10}, 2), NumericError);
}
