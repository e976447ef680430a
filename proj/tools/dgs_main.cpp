// dgs: desk-scale experiments with Dirichlet forms on weighted graphs.
// Subcommands wrap the library pipelines and emit JSON/CSV reports.
// Exit codes: 0 success, 1 input/validation error, 2 numerical/guard failure.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dgs/fixtures.hpp"
#include "dgs/forms.hpp"
#include "dgs/harnack.hpp"
#include "dgs/report_json.hpp"
#include "dgs/rng.hpp"
#include "dgs/shnol.hpp"
#include "dgs/spectral.hpp"

namespace {

using namespace dgs;

struct CommonOpts {
    std::string fixture;
    std::string graph_path;
    double energy = 0.0;
    int x0 = -1;  // -1: fixture default
    int radius = 1;
    int max_radius = -1;
    double tol = 1e-10;
    std::uint64_t seed = 0;
    std::string json_path;
    std::string csv_path;
};

void add_input_options(CLI::App* sub, CommonOpts& o) {
    sub->add_option("--fixture", o.fixture, "generated graph FAMILY:ARGS (path, cycle, star, z, random)");
    sub->add_option("graph", o.graph_path, "graph file (v/e line format)");
    sub->add_option("--tol", o.tol, "solver / gate tolerance");
    sub->add_option("--seed", o.seed, "seed for randomized pieces");
    sub->add_option("--json", o.json_path, "write the JSON report here ('-' for stdout)");
}

WeightedGraph load_input(const CommonOpts& o) {
    if (!o.fixture.empty() && !o.graph_path.empty())
        throw InputError("give either --fixture or a graph file, not both");
    if (!o.fixture.empty()) return parse_fixture(o.fixture, o.seed);
    if (!o.graph_path.empty()) return load_graph_file(o.graph_path);
    throw InputError("no input graph: pass --fixture FAMILY:ARGS or a graph file path");
}

int resolve_x0(const CommonOpts& o) {
    if (o.x0 >= 0) return o.x0;
    return o.fixture.empty() ? 0 : fixture_default_center(o.fixture);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) parts.push_back(cur);
    return parts;
}

VertexSubset parse_window(const WeightedGraph& g, const std::string& window_spec,
                          const CommonOpts& o) {
    if (window_spec == "all") return VertexSubset::full(g.vertex_count());
    if (window_spec == "ball") {
        int x0 = resolve_x0(o);
        g.check_vertex(x0);
        return ball(g, x0, o.radius);
    }
    std::vector<int> members;
    for (const std::string& t : split(window_spec, ',')) {
        try {
            members.push_back(std::stoi(t));
        } catch (...) {
            throw InputError("window spec: expected 'all', 'ball' or a comma list of vertices");
        }
    }
    for (int v : members) g.check_vertex(v);
    return VertexSubset(g.vertex_count(), members);
}

int cmd_spectrum(const CommonOpts& o, bool deflate) {
    WeightedGraph g = load_input(o);
    SpectralResult r = ground_energy(g, o.tol);
    double second = 0.0;
    if (deflate) second = second_eigenvalue(g, r, o.tol);
    std::cout << "E0 = " << json_real(r.ground_energy) << "\n";
    std::cout << "residual = " << json_real(r.residual) << "\n";
    std::cout << "iterations = " << r.iterations << "\n";
    if (deflate) std::cout << "second = " << json_real(second) << "\n";
    if (!o.json_path.empty())
        write_report(o.json_path, spectrum_to_json(g, r, deflate ? &second : nullptr));
    return 0;
}

int cmd_supersol(const CommonOpts& o) {
    WeightedGraph g = load_input(o);
    int x0 = resolve_x0(o);
    g.check_vertex(x0);
    VertexSubset window = ball(g, x0, o.radius);
    SupersolutionCertificate cert = construct_supersolution(g, o.energy, x0, window, o.tol);
    double min_slack = cert.slack.empty() ? 0.0 : *std::min_element(cert.slack.begin(),
                                                                    cert.slack.end());
    std::cout << "energy = " << json_real(cert.energy) << "\n";
    std::cout << "window = ball(" << x0 << ", " << o.radius << "), " << window.size()
              << " vertices\n";
    std::cout << "min slack on window = " << json_real(min_slack) << " (tolerance "
              << json_real(cert.slack_tolerance) << ")\n";
    std::cout << "w > 0 everywhere, w(" << x0 << ") = 1\n";
    if (!o.json_path.empty()) write_report(o.json_path, supersolution_to_json(g, cert));
    return 0;
}

int cmd_harnack(const CommonOpts& o, const std::string& window_spec) {
    WeightedGraph g = load_input(o);
    VertexSubset window = parse_window(g, window_spec, o);
    HarnackReport r = harnack_constant(g, window, o.energy);
    std::cout << "C_W(" << json_real(o.energy) << ") = " << json_real(r.constant) << "\n";
    std::cout << "worst pair = (" << g.label(r.worst_pair.first) << ", "
              << g.label(r.worst_pair.second) << ")\n";
    std::cout << "witness path =";
    for (int v : r.witness_path) std::cout << ' ' << g.label(v);
    std::cout << "\n";
    std::cout << "method = "
              << (r.method == HarnackMethod::DijkstraFastPath ? "dijkstra-fast-path"
                                                              : "exact-enumeration")
              << "\n";
    if (!o.json_path.empty()) write_report(o.json_path, harnack_to_json(g, r));
    return 0;
}

GraphFunction shnol_solution(const WeightedGraph& g, const CommonOpts& o,
                             const std::string& solution_spec, double* expected_energy) {
    std::vector<std::string> parts = split(solution_spec, ':');
    if (parts.size() != 2)
        throw InputError("solution spec must be cos:THETA, geometric:T or file:PATH");
    const std::string& kind = parts[0];
    if (kind == "file") {
        std::ifstream in(parts[1]);
        if (!in) throw InputError("cannot open solution file '" + parts[1] + "'");
        GraphFunction w;
        double v;
        while (in >> v) w.push_back(v);
        if (static_cast<int>(w.size()) != g.vertex_count())
            throw InputError("solution file has " + std::to_string(w.size()) + " values, graph has " +
                             std::to_string(g.vertex_count()) + " vertices");
        return w;
    }
    std::vector<std::string> fparts = split(o.fixture, ':');
    if (fparts.empty() || (fparts[0] != "z" && fparts[0] != "z_segment"))
        throw InputError("cos/geometric solutions are defined on the z fixture; use file:PATH "
                         "for arbitrary graphs");
    int radius = (g.vertex_count() - 1) / 2;
    double val;
    try {
        val = std::stod(parts[1]);
    } catch (...) {
        throw InputError("solution spec: cannot parse parameter '" + parts[1] + "'");
    }
    if (kind == "cos") {
        *expected_energy = z_cos_energy(val);
        return z_cos_solution(radius, val);
    }
    if (kind == "geometric") {
        *expected_energy = z_geometric_energy(val);
        return z_geometric_solution(radius, val);
    }
    throw InputError("unknown solution kind '" + kind + "' (cos, geometric or file)");
}

int cmd_shnol(const CommonOpts& o, const std::string& solution_spec, const std::string& alphas) {
    WeightedGraph g = load_input(o);
    int x0 = resolve_x0(o);
    g.check_vertex(x0);
    double expected = std::nan("");
    GraphFunction w = shnol_solution(g, o, solution_spec, &expected);
    int max_radius = o.max_radius >= 0 ? o.max_radius : eccentricity(g, x0) - 2;

    ShnolReport rep = shnol_sequence(g, w, o.energy, x0, max_radius);
    // consistency gate: the supplied pair (w, E) must solve away from the rim
    {
        FormContext ctx(g);
        GraphFunction lw = apply_L(ctx, w);
        double scale = 0.0;
        for (int x = 0; x < g.vertex_count(); ++x)
            scale = std::max(scale, std::fabs(lw[x]) + std::fabs(o.energy) * std::fabs(w[x]));
        double gate = o.tol * (1.0 + scale);
        if (rep.interior_residual > gate) {
            std::string hint = std::isnan(expected)
                                   ? std::string()
                                   : " (the solution spec solves at energy " +
                                         std::to_string(expected) + ")";
            throw InputError("solution spec inconsistent with energy " +
                             std::to_string(o.energy) + ": interior residual " +
                             std::to_string(rep.interior_residual) + " exceeds gate " +
                             std::to_string(gate) + hint);
        }
    }

    std::string csv = shnol_rows_to_csv(rep.rows);
    if (!o.csv_path.empty())
        write_report(o.csv_path, csv);
    else if (o.json_path.empty())
        std::cout << csv;
    if (!o.json_path.empty()) write_report(o.json_path, shnol_rows_to_json(rep.rows));

    double min_weyl = rep.rows.empty() ? 0.0 : rep.rows[0].weyl;
    int min_n = rep.rows.empty() ? 0 : rep.rows[0].n;
    for (const ShnolRow& r : rep.rows)
        if (r.weyl < min_weyl) {
            min_weyl = r.weyl;
            min_n = r.n;
        }
    std::cerr << "interior residual = " << json_real(rep.interior_residual) << "\n";
    if (min_weyl > 0.25)
        std::cerr << "no spectral evidence at E = " << json_real(o.energy)
                  << ": min Weyl residual " << json_real(min_weyl) << " at n = " << min_n << "\n";
    else
        std::cerr << "spectral evidence: Weyl residual " << json_real(min_weyl)
                  << " at n = " << min_n << "\n";

    if (!alphas.empty()) {
        std::vector<double> avals;
        for (const std::string& t : split(alphas, ',')) {
            try {
                avals.push_back(std::stod(t));
            } catch (...) {
                throw InputError("cannot parse alpha list '" + alphas + "'");
            }
        }
        BoundedShnolReport b = bounded_shnol_run(g, w, o.energy, x0, avals);
        std::cerr << "C_b = " << json_real(b.cb.c_b) << " at vertex " << b.cb.attained_at << "\n";
        for (const AlphaNormRow& r : b.alpha_rows)
            std::cerr << "alpha = " << json_real(r.alpha) << ": norm = " << json_real(r.norm)
                      << ", tail ratio = " << json_real(r.tail_ratio)
                      << (r.subexponential ? "" : "  [not subexponential]") << "\n";
        std::cerr << "subexponential evidence: " << (b.subexponential_evidence ? "yes" : "no")
                  << "\n";
        std::cerr << "bracketing p^2 <= C_b^2 (J(n+1)-J(n-1)): holds at all " << b.rows.size()
                  << " radii\n";
        for (const SubexpPick& p : b.picks) {
            std::cerr << "delta = " << json_real(p.delta) << ": ";
            if (p.radius)
                std::cerr << "radius " << *p.radius
                          << ", quotient^2 bound = " << json_real(p.quot_sq_bound)
                          << ", actual = " << json_real(p.actual_quot_sq) << "\n";
            else
                std::cerr << "no radius in window (evidence absent, not a disproof)\n";
        }
    }
    return 0;
}

int cmd_gsr_check(const CommonOpts& o, int trials) {
    if (trials < 1) throw InputError("trials must be positive");
    WeightedGraph g = load_input(o);
    SpectralResult r = ground_energy(g, std::min(o.tol, 1e-10));
    FormContext ctx(g);
    Lcg rng(o.seed);
    double max_defect = 0.0, max_scale = 0.0;
    GraphFunction u(g.vertex_count());
    for (int t = 0; t < trials; ++t) {
        for (double& v : u) v = rng.next_symmetric();
        max_defect = std::max(max_defect, std::fabs(gsr_defect(ctx, r.ground_state,
                                                               r.ground_energy, u)));
        double nu = norm_m(ctx, u);
        max_scale = std::max(max_scale, form_Q(ctx, u) + std::fabs(r.ground_energy) * nu * nu);
    }
    double tolerance = identity_tolerance(max_scale);
    std::cout << "trials = " << trials << "\n";
    std::cout << "max |Q(u) - Q_w(u) - E0 ||u||^2| = " << json_real(max_defect) << "\n";
    std::cout << "tolerance = " << json_real(tolerance) << "\n";
    if (max_defect > tolerance)
        throw NumericError("ground state representation identity violated: max defect " +
                           std::to_string(max_defect));
    std::cout << "pass\n";
    return 0;
}

int cmd_boundary(const CommonOpts& o, const std::string& set_spec, bool cheeger) {
    WeightedGraph g = load_input(o);
    VertexSubset a = set_spec.empty()
                         ? ball(g, resolve_x0(o), o.radius)
                         : parse_window(g, set_spec, o);
    BoundaryReport rep = boundary_measures(g, a);
    CheegerReport ch;
    if (cheeger) ch = cheeger_compare(g, a);
    auto print_map = [&](const char* name, const std::vector<std::pair<int, double>>& kv) {
        std::cout << name << ":";
        if (kv.empty()) std::cout << " (empty)";
        for (const auto& [x, v] : kv) std::cout << ' ' << g.label(x) << " -> " << json_real(v);
        std::cout << "\n";
    };
    std::cout << "A = " << a.size() << " vertices, dA = " << rep.bd.boundary_in.size()
              << ", dA^c = " << rep.bd.boundary_out.size() << "\n";
    print_map("mu on dA", rep.mu_on_dA);
    print_map("mu on dA^c", rep.mu_on_dAc);
    print_map("nu on dA", rep.nu_on_dA);
    print_map("nu on dA^c", rep.nu_on_dAc);
    if (cheeger)
        std::cout << "cheeger: q = " << json_real(ch.q1) << " <= Q = " << json_real(ch.big_q1)
                  << " <= p^2 = " << json_real(ch.p1_sq) << " (deg dA = " << ch.deg_dA
                  << ", deg dA^c = " << ch.deg_dAc << ")\n";
    if (!o.json_path.empty())
        write_report(o.json_path, boundary_to_json(g, rep, cheeger ? &ch : nullptr));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dgs: Dirichlet forms, Harnack constants and Shnol diagnostics on weighted "
                 "graphs"};
    app.require_subcommand(1);

    CommonOpts o;
    bool deflate = false;
    int trials = 100;
    bool cheeger = false;
    std::string window_spec, solution_spec, set_spec, alphas;

    CLI::App* sp = app.add_subcommand("spectrum", "ground energy E0 and ground state");
    add_input_options(sp, o);
    sp->add_flag("--deflate", deflate, "also compute the second eigenvalue");

    CLI::App* su = app.add_subcommand("supersol",
                                      "positive super-solution from the resolvent");
    add_input_options(su, o);
    su->add_option("-E,--energy", o.energy, "energy, strictly below E0")->required();
    su->add_option("--x0", o.x0, "normalization vertex (fixture center by default)");
    su->add_option("-r,--radius", o.radius, "window = ball(x0, radius)");

    CLI::App* ha = app.add_subcommand("harnack", "Harnack constant C_W(E) with witness");
    add_input_options(ha, o);
    ha->add_option("-E,--energy", o.energy, "energy")->required();
    ha->add_option("--window", window_spec, "'all', 'ball' (with --x0/-r) or a vertex list")
        ->required();
    ha->add_option("--x0", o.x0, "ball center for --window ball");
    ha->add_option("-r,--radius", o.radius, "ball radius for --window ball");

    CLI::App* sh = app.add_subcommand("shnol", "boundary-norm quotients along balls");
    add_input_options(sh, o);
    sh->add_option("-E,--energy", o.energy, "energy the solution is tested against")->required();
    sh->add_option("--solution", solution_spec, "cos:THETA | geometric:T | file:PATH")
        ->required();
    sh->add_option("--x0", o.x0, "ball center (fixture center by default)");
    sh->add_option("--max-radius", o.max_radius, "largest ball radius (eccentricity-2 default)");
    sh->add_option("--csv", o.csv_path, "write the CSV table here ('-' for stdout)");
    sh->add_option("--alphas", alphas, "comma list: also run the bounded-operator machinery");

    CLI::App* gc = app.add_subcommand("gsr-check",
                                      "ground state representation identity on random u");
    add_input_options(gc, o);
    gc->add_option("--trials", trials, "number of random test functions");

    CLI::App* bo = app.add_subcommand("boundary", "boundary measures of a vertex set");
    add_input_options(bo, o);
    bo->add_option("--set", set_spec, "'all', 'ball' or a vertex list (default: ball)");
    bo->add_option("--x0", o.x0, "ball center");
    bo->add_option("-r,--radius", o.radius, "ball radius");
    bo->add_flag("--cheeger", cheeger, "also run the comparison chain (unweighted graphs only)");

    try {
        app.parse(argc, argv);
        if (sp->parsed()) return cmd_spectrum(o, deflate);
        if (su->parsed()) return cmd_supersol(o);
        if (ha->parsed()) return cmd_harnack(o, window_spec);
        if (sh->parsed()) return cmd_shnol(o, solution_spec, alphas);
        if (gc->parsed()) return cmd_gsr_check(o, trials);
        if (bo->parsed()) return cmd_boundary(o, set_spec, cheeger);
        return 1;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
