#include "dgs/spectral.hpp"

#include "dgs/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace dgs {

namespace {

// S = M^{-1/2} (Laplacian + c) M^{-1/2}, the symmetrized operator. Euclidean
// eigenpairs of S map to m-orthonormal eigenpairs of L via w = M^{-1/2} v.
struct SymmetrizedOp {
    const WeightedGraph* g;
    std::vector<double> diag;     // (b(x)+c(x))/m(x)
    std::vector<double> inv_sqm;  // 1/sqrt(m(x))

    explicit SymmetrizedOp(const WeightedGraph& graph) : g(&graph) {
        const int n = graph.vertex_count();
        diag.resize(n);
        inv_sqm.resize(n);
        for (int x = 0; x < n; ++x) {
            diag[x] = (graph.weighted_degree(x) + graph.potential(x)) / graph.measure(x);
            inv_sqm[x] = 1.0 / std::sqrt(graph.measure(x));
        }
    }

    void apply(const std::vector<double>& v, std::vector<double>& out) const {
        const int n = g->vertex_count();
        for (int x = 0; x < n; ++x) {
            double s = diag[x] * v[x];
            for (const Edge& e : g->neighbors(x))
                s -= e.weight * inv_sqm[x] * inv_sqm[e.to] * v[e.to];
            out[x] = s;
        }
    }

    // Gershgorin bound on the spectrum of S
    double upper_bound() const {
        const int n = g->vertex_count();
        double hi = 0.0;
        for (int x = 0; x < n; ++x) {
            double row = diag[x];
            for (const Edge& e : g->neighbors(x)) row += e.weight * inv_sqm[x] * inv_sqm[e.to];
            hi = std::max(hi, row);
        }
        return hi;
    }

    std::vector<double> dense() const {
        const int n = g->vertex_count();
        std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
        for (int x = 0; x < n; ++x) {
            a[static_cast<std::size_t>(x) * n + x] = diag[x];
            for (const Edge& e : g->neighbors(x))
                a[static_cast<std::size_t>(x) * n + e.to] =
                    -e.weight * inv_sqm[x] * inv_sqm[e.to];
        }
        return a;
    }
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

// in-place lower Cholesky of the row-major n x n matrix; false on a
// nonpositive pivot (matrix not positive definite)
bool cholesky_factor(std::vector<double>& a, int n) {
    for (int j = 0; j < n; ++j) {
        double d = a[static_cast<std::size_t>(j) * n + j];
        for (int k = 0; k < j; ++k) {
            double l = a[static_cast<std::size_t>(j) * n + k];
            d -= l * l;
        }
        if (!(d > 0.0)) return false;
        d = std::sqrt(d);
        a[static_cast<std::size_t>(j) * n + j] = d;
        for (int i = j + 1; i < n; ++i) {
            double s = a[static_cast<std::size_t>(i) * n + j];
            for (int k = 0; k < j; ++k)
                s -= a[static_cast<std::size_t>(i) * n + k] *
                     a[static_cast<std::size_t>(j) * n + k];
            a[static_cast<std::size_t>(i) * n + j] = s / d;
        }
    }
    return true;
}

void cholesky_solve(const std::vector<double>& l, int n, std::vector<double>& x) {
    for (int i = 0; i < n; ++i) {
        double s = x[i];
        for (int k = 0; k < i; ++k) s -= l[static_cast<std::size_t>(i) * n + k] * x[k];
        x[i] = s / l[static_cast<std::size_t>(i) * n + i];
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = x[i];
        for (int k = i + 1; k < n; ++k) s -= l[static_cast<std::size_t>(k) * n + i] * x[k];
        x[i] = s / l[static_cast<std::size_t>(i) * n + i];
    }
}

struct CgOutcome {
    bool converged = false;
    bool indefinite = false;
    int iterations = 0;
};

// Conjugate gradients for an SPD operator in the inner product given by
// `dotf`. x holds the initial guess and the result.
template <class MatVec, class Dot>
CgOutcome cg_solve(const MatVec& apply, const Dot& dotf, const std::vector<double>& b,
                   std::vector<double>& x, double rel_tol, int max_iter) {
    const std::size_t n = b.size();
    std::vector<double> ax(n), r(n), p(n), ap(n);
    apply(x, ax);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - ax[i];
    double bnorm = std::sqrt(dotf(b, b));
    if (bnorm == 0.0) {
        std::fill(x.begin(), x.end(), 0.0);
        return {true, false, 0};
    }
    double rr = dotf(r, r);
    if (std::sqrt(rr) <= rel_tol * bnorm) return {true, false, 0};
    p = r;
    for (int it = 1; it <= max_iter; ++it) {
        apply(p, ap);
        double pap = dotf(p, ap);
        if (!(pap > 0.0)) return {false, true, it};
        double alpha = rr / pap;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        double rr_new = dotf(r, r);
        if (std::sqrt(rr_new) <= rel_tol * bnorm) return {true, false, it};
        double beta = rr_new / rr;
        for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
        rr = rr_new;
    }
    return {false, false, max_iter};
}

struct EigIterOutcome {
    double eigenvalue = 0.0;
    std::vector<double> vec;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Shifted inverse iteration with Rayleigh-quotient acceleration on a dense
// symmetric PSD matrix. The shift approaches the smallest eigenvalue from
// below; a failed Cholesky factorization signals an overshoot and backs the
// shift off toward the last safe value.
EigIterOutcome smallest_eigenpair_dense(const std::vector<double>& s, int n,
                                        std::vector<double> x, double tol, double upper) {
    double nx = norm2(x);
    for (double& v : x) v /= nx;
    double sigma_safe = -0.01 * (1.0 + upper);
    double sigma = sigma_safe;
    std::vector<double> work, y(n), ax(n);
    EigIterOutcome out;
    for (int it = 1; it <= 300; ++it) {
        out.iterations = it;
        work = s;
        for (int i = 0; i < n; ++i) work[static_cast<std::size_t>(i) * n + i] -= sigma;
        if (!cholesky_factor(work, n)) {
            sigma = 0.5 * (sigma + sigma_safe);
            continue;
        }
        y = x;
        cholesky_solve(work, n, y);
        double ny = norm2(y);
        if (!(ny > 0.0) || !std::isfinite(ny)) {
            sigma = 0.5 * (sigma + sigma_safe);
            continue;
        }
        for (int i = 0; i < n; ++i) x[i] = y[i] / ny;
        // rho and residual from the unshifted matrix
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int j = 0; j < n; ++j) acc += s[static_cast<std::size_t>(i) * n + j] * x[j];
            ax[i] = acc;
        }
        double rho = dot(x, ax);
        double res = 0.0;
        for (int i = 0; i < n; ++i) {
            double d = ax[i] - rho * x[i];
            res += d * d;
        }
        res = std::sqrt(res);
        out.eigenvalue = rho;
        out.vec = x;
        out.residual = res;
        if (res <= tol) {
            out.converged = true;
            return out;
        }
        double cand = rho - std::max(4.0 * res, 1e-14 * (1.0 + std::fabs(rho)));
        if (cand > sigma) {
            sigma_safe = sigma;
            sigma = cand;
        }
    }
    return out;
}

// Same iteration with conjugate-gradient inner solves; for graphs too large
// to factor densely.
EigIterOutcome smallest_eigenpair_cg(const SymmetrizedOp& op, std::vector<double> x, double tol) {
    const int n = static_cast<int>(x.size());
    double nx = norm2(x);
    for (double& v : x) v /= nx;
    double sigma_safe = -0.01 * (1.0 + op.upper_bound());
    double sigma = sigma_safe;
    std::vector<double> y(n), ax(n);
    EigIterOutcome out;
    for (int it = 1; it <= 300; ++it) {
        out.iterations = it;
        auto shifted = [&](const std::vector<double>& v, std::vector<double>& o) {
            op.apply(v, o);
            for (int i = 0; i < n; ++i) o[i] -= sigma * v[i];
        };
        y = x;
        CgOutcome cg = cg_solve(shifted, dot, x, y, 1e-10, 40 * n + 200);
        if (cg.indefinite) {
            sigma = 0.5 * (sigma + sigma_safe);
            continue;
        }
        double ny = norm2(y);
        if (!(ny > 0.0) || !std::isfinite(ny)) {
            sigma = 0.5 * (sigma + sigma_safe);
            continue;
        }
        for (int i = 0; i < n; ++i) x[i] = y[i] / ny;
        op.apply(x, ax);
        double rho = dot(x, ax);
        double res = 0.0;
        for (int i = 0; i < n; ++i) {
            double d = ax[i] - rho * x[i];
            res += d * d;
        }
        res = std::sqrt(res);
        out.eigenvalue = rho;
        out.vec = x;
        out.residual = res;
        if (res <= tol) {
            out.converged = true;
            return out;
        }
        double cand = rho - std::max(4.0 * res, 1e-14 * (1.0 + std::fabs(rho)));
        if (cand > sigma) {
            sigma_safe = sigma;
            sigma = cand;
        }
    }
    return out;
}

constexpr int kDenseFactorLimit = 512;

EigIterOutcome smallest_eigenpair(const SymmetrizedOp& op, std::vector<double> start, double tol,
                                  const std::vector<double>* rank1_dir, double rank1_weight) {
    const int n = static_cast<int>(start.size());
    if (n <= kDenseFactorLimit) {
        std::vector<double> s = op.dense();
        if (rank1_dir) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    s[static_cast<std::size_t>(i) * n + j] +=
                        rank1_weight * (*rank1_dir)[i] * (*rank1_dir)[j];
        }
        return smallest_eigenpair_dense(s, n, std::move(start), tol,
                                        op.upper_bound() + std::fabs(rank1_weight));
    }
    if (!rank1_dir) return smallest_eigenpair_cg(op, std::move(start), tol);
    throw NumericError("second eigenvalue for graphs above the dense limit is not supported");
}

}  // namespace

DenseSpectrum dense_spectrum(const WeightedGraph& g) {
    const int n = g.vertex_count();
    SymmetrizedOp op(g);
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    for (int x = 0; x < n; ++x) {
        a[x][x] = op.diag[x];
        for (const Edge& e : g.neighbors(x))
            a[x][e.to] = -e.weight * op.inv_sqm[x] * op.inv_sqm[e.to];
    }
    std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) v[i][i] = 1.0;

    double scale = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) scale += a[i][j] * a[i][j];
    scale = std::sqrt(scale);
    const double stop = 1e-15 * (1.0 + scale);

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        if (std::sqrt(off) <= stop) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = a[p][q];
                if (std::fabs(apq) <= 1e-300) continue;
                double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(1.0 + theta * theta));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return a[i][i] < a[j][j]; });

    DenseSpectrum out;
    out.eigenvalues.resize(n);
    out.eigenvectors.assign(n, GraphFunction(n));
    for (int k = 0; k < n; ++k) {
        int col = order[k];
        out.eigenvalues[k] = a[col][col];
        for (int i = 0; i < n; ++i) out.eigenvectors[k][i] = v[i][col] * op.inv_sqm[i];
    }
    return out;
}

SpectralResult ground_energy(const WeightedGraph& g, double tol) {
    if (!(tol > 0.0)) throw InputError("tolerance must be positive");
    if (!is_connected(g))
        throw NumericError("ground_energy requires a connected graph (Perron uniqueness is lost)");
    const int n = g.vertex_count();
    SymmetrizedOp op(g);
    // positive start vector: guaranteed overlap with the Perron direction
    std::vector<double> start(n);
    for (int x = 0; x < n; ++x) start[x] = 1.0 / op.inv_sqm[x];
    EigIterOutcome eig = smallest_eigenpair(op, std::move(start), tol, nullptr, 0.0);
    if (!eig.converged)
        throw NumericError("ground_energy did not converge within the iteration cap (residual " +
                           std::to_string(eig.residual) + ")");
    SpectralResult out;
    out.ground_energy = eig.eigenvalue;
    out.residual = eig.residual;
    out.iterations = eig.iterations;
    out.ground_state.resize(n);
    double sign = eig.vec[0] >= 0.0 ? 1.0 : -1.0;
    for (int x = 0; x < n; ++x) out.ground_state[x] = sign * eig.vec[x] * op.inv_sqm[x];
    for (int x = 0; x < n; ++x)
        if (!(out.ground_state[x] > 0.0))
            throw NumericError("computed ground state is not entrywise positive at vertex " +
                               std::to_string(x));
    return out;
}

double second_eigenvalue(const WeightedGraph& g, const SpectralResult& ground, double tol) {
    const int n = g.vertex_count();
    if (n < 2) throw InputError("graph has no second eigenvalue");
    SymmetrizedOp op(g);
    // symmetrized ground direction (Euclidean-normalized)
    std::vector<double> v0(n);
    for (int x = 0; x < n; ++x) v0[x] = ground.ground_state[x] / op.inv_sqm[x];
    double nv = norm2(v0);
    for (double& v : v0) v /= nv;
    // deflate by shifting the ground direction above the top of the spectrum
    double mu = (op.upper_bound() - ground.ground_energy) + 1.0;
    // deterministic pseudo-random start, projected off v0: a basis vector can
    // be orthogonal to an entire eigenspace on symmetric graphs (star leaves)
    Lcg rng(0x5eca11);
    std::vector<double> start(n);
    for (;;) {
        for (double& v : start) v = rng.next_symmetric();
        double proj = dot(start, v0);
        for (int i = 0; i < n; ++i) start[i] -= proj * v0[i];
        if (norm2(start) > 1e-8) break;
    }
    EigIterOutcome eig = smallest_eigenpair(op, std::move(start), tol, &v0, mu);
    if (!eig.converged)
        throw NumericError("second_eigenvalue did not converge within the iteration cap");
    return eig.eigenvalue;
}

GraphFunction resolvent_solve(const WeightedGraph& g, double energy, const GraphFunction& phi,
                              double tol) {
    SpectralResult sr = ground_energy(g, std::min(tol, 1e-10));
    return resolvent_solve(g, energy, phi, tol, sr.ground_energy);
}

GraphFunction resolvent_solve(const WeightedGraph& g, double energy, const GraphFunction& phi,
                              double tol, double known_ground_energy) {
    const int n = g.vertex_count();
    if (static_cast<int>(phi.size()) != n) throw InputError("phi has wrong length");
    if (!(tol > 0.0)) throw InputError("tolerance must be positive");
    if (!is_connected(g)) throw InputError("resolvent_solve requires a connected graph");
    bool nontrivial = false;
    for (int x = 0; x < n; ++x) {
        if (!(phi[x] >= 0.0) || !std::isfinite(phi[x]))
            throw InputError("phi must be nonnegative and finite");
        if (phi[x] > 0.0) nontrivial = true;
    }
    if (!nontrivial) throw InputError("phi must be nontrivial");
    if (energy > known_ground_energy - resolvent_margin(tol))
        throw NumericError("energy " + std::to_string(energy) +
                           " is too close to or above the ground energy " +
                           std::to_string(known_ground_energy) +
                           " (the shifted system is not safely positive definite)");

    FormContext ctx(g);
    auto apply = [&](const std::vector<double>& v, std::vector<double>& out) {
        GraphFunction lv = apply_L(ctx, v);
        for (int i = 0; i < n; ++i) out[i] = lv[i] - energy * v[i];
    };
    auto mdot = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += a[i] * b[i] * g.measure(i);
        return s;
    };
    double phinorm = std::sqrt(mdot(phi, phi));
    GraphFunction u(n, 0.0);
    const int max_iter = 400 * n + 2000;
    for (int attempt = 0; attempt < 4; ++attempt) {
        CgOutcome cg = cg_solve(apply, mdot, phi, u, 0.5 * tol, max_iter);
        if (cg.indefinite)
            throw NumericError("resolvent system is not positive definite at energy " +
                               std::to_string(energy));
        // certify with the true residual, not the recurrence
        std::vector<double> au(n);
        apply(u, au);
        double res = 0.0;
        for (int i = 0; i < n; ++i) {
            double d = au[i] - phi[i];
            res += d * d * g.measure(i);
        }
        if (std::sqrt(res) <= tol * phinorm) {
            for (int x = 0; x < n; ++x)
                if (!(u[x] > 0.0))
                    throw NumericError(
                        "resolvent output is not strictly positive at vertex " +
                        std::to_string(x) + " (positivity-improving contract violated)");
            return u;
        }
        if (!cg.converged && attempt == 3)
            throw NumericError("resolvent_solve did not converge within the iteration cap");
    }
    throw NumericError("resolvent_solve could not certify the requested tolerance");
}

SupersolutionCertificate construct_supersolution(const WeightedGraph& g, double energy, int x0,
                                                 const VertexSubset& window, double tol) {
    SpectralResult sr = ground_energy(g, std::min(tol, 1e-10));
    return construct_supersolution(g, energy, x0, window, tol, sr.ground_energy);
}

SupersolutionCertificate construct_supersolution(const WeightedGraph& g, double energy, int x0,
                                                 const VertexSubset& window, double tol,
                                                 double known_ground_energy) {
    const int n = g.vertex_count();
    g.check_vertex(x0);
    if (window.universe_size() != n) throw InputError("window universe does not match graph");
    if (!window.contains(x0))
        throw InputError("normalization vertex " + std::to_string(x0) + " must lie in the window");
    if (window.is_full())
        throw InputError("window equals the whole vertex set; no support remains for the source");

    GraphFunction phi(n, 0.0);
    VertexSubset support = window.complement();
    for (int x : support.members()) phi[x] = 1.0;
    GraphFunction u = resolvent_solve(g, energy, phi, tol, known_ground_energy);
    double scale = u[x0];
    SupersolutionCertificate cert;
    cert.energy = energy;
    cert.window = window;
    cert.normalization_vertex = x0;
    cert.w.resize(n);
    for (int x = 0; x < n; ++x) cert.w[x] = u[x] / scale;

    FormContext ctx(g);
    GraphFunction lw = apply_L(ctx, cert.w);
    double min_m = *std::min_element(g.measures().begin(), g.measures().end());
    double phinorm = 0.0;
    for (int x = 0; x < n; ++x) phinorm += phi[x] * phi[x] * g.measure(x);
    phinorm = std::sqrt(phinorm);
    cert.slack_tolerance = 10.0 * tol * phinorm / (std::sqrt(min_m) * scale);

    cert.slack.reserve(window.size());
    double min_slack = std::numeric_limits<double>::infinity();
    for (int x : window.members()) {
        double s = lw[x] - energy * cert.w[x];
        cert.slack.push_back(s);
        min_slack = std::min(min_slack, s);
    }
    if (min_slack < -cert.slack_tolerance)
        throw NumericError("super-solution slack " + std::to_string(min_slack) +
                           " below tolerance on the window");
    for (int x = 0; x < n; ++x)
        if (lw[x] - energy * cert.w[x] < -cert.slack_tolerance)
            throw NumericError("super-solution inequality violated outside the window at vertex " +
                               std::to_string(x));
    return cert;
}

bool is_solution(const WeightedGraph& g, const GraphFunction& w, double energy,
                 const VertexSubset& on, double tol) {
    FormContext ctx(g);
    GraphFunction lw = apply_L(ctx, w);
    for (int x : on.members())
        if (std::fabs(lw[x] - energy * w[x]) > tol) return false;
    return true;
}

bool is_supersolution(const WeightedGraph& g, const GraphFunction& w, double energy,
                      const VertexSubset& on, double tol) {
    FormContext ctx(g);
    GraphFunction lw = apply_L(ctx, w);
    for (int x : on.members())
        if (lw[x] - energy * w[x] < -tol) return false;
    return true;
}

double weyl_residual(const WeightedGraph& g, double energy, const GraphFunction& u) {
    FormContext ctx(g);
    double nu = norm_m(ctx, u);
    if (nu == 0.0) throw InputError("weyl_residual of the zero function");
    GraphFunction lu = apply_L(ctx, u);
    for (int x = 0; x < g.vertex_count(); ++x) lu[x] -= energy * u[x];
    return norm_m(ctx, lu) / nu;
}

std::vector<ExhaustionRow> exhaustion_diagnostic(const TruncationFamily& family, double energy,
                                                 const std::vector<int>& radii, int core_radius,
                                                 double tol) {
    if (radii.empty()) throw InputError("exhaustion_diagnostic needs at least one radius");
    std::vector<int> ids = family.core_ids(core_radius);
    std::vector<ExhaustionRow> rows;
    std::vector<double> prev;
    for (int r : radii) {
        WeightedGraph g = family.make(r);
        int x0 = family.center(r);
        g.check_vertex(x0);
        SpectralResult sr = ground_energy(g, std::min(tol, 1e-10));
        if (energy > sr.ground_energy - resolvent_margin(tol))
            throw NumericError("energy " + std::to_string(energy) +
                               " is above the ground energy of the truncation at radius " +
                               std::to_string(r));
        int ecc = eccentricity(g, x0);
        if (ecc < 1)
            throw InputError("truncation at radius " + std::to_string(r) +
                             " is a single vertex; no construction window exists");
        VertexSubset window = ball(g, x0, ecc - 1);
        SupersolutionCertificate cert =
            construct_supersolution(g, energy, x0, window, tol, sr.ground_energy);

        ExhaustionRow row;
        row.radius = r;
        row.truncation_ground_energy = sr.ground_energy;
        row.core_values.reserve(ids.size());
        for (int id : ids) {
            std::optional<int> idx = family.locate(r, id);
            if (!idx)
                throw InputError("core vertex id " + std::to_string(id) +
                                 " missing from the truncation at radius " + std::to_string(r));
            row.core_values.push_back(cert.w[*idx]);
        }
        if (prev.empty()) {
            row.sup_diff_prev = std::numeric_limits<double>::quiet_NaN();
        } else {
            double d = 0.0;
            for (std::size_t i = 0; i < ids.size(); ++i)
                d = std::max(d, std::fabs(row.core_values[i] - prev[i]));
            row.sup_diff_prev = d;
        }
        prev = row.core_values;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace dgs
