#include "dgs/forms.hpp"

#include <cmath>
#include <string>

namespace dgs {

namespace {

void check_length(const WeightedGraph& g, const GraphFunction& u, const char* name) {
    if (static_cast<int>(u.size()) != g.vertex_count())
        throw InputError(std::string(name) + " has length " + std::to_string(u.size()) +
                         ", graph has " + std::to_string(g.vertex_count()) + " vertices");
}

void check_positive(const GraphFunction& w) {
    for (std::size_t x = 0; x < w.size(); ++x)
        if (!(w[x] > 0.0))
            throw InputError("transform function must be positive everywhere, w(" +
                             std::to_string(x) + ") = " + std::to_string(w[x]));
}

}  // namespace

FormContext::FormContext(const WeightedGraph& g) : g_(&g) {
    degree_.resize(g.vertex_count());
    for (int x = 0; x < g.vertex_count(); ++x) degree_[x] = g.weighted_degree(x);
}

FormContext::FormContext(std::shared_ptr<const WeightedGraph> g)
    : owned_(std::move(g)), g_(owned_.get()) {
    degree_.resize(g_->vertex_count());
    for (int x = 0; x < g_->vertex_count(); ++x) degree_[x] = g_->weighted_degree(x);
}

GraphFunction apply_L(const FormContext& ctx, const GraphFunction& w) {
    const WeightedGraph& g = ctx.graph();
    check_length(g, w, "function");
    GraphFunction out(g.vertex_count());
    for (int x = 0; x < g.vertex_count(); ++x) {
        double s = ctx.degree(x) * w[x];
        for (const Edge& e : g.neighbors(x)) s -= e.weight * w[e.to];
        out[x] = (s + g.potential(x) * w[x]) / g.measure(x);
    }
    return out;
}

double form_Q(const FormContext& ctx, const GraphFunction& u, const GraphFunction& v) {
    const WeightedGraph& g = ctx.graph();
    check_length(g, u, "u");
    check_length(g, v, "v");
    double acc = 0.0;
    for (int x = 0; x < g.vertex_count(); ++x) {
        for (const Edge& e : g.neighbors(x))
            acc += 0.5 * e.weight * (u[x] - u[e.to]) * (v[x] - v[e.to]);
        acc += g.potential(x) * u[x] * v[x];
    }
    return acc;
}

double form_Q(const FormContext& ctx, const GraphFunction& u) { return form_Q(ctx, u, u); }

double inner_m(const FormContext& ctx, const GraphFunction& u, const GraphFunction& v) {
    const WeightedGraph& g = ctx.graph();
    check_length(g, u, "u");
    check_length(g, v, "v");
    double acc = 0.0;
    for (int x = 0; x < g.vertex_count(); ++x) acc += u[x] * v[x] * g.measure(x);
    return acc;
}

double norm_m(const FormContext& ctx, const GraphFunction& u) {
    return std::sqrt(inner_m(ctx, u, u));
}

FormContext gs_transform(const FormContext& ctx, const GraphFunction& w) {
    const WeightedGraph& g = ctx.graph();
    check_length(g, w, "w");
    check_positive(w);
    GraphBuilder builder;
    for (int x = 0; x < g.vertex_count(); ++x) builder.add_vertex(g.label(x), g.measure(x), 0.0);
    for (int x = 0; x < g.vertex_count(); ++x)
        for (const Edge& e : g.neighbors(x))
            if (e.to > x) builder.add_edge(x, e.to, e.weight * w[x] * w[e.to]);
    return FormContext(std::make_shared<const WeightedGraph>(builder.build()));
}

double form_Qw(const FormContext& ctx, const GraphFunction& w, const GraphFunction& u) {
    const WeightedGraph& g = ctx.graph();
    check_length(g, w, "w");
    check_length(g, u, "u");
    check_positive(w);
    double acc = 0.0;
    for (int x = 0; x < g.vertex_count(); ++x) {
        for (const Edge& e : g.neighbors(x)) {
            double d = u[x] / w[x] - u[e.to] / w[e.to];
            acc += 0.5 * e.weight * w[x] * w[e.to] * d * d;
        }
    }
    return acc;
}

double gsr_defect(const FormContext& ctx, const GraphFunction& w, double energy,
                  const GraphFunction& u) {
    double q = form_Q(ctx, u);
    double qw = form_Qw(ctx, w, u);
    double nu = inner_m(ctx, u, u);
    return q - qw - energy * nu;
}

std::pair<double, double> pairing_residual(const FormContext& ctx, const GraphFunction& w,
                                           const GraphFunction& v) {
    GraphFunction lw = apply_L(ctx, w);
    GraphFunction lv = apply_L(ctx, v);
    double a = inner_m(ctx, lw, v);
    double b = inner_m(ctx, w, lv);
    double q = form_Q(ctx, w, v);
    return {std::fabs(a - b), std::fabs(a - q)};
}

}  // namespace dgs
