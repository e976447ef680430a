#pragma once

#include <memory>
#include <utility>

#include "dgs/graph.hpp"

namespace dgs {

// Evaluation context for the operator L and the energy form Q over one graph.
// Caches the weighted degrees b(x). A context produced by gs_transform owns
// its (transformed) graph; otherwise it references the caller's.
class FormContext {
public:
    explicit FormContext(const WeightedGraph& g);
    explicit FormContext(std::shared_ptr<const WeightedGraph> g);
    // a context references the caller's graph; a temporary would dangle
    explicit FormContext(WeightedGraph&&) = delete;

    const WeightedGraph& graph() const { return *g_; }
    double degree(int x) const { return degree_[x]; }
    const std::vector<double>& degrees() const { return degree_; }

private:
    std::shared_ptr<const WeightedGraph> owned_;
    const WeightedGraph* g_;
    std::vector<double> degree_;
};

// L w (x) = (1/m(x)) [ sum_y b(x,y)(w(x)-w(y)) + c(x) w(x) ]
GraphFunction apply_L(const FormContext& ctx, const GraphFunction& w);

// Q(u,v) = 1/2 sum_{x,y} b(x,y)(u(x)-u(y))(v(x)-v(y)) + sum_x c(x)u(x)v(x)
double form_Q(const FormContext& ctx, const GraphFunction& u, const GraphFunction& v);
double form_Q(const FormContext& ctx, const GraphFunction& u);

// inner product and norm of l^2(V,m)
double inner_m(const FormContext& ctx, const GraphFunction& u, const GraphFunction& v);
double norm_m(const FormContext& ctx, const GraphFunction& u);

// Context over (V, b_w, 0, m) with b_w(x,y) = b(x,y) w(x) w(y). Requires w > 0.
// The potential is dropped; it re-enters any ground state representation
// through w itself.
FormContext gs_transform(const FormContext& ctx, const GraphFunction& w);

// Q_w(u) = 1/2 sum_{x,y} b(x,y) w(x)w(y) (u(x)/w(x) - u(y)/w(y))^2.
// The 1/2 runs over ordered pairs, matching Q applied to u/w in the
// transformed context.
double form_Qw(const FormContext& ctx, const GraphFunction& w, const GraphFunction& u);

// Q(u) - Q_w(u) - E ||u||_m^2. Zero (to tolerance) when (L-E)w = 0;
// bounded below by -tolerance when (L-E)w >= 0.
double gsr_defect(const FormContext& ctx, const GraphFunction& w, double energy,
                  const GraphFunction& u);

// (|<Lw,v>_m - <w,Lv>_m|, |<Lw,v>_m - Q(w,v)|); both vanish on finite graphs
// up to rounding.
std::pair<double, double> pairing_residual(const FormContext& ctx, const GraphFunction& w,
                                           const GraphFunction& v);

// absolute tolerance for identity checks: 1e-9 * (1 + largest term magnitude)
inline double identity_tolerance(double term_scale) { return 1e-9 * (1.0 + term_scale); }

}  // namespace dgs
