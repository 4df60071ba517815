#include "wedgewave/wavefunction.hpp"

#include <algorithm>
#include <cmath>

#include "wedgewave/parallel.hpp"

namespace wedgewave {

void GridSpec::validate() const {
    if (!(x_min < x_max) || !(y_min < y_max))
        throw std::invalid_argument("GridSpec: bounds must satisfy min < max");
    if (nx < 2 || ny < 2) throw std::invalid_argument("GridSpec: nx, ny must be >= 2");
}

double DensityGrid::max_value() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, v);
    return m;
}

WedgeEvaluator::WedgeEvaluator(const WedgeSystem& system, double t)
    : terms_(&system.terms),
      gx_(system.packet.px_params, t),
      gy_(system.packet.py_params, t) {
    system.packet.validate();
}

cplx WedgeEvaluator::sum(double x, double y) const {
    cplx acc(0.0, 0.0);
    for (const ImageTerm& term : *terms_) {
        double u, v;
        term.isometry.apply(x, y, u, v);
        const cplx val = gx_.value(u) * gy_.value(v);
        acc += (term.sign > 0) ? val : -val;
    }
    return acc;
}

void WedgeEvaluator::sum_and_grad(double x, double y, cplx& f, cplx& fx, cplx& fy) const {
    f = fx = fy = cplx(0.0, 0.0);
    for (const ImageTerm& term : *terms_) {
        double u, v;
        term.isometry.apply(x, y, u, v);
        cplx p1, d1, p2, d2;
        gx_.value_and_slope(u, p1, d1);
        gy_.value_and_slope(v, p2, d2);
        const cplx val = p1 * p2;
        const cplx du = d1 * p2;  // d/du
        const cplx dv = p1 * d2;  // d/dv
        // chain rule through (u,v) = Q(x,y): grad_xy = Q^T grad_uv
        const PlaneIsometry& q = term.isometry;
        if (term.sign > 0) {
            f += val;
            fx += q.a * du + q.c * dv;
            fy += q.b * du + q.d * dv;
        } else {
            f -= val;
            fx -= q.a * du + q.c * dv;
            fy -= q.b * du + q.d * dv;
        }
    }
}

void WedgeEvaluator::sum_grad_laplacian(double x, double y, cplx& f, cplx& fx, cplx& fy,
                                        cplx& lap) const {
    f = fx = fy = lap = cplx(0.0, 0.0);
    for (const ImageTerm& term : *terms_) {
        double u, v;
        term.isometry.apply(x, y, u, v);
        cplx p1, d1, dd1, p2, d2, dd2;
        gx_.value_slope_curvature(u, p1, d1, dd1);
        gy_.value_slope_curvature(v, p2, d2, dd2);
        const cplx val = p1 * p2;
        const cplx du = d1 * p2;
        const cplx dv = p1 * d2;
        // orthogonal argument maps leave the Laplacian form invariant
        const cplx lp = dd1 * p2 + p1 * dd2;
        const PlaneIsometry& q = term.isometry;
        if (term.sign > 0) {
            f += val;
            fx += q.a * du + q.c * dv;
            fy += q.b * du + q.d * dv;
            lap += lp;
        } else {
            f -= val;
            fx -= q.a * du + q.c * dv;
            fy -= q.b * du + q.d * dv;
            lap -= lp;
        }
    }
}

cplx psi_image_sum(const WedgeSystem& system, double x, double y, double t) {
    return WedgeEvaluator(system, t).sum(x, y);
}

cplx psi_wedge(const WedgeSystem& system, double x, double y, double t) {
    if (!inside_wedge(system.n_wedge, x, y)) return cplx(0.0, 0.0);
    return WedgeEvaluator(system, t).sum(x, y);
}

std::pair<cplx, cplx> grad_psi_wedge(const WedgeSystem& system, double x, double y, double t) {
    if (!inside_wedge(system.n_wedge, x, y))
        throw std::domain_error("grad_psi_wedge: point outside the open wedge");
    cplx f, fx, fy;
    WedgeEvaluator(system, t).sum_and_grad(x, y, f, fx, fy);
    return {fx, fy};
}

DensityGrid density_grid(const WedgeSystem& system, const GridSpec& spec, double t, int threads) {
    spec.validate();
    DensityGrid grid;
    grid.spec = spec;
    grid.t = t;
    grid.values.assign(static_cast<size_t>(spec.nx) * spec.ny, 0.0);
    const WedgeEvaluator eval(system, t);
    parallel_for(spec.ny, threads, [&](int j) {
        const double y = spec.y(j);
        double* row = grid.values.data() + static_cast<size_t>(j) * spec.nx;
        for (int i = 0; i < spec.nx; ++i) {
            const double x = spec.x(i);
            if (!inside_wedge(system.n_wedge, x, y)) continue;
            row[i] = std::norm(eval.sum(x, y));
        }
    });
    return grid;
}

double schrodinger_residual(const WedgeSystem& system, double x, double y, double t, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("schrodinger_residual: h must be > 0");
    if (t - h < 0.0)
        throw std::invalid_argument("schrodinger_residual: need t >= h for the central t-stencil");
    const int n = system.n_wedge;
    if (!inside_wedge(n, x, y) || !inside_wedge(n, x + h, y) || !inside_wedge(n, x - h, y) ||
        !inside_wedge(n, x, y + h) || !inside_wedge(n, x, y - h))
        throw std::invalid_argument("schrodinger_residual: stencil leaves the open wedge");

    const WedgeEvaluator now(system, t);
    const cplx f = now.sum(x, y);
    const cplx fxp = now.sum(x + h, y);
    const cplx fxm = now.sum(x - h, y);
    const cplx fyp = now.sum(x, y + h);
    const cplx fym = now.sum(x, y - h);
    const cplx ftp = WedgeEvaluator(system, t + h).sum(x, y);
    const cplx ftm = WedgeEvaluator(system, t - h).sum(x, y);

    const cplx dt = (ftp - ftm) / (2.0 * h);
    const cplx lap = (fxp - 2.0 * f + fxm + fyp - 2.0 * f + fym) / (h * h);
    const double hbar = system.packet.px_params.hbar;
    const double m = system.packet.px_params.m;
    return std::abs(cplx(0.0, hbar) * dt + hbar * hbar / (2.0 * m) * lap);
}

}  // namespace wedgewave
