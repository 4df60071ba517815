#include "wedgewave/observables.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "wedgewave/parallel.hpp"

namespace wedgewave {

namespace {

constexpr double kTailWarnThreshold = 1e-8;

struct RowAccumulators {
    std::vector<double> norm, xw, yw, pxw, pyw, kin;
    std::vector<double> peak, border;
    explicit RowAccumulators(int ny)
        : norm(ny, 0.0), xw(ny, 0.0), yw(ny, 0.0), pxw(ny, 0.0), pyw(ny, 0.0), kin(ny, 0.0),
          peak(ny, 0.0), border(ny, 0.0) {}
};

void fill_info(const WedgeMoments& m, const GridSpec& spec, double t,
               const WedgeSystem& system, QuadratureInfo* info) {
    if (!info) return;
    *info = quadrature_tail_info(system, t, spec, m);
}

}  // namespace

QuadratureInfo quadrature_tail_info(const WedgeSystem& system, double t, const GridSpec& spec,
                                    const WedgeMoments& moments) {
    // largest in-wedge density on the grid border times a one-spread-deep
    // strip around the perimeter
    QuadratureInfo info;
    const double sx = spread_at(system.packet.px_params, t);
    const double sy = spread_at(system.packet.py_params, t);
    const double perimeter = 2.0 * (spec.x_max - spec.x_min) + 2.0 * (spec.y_max - spec.y_min);
    info.tail_estimate = moments.border_density * perimeter * std::max(sx, sy);
    info.tail_warning = info.tail_estimate > kTailWarnThreshold;
    return info;
}

WedgeMoments wedge_moments(const WedgeSystem& system, double t, const GridSpec& spec,
                           bool with_derivatives, int threads) {
    spec.validate();
    const WedgeEvaluator eval(system, t);
    const double hbar = system.packet.px_params.hbar;
    const double m = system.packet.px_params.m;
    const double kin_factor = hbar * hbar / (2.0 * m);

    RowAccumulators rows(spec.ny);
    parallel_for(spec.ny, threads, [&](int j) {
        const double y = spec.y(j);
        const double wy = (j == 0 || j == spec.ny - 1) ? 0.5 : 1.0;
        double r_norm = 0.0, r_xw = 0.0, r_yw = 0.0, r_pxw = 0.0, r_pyw = 0.0, r_kin = 0.0;
        double r_peak = 0.0, r_border = 0.0;
        for (int i = 0; i < spec.nx; ++i) {
            const double x = spec.x(i);
            if (!inside_wedge(system.n_wedge, x, y)) continue;
            const double w = wy * ((i == 0 || i == spec.nx - 1) ? 0.5 : 1.0);
            double dens;
            if (with_derivatives) {
                cplx f, fx, fy, lap;
                eval.sum_grad_laplacian(x, y, f, fx, fy, lap);
                dens = std::norm(f);
                const cplx cf = std::conj(f);
                r_pxw += w * hbar * std::imag(cf * fx);
                r_pyw += w * hbar * std::imag(cf * fy);
                r_kin += w * (-kin_factor) * std::real(cf * lap);
            } else {
                dens = std::norm(eval.sum(x, y));
            }
            r_norm += w * dens;
            r_xw += w * x * dens;
            r_yw += w * y * dens;
            r_peak = std::max(r_peak, dens);
            if (i == 0 || i == spec.nx - 1 || j == 0 || j == spec.ny - 1)
                r_border = std::max(r_border, dens);
        }
        rows.norm[j] = r_norm;
        rows.xw[j] = r_xw;
        rows.yw[j] = r_yw;
        rows.pxw[j] = r_pxw;
        rows.pyw[j] = r_pyw;
        rows.kin[j] = r_kin;
        rows.peak[j] = r_peak;
        rows.border[j] = r_border;
    });

    const double cell = spec.dx() * spec.dy();
    WedgeMoments out;
    out.norm = cell * pairwise_sum(rows.norm);
    out.x_weighted = cell * pairwise_sum(rows.xw);
    out.y_weighted = cell * pairwise_sum(rows.yw);
    out.px_weighted = cell * pairwise_sum(rows.pxw);
    out.py_weighted = cell * pairwise_sum(rows.pyw);
    out.kinetic_raw = cell * pairwise_sum(rows.kin);
    out.peak_density = *std::max_element(rows.peak.begin(), rows.peak.end());
    out.border_density = *std::max_element(rows.border.begin(), rows.border.end());
    return out;
}

double quad_norm(const WedgeSystem& system, double t, const GridSpec& spec, int threads,
                 QuadratureInfo* info) {
    const WedgeMoments m = wedge_moments(system, t, spec, false, threads);
    fill_info(m, spec, t, system, info);
    return m.norm;
}

std::pair<double, double> expect_position(const WedgeSystem& system, double t,
                                          const GridSpec& spec, int threads,
                                          QuadratureInfo* info) {
    const WedgeMoments m = wedge_moments(system, t, spec, false, threads);
    fill_info(m, spec, t, system, info);
    return {m.x_weighted / m.norm, m.y_weighted / m.norm};
}

std::pair<double, double> expect_momentum(const WedgeSystem& system, double t,
                                          const GridSpec& spec, int threads,
                                          QuadratureInfo* info) {
    const WedgeMoments m = wedge_moments(system, t, spec, true, threads);
    fill_info(m, spec, t, system, info);
    return {m.px_weighted / m.norm, m.py_weighted / m.norm};
}

double expect_kinetic(const WedgeSystem& system, double t, const GridSpec& spec, int threads,
                      QuadratureInfo* info) {
    const WedgeMoments m = wedge_moments(system, t, spec, true, threads);
    fill_info(m, spec, t, system, info);
    return m.kinetic_raw / m.norm;
}

GridSpec auto_grid(const WedgeSystem& system, double t, double k_sigma) {
    if (!(k_sigma >= 6.0)) throw std::invalid_argument("auto_grid: k_sigma must be >= 6");
    system.packet.validate();
    const double pad =
        k_sigma * std::max(spread_at(system.packet.px_params, t),
                           spread_at(system.packet.py_params, t));
    const double cx = system.packet.px_params.x0;
    const double cy = system.packet.py_params.x0;

    double x_lo = 1e300, x_hi = -1e300, y_lo = 1e300, y_hi = -1e300;
    for (const ImageTerm& term : system.terms) {
        // term k is peaked where Q_k r = c, i.e. at r = Q_k^T c
        const PlaneIsometry& q = term.isometry;
        const double ix = q.a * cx + q.c * cy;
        const double iy = q.b * cx + q.d * cy;
        x_lo = std::min(x_lo, ix - pad);
        x_hi = std::max(x_hi, ix + pad);
        y_lo = std::min(y_lo, iy - pad);
        y_hi = std::max(y_hi, iy + pad);
    }
    // clip to the half-planes containing the wedge; the wedge lies in y >= 0
    // for every N and additionally in x >= 0 once the angle is <= 90 degrees
    y_lo = std::max(y_lo, 0.0);
    if (system.n_wedge >= 2) x_lo = std::max(x_lo, 0.0);

    const double beta_min = std::min(system.packet.px_params.beta, system.packet.py_params.beta);
    const double spacing = beta_min / 10.0;
    // snap bounds to multiples of the spacing so both axis-aligned walls fall
    // exactly on grid lines (keeps the masked trapezoid rule high-order there)
    GridSpec spec;
    spec.x_min = std::floor(x_lo / spacing) * spacing;
    spec.x_max = std::ceil(x_hi / spacing) * spacing;
    spec.y_min = std::floor(y_lo / spacing) * spacing;
    spec.y_max = std::ceil(y_hi / spacing) * spacing;
    spec.nx = static_cast<int>(std::lround((spec.x_max - spec.x_min) / spacing)) + 1;
    spec.ny = static_cast<int>(std::lround((spec.y_max - spec.y_min) / spacing)) + 1;
    spec.validate();
    return spec;
}

ExpectationSeries expectation_series(const WedgeSystem& system, const std::vector<double>& times,
                                     double k_sigma, int threads) {
    if (times.empty()) throw std::invalid_argument("expectation_series: times must be non-empty");
    for (size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw std::invalid_argument("expectation_series: times must be strictly increasing");

    ExpectationSeries series;
    series.records.reserve(times.size());
    for (double t : times) {
        const GridSpec spec = auto_grid(system, t, k_sigma);
        const WedgeMoments m = wedge_moments(system, t, spec, true, threads);
        QuadratureInfo info;
        fill_info(m, spec, t, system, &info);
        if (info.tail_warning) {
            char buf[128];
            std::snprintf(buf, sizeof(buf), "t=%g: estimated quadrature tail %.3e exceeds 1e-8",
                          t, info.tail_estimate);
            series.warnings.emplace_back(buf);
        }
        ExpectationRecord rec;
        rec.t = t;
        rec.norm = m.norm;
        rec.x = m.x_weighted / m.norm;
        rec.y = m.y_weighted / m.norm;
        rec.px = m.px_weighted / m.norm;
        rec.py = m.py_weighted / m.norm;
        rec.kinetic = m.kinetic_raw / m.norm;
        series.records.push_back(rec);
    }
    return series;
}

}  // namespace wedgewave
