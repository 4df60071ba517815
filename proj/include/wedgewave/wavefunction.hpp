#pragma once

#include <utility>
#include <vector>

#include "wedgewave/geometry.hpp"

namespace wedgewave {

/// Uniform rectangular sampling, endpoints included.
struct GridSpec {
    double x_min = 0.0, x_max = 1.0;
    double y_min = 0.0, y_max = 1.0;
    int nx = 2, ny = 2;

    void validate() const;
    double dx() const { return (x_max - x_min) / (nx - 1); }
    double dy() const { return (y_max - y_min) / (ny - 1); }
    double x(int i) const { return x_min + i * dx(); }
    double y(int j) const { return y_min + j * dy(); }
};

/// |psi|^2 sampled on a grid at one time; exactly 0 outside the wedge.
struct DensityGrid {
    GridSpec spec;
    double t = 0.0;
    std::vector<double> values;  // row-major, values[j*nx + i] = |psi(x_i, y_j)|^2

    double at(int i, int j) const { return values[static_cast<size_t>(j) * spec.nx + i]; }
    double max_value() const;
};

/// Per-(system, time) evaluator for the signed image sum and its analytic
/// derivatives. The two 1D factors are shared by all terms; only the
/// transformed arguments differ. Terms are always accumulated in ascending
/// index order so results are bit-reproducible.
class WedgeEvaluator {
public:
    WedgeEvaluator(const WedgeSystem& system, double t);

    cplx sum(double x, double y) const;
    void sum_and_grad(double x, double y, cplx& f, cplx& fx, cplx& fy) const;
    void sum_grad_laplacian(double x, double y, cplx& f, cplx& fx, cplx& fy, cplx& lap) const;

private:
    const std::vector<ImageTerm>* terms_;
    Gaussian1D gx_;
    Gaussian1D gy_;
};

/// Signed image sum without the wedge mask. Vanishes on the walls
/// analytically; used by boundary diagnostics.
cplx psi_image_sum(const WedgeSystem& system, double x, double y, double t);

/// The wedge wavefunction: the signed image sum inside the open wedge,
/// exactly 0 elsewhere.
cplx psi_wedge(const WedgeSystem& system, double x, double y, double t);

/// Analytic gradient (d/dx, d/dy) of psi_wedge. Rejects points outside the
/// open wedge, where the gradient is discontinuous.
std::pair<cplx, cplx> grad_psi_wedge(const WedgeSystem& system, double x, double y, double t);

/// Samples |psi_wedge|^2 on the grid. Deterministic for fixed inputs
/// regardless of the worker count.
DensityGrid density_grid(const WedgeSystem& system, const GridSpec& spec, double t,
                         int threads = 1);

/// |i hbar dpsi/dt + (hbar^2/2m) laplacian psi| with all derivatives central
/// finite differences of step h. Requires t >= h and the spatial stencil
/// strictly inside the wedge.
double schrodinger_residual(const WedgeSystem& system, double x, double y, double t, double h);

}  // namespace wedgewave
