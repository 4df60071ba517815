#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wedgewave/wavefunction.hpp"

namespace wedgewave {

/// Raw wedge-masked trapezoid integrals from a single grid pass, before any
/// normalization. kinetic_raw carries the hbar^2/2m factor.
struct WedgeMoments {
    double norm = 0.0;
    double x_weighted = 0.0;
    double y_weighted = 0.0;
    double px_weighted = 0.0;      // hbar * Im(psi* dpsi/dx)
    double py_weighted = 0.0;
    double kinetic_raw = 0.0;      // -(hbar^2/2m) Re(psi* lap psi)
    double peak_density = 0.0;     // max |psi|^2 over grid samples
    double border_density = 0.0;   // max |psi|^2 over in-wedge grid-border samples
};

struct QuadratureInfo {
    double tail_estimate = 0.0;
    bool tail_warning = false;
};

WedgeMoments wedge_moments(const WedgeSystem& system, double t, const GridSpec& spec,
                           bool with_derivatives, int threads = 1);

/// Crude truncated-mass estimate from the border samples of a finished pass;
/// the warning threshold is 1e-8.
QuadratureInfo quadrature_tail_info(const WedgeSystem& system, double t, const GridSpec& spec,
                                    const WedgeMoments& moments);

/// Trapezoid quadrature of |psi_wedge|^2 over the wedge-masked grid. Sets a
/// tail warning in `info` if the estimated truncated mass exceeds 1e-8.
double quad_norm(const WedgeSystem& system, double t, const GridSpec& spec, int threads = 1,
                 QuadratureInfo* info = nullptr);

/// (<x>, <y>) over the masked grid, divided by the norm at the same time.
std::pair<double, double> expect_position(const WedgeSystem& system, double t,
                                          const GridSpec& spec, int threads = 1,
                                          QuadratureInfo* info = nullptr);

/// (<px>, <py>) = hbar Im(psi* grad psi) integrated and divided by the norm.
std::pair<double, double> expect_momentum(const WedgeSystem& system, double t,
                                          const GridSpec& spec, int threads = 1,
                                          QuadratureInfo* info = nullptr);

/// <T> over the wedge, divided by the norm at the same time. Computed from
/// the analytic Laplacian as -(hbar^2/2m) Re(psi* lap psi); equal to the
/// (hbar^2/2m) |grad psi|^2 form by parts since psi vanishes on the walls.
double expect_kinetic(const WedgeSystem& system, double t, const GridSpec& spec, int threads = 1,
                      QuadratureInfo* info = nullptr);

/// Bounding box covering every image-packet center +- k_sigma spreads at time
/// t, clipped to the half-planes containing the wedge, with spacing <=
/// min(beta)/10. Bounds are snapped to multiples of the spacing so the walls
/// x=0 and y=0 fall on grid lines. Requires k_sigma >= 6.
GridSpec auto_grid(const WedgeSystem& system, double t, double k_sigma);

struct ExpectationRecord {
    double t = 0.0;
    double norm = 0.0;
    double x = 0.0, y = 0.0;
    double px = 0.0, py = 0.0;
    double kinetic = 0.0;
};

struct ExpectationSeries {
    std::vector<ExpectationRecord> records;
    std::vector<std::string> warnings;
};

/// One record per time (strictly increasing), each on its own auto grid.
ExpectationSeries expectation_series(const WedgeSystem& system, const std::vector<double>& times,
                                     double k_sigma = 8.0, int threads = 1);

}  // namespace wedgewave
