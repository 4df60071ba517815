#pragma once

#include <utility>
#include <vector>

#include "wedgewave/gaussian.hpp"

namespace wedgewave {

/// Half-line mirror packet psi(x,t) - psi(-x,t) for x >= 0, exactly 0 for
/// x < 0. Requires p0 = 0 and x0 > 0.
cplx mirror_psi1d(const PacketParams1D& params, double x, double t);

/// Controls for the discrete half-line Fourier transform.
struct TransformSettings {
    double x_max = 0.0;    // 0 = auto: x0 + 12 spreads at time t
    int n_samples = 1 << 16;  // power of two, >= 2^12
    int pad_factor = 8;       // zero padding, power of two >= 1
    double p_window = 0.0;    // half-width of the stored p range; 0 = auto 8/alpha
};

/// Momentum density |phi(p,t)|^2 with its statistics. p_samples/density hold
/// the window [-p_window, p_window]; the statistics are integrated over the
/// full sampled spectrum, where the second moment is conserved.
struct MomentumDensity1D {
    double t = 0.0;
    std::vector<double> p_samples;
    std::vector<double> density;   // normalized so the full-spectrum integral is 1
    double mean_p = 0.0;
    double spread_p = 0.0;
    double mean_p2 = 0.0;
    double raw_norm = 0.0;         // full-spectrum integral before normalization
};

/// phi(p,t) = (2 pi hbar)^{-1/2} integral_0^xmax mirror_psi1d e^{-ipx/hbar} dx
/// by FFT. Rejects an x_max that truncates the packet (|psi(x_max)| above
/// 1e-8 of the sampled peak) and n_samples below 2^12 or not a power of two.
MomentumDensity1D momentum_density_fft(const PacketParams1D& params, double t,
                                       const TransformSettings& settings = {});

/// Long-time closed form (4 alpha/sqrt(pi)) sin^2(p x0/hbar) e^{-alpha^2 p^2}
/// for p > 0, zero otherwise. Requires p0 = 0.
double longterm_momentum_density(const PacketParams1D& params, double p);

/// Long-time statistics: mean_p = 1/(alpha sqrt(pi)),
/// spread_p = sqrt((pi-2)/(2 pi alpha^2)). Requires p0 = 0.
std::pair<double, double> longterm_expectations(const PacketParams1D& params);

/// One transform per time; times must be strictly increasing.
std::vector<MomentumDensity1D> momentum_stats_series(const PacketParams1D& params,
                                                     const std::vector<double>& times,
                                                     const TransformSettings& settings = {});

/// L1 distance between the stored (normalized) transform density and the
/// long-time closed form over the stored window.
double longterm_l1_distance(const MomentumDensity1D& density, const PacketParams1D& params);

/// Trapezoid integral of |mirror_psi1d|^2 over [0, x_max]; the position-space
/// norm used by the Parseval check.
double mirror_position_norm(const PacketParams1D& params, double t, double x_max, int n_samples);

}  // namespace wedgewave
