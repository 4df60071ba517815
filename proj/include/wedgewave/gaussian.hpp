#pragma once

#include <complex>
#include <stdexcept>

namespace wedgewave {

using cplx = std::complex<double>;

/// Parameters of a 1D free-particle Gaussian packet: center x0, central
/// momentum p0, width parameter beta, mass m and hbar in consistent units.
struct PacketParams1D {
    double x0 = 0.0;
    double p0 = 0.0;
    double beta = 1.0;
    double m = 1.0;
    double hbar = 1.0;

    void validate() const;
};

/// Scales derived from the packet parameters; recomputed on demand, never stored.
struct DerivedScales {
    double t0;     // spreading time m*beta^2/hbar
    double dx0;    // initial position spread beta/sqrt(2)
    double dp0;    // initial momentum spread hbar/(beta*sqrt(2))
    double alpha;  // beta/hbar
};

DerivedScales derived_scales(const PacketParams1D& params);

/// Position spread at time t: dx0*sqrt(1+(t/t0)^2).
double spread_at(const PacketParams1D& params, double t);

/// Precomputed evaluator for one packet at a fixed time. psi(x) = exp(q(x))
/// with q quadratic in x; value, first and second x-derivatives share one
/// complex exponential. All grid paths and the point functions below route
/// through this so identical inputs give identical bits.
class Gaussian1D {
public:
    Gaussian1D(const PacketParams1D& params, double t);

    cplx value(double x) const;
    // psi, dpsi/dx
    void value_and_slope(double x, cplx& f, cplx& fx) const;
    // psi, dpsi/dx, d2psi/dx2
    void value_slope_curvature(double x, cplx& f, cplx& fx, cplx& fxx) const;

private:
    cplx log_pref_;    // log of prefactor plus the constant phase -i p0^2 t/2m hbar
    cplx neg_inv_2g_;  // -1/(2 beta^2 (1+it/t0))
    double k_;         // p0/hbar
    double x0_;
    double center_;    // x0 + p0 t/m
};

/// Eq.-(10)-form amplitude of the free 1D Gaussian packet.
cplx psi1d(const PacketParams1D& params, double x, double t);

/// Analytic x-derivative of psi1d.
cplx dpsi1d_dx(const PacketParams1D& params, double x, double t);

/// Analytic second x-derivative of psi1d.
cplx d2psi1d_dx2(const PacketParams1D& params, double x, double t);

/// Product packet psi1(x,t)*psi2(y,t). Both directions must share m and hbar.
struct GaussianPacket2D {
    PacketParams1D px_params;
    PacketParams1D py_params;

    void validate() const;
};

cplx psi2d(const GaussianPacket2D& packet, double x, double y, double t);

/// Free-particle momentum-space amplitude for a zero-momentum packet:
/// sqrt(alpha/sqrt(pi)) exp(-alpha^2 p^2/2) exp(-i p^2 t/2m hbar) exp(-i p x0/hbar).
/// Rejects p0 != 0.
cplx phi1d_free(const PacketParams1D& params, double p, double t);

}  // namespace wedgewave
