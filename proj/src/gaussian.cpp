#include "wedgewave/gaussian.hpp"

#include <cmath>

namespace wedgewave {

void PacketParams1D::validate() const {
    if (!(beta > 0.0)) throw std::invalid_argument("PacketParams1D: beta must be > 0");
    if (!(m > 0.0)) throw std::invalid_argument("PacketParams1D: m must be > 0");
    if (!(hbar > 0.0)) throw std::invalid_argument("PacketParams1D: hbar must be > 0");
    if (!std::isfinite(x0) || !std::isfinite(p0))
        throw std::invalid_argument("PacketParams1D: x0 and p0 must be finite");
}

DerivedScales derived_scales(const PacketParams1D& params) {
    params.validate();
    DerivedScales s;
    s.t0 = params.m * params.beta * params.beta / params.hbar;
    s.dx0 = params.beta / std::sqrt(2.0);
    s.dp0 = params.hbar / (params.beta * std::sqrt(2.0));
    s.alpha = params.beta / params.hbar;
    return s;
}

double spread_at(const PacketParams1D& params, double t) {
    const DerivedScales s = derived_scales(params);
    const double tau = t / s.t0;
    return s.dx0 * std::sqrt(1.0 + tau * tau);
}

Gaussian1D::Gaussian1D(const PacketParams1D& params, double t) {
    params.validate();
    const double t0 = params.m * params.beta * params.beta / params.hbar;
    const cplx gamma(1.0, t / t0);  // never on the negative real axis
    const cplx pref_arg = std::sqrt(M_PI) * params.beta * gamma;
    log_pref_ = -0.5 * std::log(pref_arg)
                - cplx(0.0, params.p0 * params.p0 * t / (2.0 * params.m * params.hbar));
    neg_inv_2g_ = -1.0 / (2.0 * params.beta * params.beta * gamma);
    k_ = params.p0 / params.hbar;
    x0_ = params.x0;
    center_ = params.x0 + params.p0 * t / params.m;
}

cplx Gaussian1D::value(double x) const {
    const double u = x - center_;
    return std::exp(log_pref_ + cplx(0.0, k_ * (x - x0_)) + neg_inv_2g_ * (u * u));
}

void Gaussian1D::value_and_slope(double x, cplx& f, cplx& fx) const {
    const double u = x - center_;
    f = std::exp(log_pref_ + cplx(0.0, k_ * (x - x0_)) + neg_inv_2g_ * (u * u));
    fx = (cplx(0.0, k_) + 2.0 * neg_inv_2g_ * u) * f;
}

void Gaussian1D::value_slope_curvature(double x, cplx& f, cplx& fx, cplx& fxx) const {
    const double u = x - center_;
    f = std::exp(log_pref_ + cplx(0.0, k_ * (x - x0_)) + neg_inv_2g_ * (u * u));
    const cplx slope = cplx(0.0, k_) + 2.0 * neg_inv_2g_ * u;
    fx = slope * f;
    fxx = (slope * slope + 2.0 * neg_inv_2g_) * f;
}

cplx psi1d(const PacketParams1D& params, double x, double t) {
    return Gaussian1D(params, t).value(x);
}

cplx dpsi1d_dx(const PacketParams1D& params, double x, double t) {
    cplx f, fx;
    Gaussian1D(params, t).value_and_slope(x, f, fx);
    return fx;
}

cplx d2psi1d_dx2(const PacketParams1D& params, double x, double t) {
    cplx f, fx, fxx;
    Gaussian1D(params, t).value_slope_curvature(x, f, fx, fxx);
    return fxx;
}

void GaussianPacket2D::validate() const {
    px_params.validate();
    py_params.validate();
    if (px_params.m != py_params.m || px_params.hbar != py_params.hbar)
        throw std::invalid_argument("GaussianPacket2D: components must share m and hbar");
}

cplx psi2d(const GaussianPacket2D& packet, double x, double y, double t) {
    packet.validate();
    return Gaussian1D(packet.px_params, t).value(x) * Gaussian1D(packet.py_params, t).value(y);
}

cplx phi1d_free(const PacketParams1D& params, double p, double t) {
    params.validate();
    if (params.p0 != 0.0)
        throw std::invalid_argument("phi1d_free: requires p0 = 0");
    const double alpha = params.beta / params.hbar;
    const double amp = std::sqrt(alpha / std::sqrt(M_PI));
    const double phase = -p * p * t / (2.0 * params.m * params.hbar) - p * params.x0 / params.hbar;
    return amp * std::exp(-0.5 * alpha * alpha * p * p) * std::exp(cplx(0.0, phase));
}

}  // namespace wedgewave
