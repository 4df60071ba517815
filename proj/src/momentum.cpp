#include "wedgewave/momentum.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

namespace wedgewave {

namespace {

// FFTW planning is not thread-safe; execution on distinct plans is.
std::mutex fftw_plan_mutex;

bool is_pow2(int v) { return v > 0 && (v & (v - 1)) == 0; }

void check_appendix_params(const PacketParams1D& params, const char* where) {
    params.validate();
    if (params.p0 != 0.0)
        throw std::invalid_argument(std::string(where) + ": requires p0 = 0");
}

double auto_x_max(const PacketParams1D& params, double t) {
    return params.x0 + 12.0 * spread_at(params, t);
}

// trapezoid on uniformly spaced samples
double trapz(const std::vector<double>& f, double dp) {
    if (f.size() < 2) return 0.0;
    double interior = 0.0;
    for (size_t i = 1; i + 1 < f.size(); ++i) interior += f[i];
    return dp * (interior + 0.5 * (f.front() + f.back()));
}

}  // namespace

cplx mirror_psi1d(const PacketParams1D& params, double x, double t) {
    check_appendix_params(params, "mirror_psi1d");
    if (!(params.x0 > 0.0))
        throw std::invalid_argument("mirror_psi1d: requires x0 > 0");
    if (x < 0.0) return cplx(0.0, 0.0);
    const Gaussian1D g(params, t);
    return g.value(x) - g.value(-x);
}

MomentumDensity1D momentum_density_fft(const PacketParams1D& params, double t,
                                       const TransformSettings& settings) {
    check_appendix_params(params, "momentum_density_fft");
    if (!(params.x0 > 0.0))
        throw std::invalid_argument("momentum_density_fft: requires x0 > 0");
    if (!is_pow2(settings.n_samples) || settings.n_samples < (1 << 12))
        throw std::invalid_argument(
            "momentum_density_fft: n_samples must be a power of two >= 4096");
    if (!is_pow2(settings.pad_factor))
        throw std::invalid_argument("momentum_density_fft: pad_factor must be a power of two");

    const double hbar = params.hbar;
    const double x_max = settings.x_max > 0.0 ? settings.x_max : auto_x_max(params, t);
    const int n = settings.n_samples;
    const double dx = x_max / n;

    // sample the mirror packet on [0, x_max); it is exactly 0 for x < 0
    const Gaussian1D g(params, t);
    std::vector<cplx> samples(static_cast<size_t>(n) * settings.pad_factor, cplx(0.0, 0.0));
    double peak = 0.0;
    for (int j = 0; j < n; ++j) {
        const double x = j * dx;
        const cplx v = g.value(x) - g.value(-x);
        samples[j] = v;
        peak = std::max(peak, std::abs(v));
    }
    const cplx edge = g.value(x_max) - g.value(-x_max);
    if (std::abs(edge) > 1e-8 * peak)
        throw std::invalid_argument(
            "momentum_density_fft: x_max truncates the packet (tail above 1e-8 of peak)");

    const int nf = n * settings.pad_factor;
    std::vector<cplx> spectrum(nf);
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex);
        fftw_plan plan = fftw_plan_dft_1d(
            nf, reinterpret_cast<fftw_complex*>(samples.data()),
            reinterpret_cast<fftw_complex*>(spectrum.data()), FFTW_FORWARD, FFTW_ESTIMATE);
        fftw_execute(plan);
        fftw_destroy_plan(plan);
    }

    // continuum convention: phi(p_k) = (2 pi hbar)^{-1/2} dx X_k at
    // p_k = 2 pi hbar k / (nf dx), bins above nf/2 aliased to negative p.
    // Reorder ascending in p.
    const double dp = 2.0 * M_PI * hbar / (nf * dx);
    const double scale = dx / std::sqrt(2.0 * M_PI * hbar);
    std::vector<double> p_all(nf), rho_all(nf);
    const int half = nf / 2;
    for (int k = 0; k < nf; ++k) {
        const int bin = (k + half) % nf;  // bin index in FFT output order
        const int signed_k = (bin < half) ? bin : bin - nf;
        p_all[k] = dp * signed_k;
        rho_all[k] = std::norm(scale * spectrum[bin]);
    }

    MomentumDensity1D out;
    out.t = t;
    out.raw_norm = trapz(rho_all, dp);
    for (double& r : rho_all) r /= out.raw_norm;

    // statistics over the full sampled spectrum: the derivative kink of the
    // zero-extended half-line state feeds a 1/p^4 tail whose share moves in
    // time, so a fixed window under-counts <p^2> transiently.
    std::vector<double> tmp(nf);
    for (int k = 0; k < nf; ++k) tmp[k] = p_all[k] * rho_all[k];
    out.mean_p = trapz(tmp, dp);
    for (int k = 0; k < nf; ++k) tmp[k] = p_all[k] * p_all[k] * rho_all[k];
    out.mean_p2 = trapz(tmp, dp);
    out.spread_p = std::sqrt(std::max(0.0, out.mean_p2 - out.mean_p * out.mean_p));

    const double window =
        settings.p_window > 0.0 ? settings.p_window : 8.0 * hbar / params.beta;
    for (int k = 0; k < nf; ++k) {
        if (std::abs(p_all[k]) <= window) {
            out.p_samples.push_back(p_all[k]);
            out.density.push_back(rho_all[k]);
        }
    }
    return out;
}

double longterm_momentum_density(const PacketParams1D& params, double p) {
    check_appendix_params(params, "longterm_momentum_density");
    if (p <= 0.0) return 0.0;
    const double alpha = params.beta / params.hbar;
    const double s = std::sin(p * params.x0 / params.hbar);
    return 4.0 * alpha / std::sqrt(M_PI) * s * s * std::exp(-alpha * alpha * p * p);
}

std::pair<double, double> longterm_expectations(const PacketParams1D& params) {
    check_appendix_params(params, "longterm_expectations");
    const double alpha = params.beta / params.hbar;
    const double mean = 1.0 / (alpha * std::sqrt(M_PI));
    const double spread = std::sqrt((M_PI - 2.0) / (2.0 * M_PI)) / alpha;
    return {mean, spread};
}

std::vector<MomentumDensity1D> momentum_stats_series(const PacketParams1D& params,
                                                     const std::vector<double>& times,
                                                     const TransformSettings& settings) {
    if (times.empty())
        throw std::invalid_argument("momentum_stats_series: times must be non-empty");
    for (size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw std::invalid_argument("momentum_stats_series: times must be strictly increasing");
    std::vector<MomentumDensity1D> out;
    out.reserve(times.size());
    for (double t : times) out.push_back(momentum_density_fft(params, t, settings));
    return out;
}

double longterm_l1_distance(const MomentumDensity1D& density, const PacketParams1D& params) {
    if (density.p_samples.size() < 2)
        throw std::invalid_argument("longterm_l1_distance: density has no window samples");
    const double dp = density.p_samples[1] - density.p_samples[0];
    std::vector<double> diff(density.p_samples.size());
    for (size_t i = 0; i < diff.size(); ++i)
        diff[i] = std::abs(density.density[i] -
                           longterm_momentum_density(params, density.p_samples[i]));
    return trapz(diff, dp);
}

double mirror_position_norm(const PacketParams1D& params, double t, double x_max, int n_samples) {
    check_appendix_params(params, "mirror_position_norm");
    if (n_samples < 2)
        throw std::invalid_argument("mirror_position_norm: n_samples must be >= 2");
    const Gaussian1D g(params, t);
    const double dx = x_max / (n_samples - 1);
    std::vector<double> dens(n_samples);
    for (int j = 0; j < n_samples; ++j) {
        const double x = j * dx;
        dens[j] = std::norm(g.value(x) - g.value(-x));
    }
    return trapz(dens, dx);
}

}  // namespace wedgewave
