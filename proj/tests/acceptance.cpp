// Acceptance suite: every release gate runs here, one PASS/FAIL line each.
// Gates 1-2 probe the image construction, 3-4 the wedge observables, 5-7 the
// half-line momentum analysis, 8-9 the PDE and group structure, 10 artifact
// byte determinism.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "wedgewave/io.hpp"

using namespace wedgewave;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail) {
    if (!pass) ++g_failures;
    std::printf("[%s] criterion %2d: %s — %s\n", pass ? "PASS" : "FAIL", number, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

GaussianPacket2D fig2_packet() {
    GaussianPacket2D packet;
    packet.px_params = PacketParams1D{5.0, 0.0, 1.0, 1.0, 1.0};
    packet.py_params = PacketParams1D{3.0, 0.0, 1.0, 1.0, 1.0};
    return packet;
}

double coarse_peak(const WedgeSystem& system, double t, int samples = 100) {
    const GridSpec box = auto_grid(system, t, 8.0);
    const WedgeEvaluator eval(system, t);
    double peak = 0.0;
    for (int j = 0; j <= samples; ++j) {
        const double y = box.y_min + (box.y_max - box.y_min) * j / samples;
        for (int i = 0; i <= samples; ++i) {
            const double x = box.x_min + (box.x_max - box.x_min) * i / samples;
            if (!inside_wedge(system.n_wedge, x, y)) continue;
            peak = std::max(peak, std::abs(eval.sum(x, y)));
        }
    }
    return peak;
}

// ---------------------------------------------------------------------------
// 1. wall boundary conditions across wedge indices and random packets
void criterion_boundary() {
    std::mt19937 rng(2023);
    std::uniform_real_distribution<double> betad(0.6, 1.5), rd(1.5, 6.0), pd(-2.0, 2.0),
        fd(0.15, 0.85);
    double worst = 0.0;
    for (int n : {1, 2, 3, 4, 6}) {
        const double wedge_angle = M_PI / n;
        for (int config = 0; config < 20; ++config) {
            const double beta = betad(rng);
            const double ang = fd(rng) * wedge_angle;
            const double r = rd(rng);
            GaussianPacket2D pk;
            pk.px_params = PacketParams1D{r * std::cos(ang), pd(rng), beta, 1.0, 1.0};
            pk.py_params = PacketParams1D{r * std::sin(ang), pd(rng), beta, 1.0, 1.0};
            const WedgeSystem system = make_wedge_system(n, pk);
            const double t0 = beta * beta;
            for (double t : {0.0, t0, 5.0 * t0}) {
                const double peak = coarse_peak(system, t, 60);
                const WedgeEvaluator eval(system, t);
                const double r_max = r + 12.0 * spread_at(pk.px_params, t);
                double wall = 0.0;
                for (int k = 1; k <= 1000; ++k) {
                    const double rr = r_max * k / 1000.0;
                    wall = std::max(wall, std::abs(eval.sum(rr, 0.0)));
                    wall = std::max(wall, std::abs(eval.sum(rr * std::cos(wedge_angle),
                                                            rr * std::sin(wedge_angle))));
                }
                worst = std::max(worst, wall / peak);
            }
        }
    }
    report(1, "wall boundary conditions", worst < 1e-12,
           fmt("max wall |psi|/peak = %.3e over N in {1,2,3,4,6} (tol 1e-12)", worst));
}

// ---------------------------------------------------------------------------
// 2. the N=3 solution equals the literal six-term 60-degree formula
cplx sixty_degree_sum(const GaussianPacket2D& pk, double x, double y, double t) {
    const double s3 = std::sqrt(3.0) / 2.0;
    return psi2d(pk, x, y, t) - psi2d(pk, x, -y, t) +
           psi2d(pk, -x / 2 - s3 * y, s3 * x - y / 2, t) -
           psi2d(pk, -x / 2 + s3 * y, s3 * x + y / 2, t) +
           psi2d(pk, -x / 2 + s3 * y, -s3 * x - y / 2, t) -
           psi2d(pk, -x / 2 - s3 * y, -s3 * x + y / 2, t);
}

void criterion_explicit_formula() {
    const WedgeSystem system = make_wedge_system(3, fig2_packet());
    std::mt19937 rng(71);
    std::uniform_real_distribution<double> rd(0.2, 9.0), fd(0.02, 0.98), td(0.0, 15.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double ang = fd(rng) * M_PI / 3.0;
        const double r = rd(rng);
        const double x = r * std::cos(ang), y = r * std::sin(ang);
        const double t = td(rng);
        const cplx mine = psi_wedge(system, x, y, t);
        const cplx hand = sixty_degree_sum(fig2_packet(), x, y, t);
        const double scale = std::max(std::abs(hand), 1e-300);
        worst = std::max(worst, std::abs(mine - hand) / scale);
    }
    report(2, "explicit 60-degree formula", worst < 1e-12,
           fmt("max relative deviation %.3e at 1000 interior points (tol 1e-12)", worst));
}

// ---------------------------------------------------------------------------
// 3. late-time escape along the wedge bisector
void criterion_escape_direction(const ExpectationRecord& late) {
    const double ratio = late.py / late.px;
    const double theta_deg = std::atan(ratio) * 180.0 / M_PI;
    const bool pass = std::abs(ratio - 0.577) <= 0.01 && std::abs(theta_deg - 30.0) <= 0.5;
    report(3, "bisector escape at t=15", pass,
           fmt("<py>/<px> = %.4f (0.577 +- 0.01), theta = %.2f deg (30 +- 0.5)", ratio,
               theta_deg));
}

// ---------------------------------------------------------------------------
// 4. norm and kinetic energy conservation
void criterion_conservation(const ExpectationSeries& series) {
    double nmin = 1e300, nmax = 0.0, tmin = 1e300, tmax = 0.0;
    for (const auto& rec : series.records) {
        nmin = std::min(nmin, rec.norm);
        nmax = std::max(nmax, rec.norm);
        tmin = std::min(tmin, rec.kinetic);
        tmax = std::max(tmax, rec.kinetic);
    }
    const double norm_drift = (nmax - nmin) / nmax;
    const double kin_drift = (tmax - tmin) / tmax;
    const bool pass = norm_drift < 1e-5 && kin_drift < 5e-3;
    report(4, "norm and <T> conservation", pass,
           fmt("norm drift %.2e (tol 1e-5), <T> drift %.2e (tol 5e-3) over t in {0,5,10,15}",
               norm_drift, kin_drift));
}

// ---------------------------------------------------------------------------
// 5. long-time momentum statistics of the half-line packet
void criterion_momentum_stats(const std::vector<MomentumDensity1D>& series,
                              const PacketParams1D& params) {
    const MomentumDensity1D& last = series.back();
    const double mean_target = 1.0 / std::sqrt(M_PI);
    const double ratio = last.spread_p / derived_scales(params).dp0;
    bool p2_ok = true;
    double p2_worst = 0.0;
    for (const auto& d : series) {
        const double rel = std::abs(d.mean_p2 - 0.5) / 0.5;
        p2_worst = std::max(p2_worst, rel);
        p2_ok = p2_ok && rel <= 0.01;
    }
    const bool mean_ok = std::abs(last.mean_p - mean_target) <= 0.03 * mean_target;
    const bool ratio_ok = std::abs(ratio - 0.603) <= 0.03;
    report(5, "folded momentum statistics", mean_ok && ratio_ok && p2_ok,
           fmt("mean_p(10) = %.4f (1/sqrt(pi) +- 3%%), spread/dp0 = %.4f (0.603 +- 0.03), "
               "max |<p^2>-0.5|/0.5 = %.2e (tol 1e-2)",
               last.mean_p, ratio, p2_worst));
}

// ---------------------------------------------------------------------------
// 6. interference zeros at p = n pi hbar / x0
void criterion_interference_zeros(const MomentumDensity1D& d) {
    bool all_ok = true;
    std::string detail;
    for (double target : {M_PI / 3.0, 2.0 * M_PI / 3.0}) {
        double best_p = 0.0, best_rho = 1e300;
        for (size_t i = 0; i < d.p_samples.size(); ++i) {
            if (std::abs(d.p_samples[i] - target) > 0.3) continue;
            if (d.density[i] < best_rho) {
                best_rho = d.density[i];
                best_p = d.p_samples[i];
            }
        }
        double left_max = 0.0, right_max = 0.0;
        for (size_t i = 0; i < d.p_samples.size(); ++i) {
            const double p = d.p_samples[i];
            if (p > target - 0.8 && p < best_p) left_max = std::max(left_max, d.density[i]);
            if (p > best_p && p < target + 0.8) right_max = std::max(right_max, d.density[i]);
        }
        const double contrast = best_rho / std::min(left_max, right_max);
        const bool ok = std::abs(best_p - target) <= 0.02 && contrast < 0.02;
        all_ok = all_ok && ok;
        detail += fmt("min at %.4f (target %.4f, tol 0.02), depth %.2e of neighbors; ", best_p,
                      target, contrast);
    }
    report(6, "interference zeros at t=10", all_ok, detail);
}

// ---------------------------------------------------------------------------
// 7. convergence to the long-time closed form
void criterion_longterm_form(const std::vector<MomentumDensity1D>& series,
                             const PacketParams1D& params) {
    std::vector<double> distances;
    for (const auto& d : series) distances.push_back(longterm_l1_distance(d, params));
    const bool monotone = distances[0] > distances[1] && distances[1] > distances[2];
    const bool close = distances[2] < 0.05;
    report(7, "approach to the long-time form", monotone && close,
           fmt("L1 distance at t={3,5,10}: %.4f, %.4f, %.4f (monotone: %s; tol 0.05 at t=10)",
               distances[0], distances[1], distances[2], monotone ? "yes" : "no"));
}

// ---------------------------------------------------------------------------
// 8. Schrodinger residual with second-order convergence
void criterion_residual() {
    const WedgeSystem system = make_wedge_system(3, fig2_packet());
    std::mt19937 rng(97);
    std::uniform_real_distribution<double> td(0.5, 5.0), xd(0.0, 1.0);
    const double h = 1e-3;
    double worst = 0.0;
    std::vector<double> ratios;
    int tested = 0;
    while (tested < 100) {
        const double t = td(rng);
        const GridSpec box = auto_grid(system, t, 8.0);
        const WedgeEvaluator eval(system, t);
        const double x = box.x_min + (box.x_max - box.x_min) * xd(rng);
        const double y = box.y_min + (box.y_max - box.y_min) * xd(rng);
        if (!inside_wedge(3, x, y) || !inside_wedge(3, x + h, y) || !inside_wedge(3, x - h, y) ||
            !inside_wedge(3, x, y + h) || !inside_wedge(3, x, y - h))
            continue;
        const double peak = coarse_peak(system, t, 60);
        if (std::abs(eval.sum(x, y)) < 1e-3 * peak) continue;
        const double res = schrodinger_residual(system, x, y, t, h);
        worst = std::max(worst, res / peak);
        if (tested < 20 && res > 1e-9 * peak)
            ratios.push_back(res / schrodinger_residual(system, x, y, t, h / 2.0));
        ++tested;
    }
    std::sort(ratios.begin(), ratios.end());
    const double median = ratios[ratios.size() / 2];
    const bool pass = worst < 1e-5 && median > 3.2 && median < 4.8;
    report(8, "PDE residual", pass,
           fmt("max residual/peak = %.3e (tol 1e-5), median h/(h/2) ratio %.2f (want ~4)",
               worst, median));
}

// ---------------------------------------------------------------------------
// 9. dihedral group structure for N = 1..8
void criterion_group_structure() {
    bool pass = true;
    double worst = 0.0;
    for (int n = 1; n <= 8; ++n) {
        const auto terms = build_wedge_images(n);
        const ClosureReport rep = verify_closure(terms);
        pass = pass && rep.pass && static_cast<int>(terms.size()) == 2 * n;
        worst = std::max(worst, rep.max_deviation);
        const PlaneIsometry m0 = reflection_across_x_axis();
        const PlaneIsometry m_wall = rotation(2.0 * M_PI / n).compose(m0);
        const double dev = m_wall.compose(m0).max_abs_diff(rotation(2.0 * M_PI / n));
        pass = pass && dev < 1e-12;
    }
    report(9, "dihedral group structure", pass,
           fmt("closure, sign=det and N/N split for N=1..8, max deviation %.3e (tol 1e-10)",
               worst));
}

// ---------------------------------------------------------------------------
// 10. byte-identical artifacts across worker counts
void criterion_determinism() {
    RunConfig cfg = load_run_config(std::string(WEDGEWAVE_SOURCE_DIR) + "/configs/fig2.cfg");
    const fs::path base = fs::temp_directory_path() / "wedgewave_acceptance";
    fs::remove_all(base);
    std::vector<fs::path> dirs;
    for (int threads : {1, 4, 8}) {
        const fs::path dir = base / ("threads_" + std::to_string(threads));
        cfg.output_dir = dir.string();
        run(cfg, threads);
        dirs.push_back(dir);
    }
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
    bool identical = true;
    size_t files = 0;
    for (const auto& entry : fs::directory_iterator(dirs[0])) {
        const std::string name = entry.path().filename().string();
        const std::string ref = slurp(entry.path());
        for (size_t d = 1; d < dirs.size(); ++d)
            identical = identical && slurp(dirs[d] / name) == ref;
        ++files;
    }
    fs::remove_all(base);
    report(10, "artifact byte determinism", identical && files == 9,
           fmt("%zu files compared across thread counts {1,4,8}", files));
}

}  // namespace

int main() {
    const auto start = std::chrono::steady_clock::now();

    criterion_boundary();
    criterion_explicit_formula();

    {
        const WedgeSystem system = make_wedge_system(3, fig2_packet());
        const ExpectationSeries series = expectation_series(system, {0.0, 5.0, 10.0, 15.0}, 8.0);
        criterion_escape_direction(series.records.back());
        criterion_conservation(series);
    }

    {
        const PacketParams1D params{3.0, 0.0, 1.0, 1.0, 1.0};
        const auto stats = momentum_stats_series(params, {0.0, 1.0, 3.0, 10.0});
        criterion_momentum_stats(stats, params);
        criterion_interference_zeros(stats.back());
        const auto form = momentum_stats_series(params, {3.0, 5.0, 10.0});
        criterion_longterm_form(form, params);
    }

    criterion_residual();
    criterion_group_structure();
    criterion_determinism();

    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%d of 10 criteria passed in %.1f s\n", 10 - g_failures, seconds);
    return g_failures == 0 ? 0 : 1;
}
