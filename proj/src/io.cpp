#include "wedgewave/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

namespace fs = std::filesystem;

namespace wedgewave {

namespace {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string index_name(const char* stem, size_t idx, const char* ext) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s_%03zu.%s", stem, idx, ext);
    return buf;
}

void write_file_atomic(const fs::path& path, const std::string& bytes) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw IoError("short write to '" + tmp.string() + "'");
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw IoError("cannot rename '" + tmp.string() + "': " + ec.message());
}

double parse_header_double(const std::string& line, const std::string& prefix) {
    if (line.rfind(prefix, 0) != 0)
        throw IoError("density CSV: expected header '" + prefix + "...', got '" + line + "'");
    return std::stod(line.substr(prefix.size()));
}

}  // namespace

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string checksum_hex(const std::string& bytes) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

std::string format_density_csv(const DensityGrid& grid) {
    std::ostringstream out;
    out << "# t=" << g17(grid.t) << "\n";
    out << "# x: " << g17(grid.spec.x_min) << " " << g17(grid.spec.x_max) << " " << grid.spec.nx
        << "\n";
    out << "# y: " << g17(grid.spec.y_min) << " " << g17(grid.spec.y_max) << " " << grid.spec.ny
        << "\n";
    for (int j = 0; j < grid.spec.ny; ++j) {
        for (int i = 0; i < grid.spec.nx; ++i) {
            if (i) out << ' ';
            out << g17(grid.at(i, j));
        }
        out << '\n';
    }
    return out.str();
}

DensityGrid parse_density_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    DensityGrid grid;
    if (!std::getline(in, line)) throw IoError("density CSV: empty input");
    grid.t = parse_header_double(line, "# t=");
    {
        if (!std::getline(in, line)) throw IoError("density CSV: missing x header");
        std::istringstream hs(line);
        std::string hash, axis;
        hs >> hash >> axis >> grid.spec.x_min >> grid.spec.x_max >> grid.spec.nx;
        if (hash != "#" || axis != "x:" || !hs) throw IoError("density CSV: bad x header");
    }
    {
        if (!std::getline(in, line)) throw IoError("density CSV: missing y header");
        std::istringstream hs(line);
        std::string hash, axis;
        hs >> hash >> axis >> grid.spec.y_min >> grid.spec.y_max >> grid.spec.ny;
        if (hash != "#" || axis != "y:" || !hs) throw IoError("density CSV: bad y header");
    }
    grid.spec.validate();
    grid.values.reserve(static_cast<size_t>(grid.spec.nx) * grid.spec.ny);
    double v;
    while (in >> v) grid.values.push_back(v);
    if (grid.values.size() != static_cast<size_t>(grid.spec.nx) * grid.spec.ny)
        throw IoError("density CSV: value count does not match the grid");
    return grid;
}

std::string format_series_csv(const ExpectationSeries& series) {
    std::ostringstream out;
    out << "t,norm,x,y,px,py,T\n";
    for (const ExpectationRecord& r : series.records) {
        out << g17(r.t) << ',' << g17(r.norm) << ',' << g17(r.x) << ',' << g17(r.y) << ','
            << g17(r.px) << ',' << g17(r.py) << ',' << g17(r.kinetic) << '\n';
    }
    return out.str();
}

std::string format_momentum_csv(const MomentumDensity1D& density) {
    std::ostringstream out;
    out << "# t=" << g17(density.t) << "\n";
    out << "# mean_p=" << g17(density.mean_p) << " spread_p=" << g17(density.spread_p)
        << " mean_p2=" << g17(density.mean_p2) << " raw_norm=" << g17(density.raw_norm) << "\n";
    out << "p,density\n";
    for (size_t i = 0; i < density.p_samples.size(); ++i)
        out << g17(density.p_samples[i]) << ',' << g17(density.density[i]) << '\n';
    return out.str();
}

std::string format_momentum_stats_csv(const std::vector<MomentumDensity1D>& series) {
    std::ostringstream out;
    out << "t,mean_p,spread_p,mean_p2,raw_norm\n";
    for (const MomentumDensity1D& d : series)
        out << g17(d.t) << ',' << g17(d.mean_p) << ',' << g17(d.spread_p) << ','
            << g17(d.mean_p2) << ',' << g17(d.raw_norm) << '\n';
    return out.str();
}

std::string format_position_csv(const PacketParams1D& params, double t, double x_max,
                                int n_samples) {
    std::ostringstream out;
    out << "# t=" << g17(t) << "\n";
    out << "x,density\n";
    const double dx = x_max / (n_samples - 1);
    for (int j = 0; j < n_samples; ++j) {
        const double x = j * dx;
        out << g17(x) << ',' << g17(std::norm(mirror_psi1d(params, x, t))) << '\n';
    }
    return out.str();
}

std::string format_image_table(const std::vector<ImageTerm>& terms, double probe_x,
                               double probe_y) {
    // columns: sign, the four matrix entries, the mapped probe point
    std::ostringstream out;
    for (const ImageTerm& term : terms) {
        double u, v;
        term.isometry.apply(probe_x, probe_y, u, v);
        out << (term.sign > 0 ? "+1" : "-1") << ' ' << g17(term.isometry.a) << ' '
            << g17(term.isometry.b) << ' ' << g17(term.isometry.c) << ' ' << g17(term.isometry.d)
            << ' ' << g17(u) << ' ' << g17(v) << '\n';
    }
    return out.str();
}

std::string render_heatmap(const DensityGrid& grid, double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("render_heatmap: gamma must be > 0");
    std::ostringstream out;
    out << "P5\n" << grid.spec.nx << ' ' << grid.spec.ny << "\n65535\n";
    const double max = grid.max_value();
    // rows top to bottom: y descending
    for (int j = grid.spec.ny - 1; j >= 0; --j) {
        for (int i = 0; i < grid.spec.nx; ++i) {
            unsigned v = 0;
            if (max > 0.0) {
                const double scaled = std::pow(grid.at(i, j) / max, gamma) * 65535.0;
                v = static_cast<unsigned>(std::nearbyint(scaled));  // ties to even
                v = std::min(v, 65535u);
            }
            out.put(static_cast<char>((v >> 8) & 0xff));
            out.put(static_cast<char>(v & 0xff));
        }
    }
    return out.str();
}

namespace {

struct ArtifactSink {
    fs::path dir;
    std::vector<std::pair<std::string, std::string>> entries;  // name -> checksum line body

    void emit(const std::string& name, const std::string& bytes) {
        write_file_atomic(dir / name, bytes);
        entries.emplace_back(name, checksum_hex(bytes) + " " + std::to_string(bytes.size()) +
                                       " " + name);
    }
};

void run_density_artifacts(const RunConfig& cfg, const WedgeSystem& system, bool want_csv,
                           bool want_heatmap, int threads, ArtifactSink& sink) {
    for (size_t idx = 0; idx < cfg.times.size(); ++idx) {
        const double t = cfg.times[idx];
        const GridSpec spec =
            cfg.grid.automatic ? auto_grid(system, t, cfg.grid.k_sigma) : cfg.grid.spec;
        const DensityGrid grid = density_grid(system, spec, t, threads);
        if (want_csv) sink.emit(index_name("density", idx, "csv"), format_density_csv(grid));
        if (want_heatmap)
            sink.emit(index_name("density", idx, "pgm"), render_heatmap(grid, cfg.gamma));
    }
}

void run_series_artifact(const RunConfig& cfg, const WedgeSystem& system, int threads,
                         ArtifactSink& sink, std::vector<std::string>& notes) {
    ExpectationSeries series;
    if (cfg.grid.automatic) {
        series = expectation_series(system, cfg.times, cfg.grid.k_sigma, threads);
    } else {
        for (double t : cfg.times) {
            const WedgeMoments m = wedge_moments(system, t, cfg.grid.spec, true, threads);
            const QuadratureInfo info = quadrature_tail_info(system, t, cfg.grid.spec, m);
            if (info.tail_warning) {
                char buf[128];
                std::snprintf(buf, sizeof(buf),
                              "t=%g: estimated quadrature tail %.3e exceeds 1e-8", t,
                              info.tail_estimate);
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
    }
    notes.insert(notes.end(), series.warnings.begin(), series.warnings.end());
    sink.emit("series.csv", format_series_csv(series));
}

void run_momentum_artifact(const RunConfig& cfg, ArtifactSink& sink) {
    if (cfg.px0 != 0.0)
        throw ConfigError("momentum1d artifacts require px0 = 0");
    if (!(cfg.x0 > 0.0)) throw ConfigError("momentum1d artifacts require x0 > 0");
    const PacketParams1D params{cfg.x0, 0.0, cfg.beta, cfg.m, cfg.hbar};
    const std::vector<MomentumDensity1D> series =
        momentum_stats_series(params, cfg.times, cfg.momentum);
    for (size_t idx = 0; idx < series.size(); ++idx)
        sink.emit(index_name("momentum", idx, "csv"), format_momentum_csv(series[idx]));
    sink.emit("momentum_stats.csv", format_momentum_stats_csv(series));
    if (cfg.momentum_emit_position) {
        for (size_t idx = 0; idx < cfg.times.size(); ++idx) {
            const double t = cfg.times[idx];
            const double x_max = cfg.momentum.x_max > 0.0
                                     ? cfg.momentum.x_max
                                     : params.x0 + 12.0 * spread_at(params, t);
            sink.emit(index_name("position", idx, "csv"),
                      format_position_csv(params, t, x_max, 2001));
        }
    }
}

}  // namespace

RunResult run(const RunConfig& cfg, int threads) {
    const WedgeSystem system = cfg.system();
    std::error_code ec;
    fs::create_directories(cfg.output_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + cfg.output_dir + "'");

    ArtifactSink sink;
    sink.dir = cfg.output_dir;
    std::vector<std::string> notes;

    const auto wants = [&cfg](Artifact a) {
        return std::find(cfg.artifacts.begin(), cfg.artifacts.end(), a) != cfg.artifacts.end();
    };
    if (wants(Artifact::Density) || wants(Artifact::Heatmap))
        run_density_artifacts(cfg, system, wants(Artifact::Density), wants(Artifact::Heatmap),
                              threads, sink);
    if (wants(Artifact::Series)) run_series_artifact(cfg, system, threads, sink, notes);
    if (wants(Artifact::Momentum1D)) run_momentum_artifact(cfg, sink);
    if (wants(Artifact::Images))
        sink.emit("images.txt", format_image_table(system.terms, cfg.x0, cfg.y0));

    std::sort(sink.entries.begin(), sink.entries.end());
    std::ostringstream manifest;
    manifest << "# wedgewave manifest v1\n";
    for (const auto& [name, line] : sink.entries) manifest << line << '\n';
    for (const std::string& note : notes) manifest << "# note: " << note << '\n';
    write_file_atomic(fs::path(cfg.output_dir) / "manifest.txt", manifest.str());

    RunResult result;
    for (const auto& [name, line] : sink.entries) result.files.push_back(name);
    result.files.push_back("manifest.txt");
    result.notes = notes;
    return result;
}

ValidationOutcome validate(const RunConfig& cfg, unsigned seed) {
    ValidationOutcome outcome;
    auto check = [&outcome](bool ok, const std::string& line) {
        outcome.pass = outcome.pass && ok;
        outcome.report.push_back(std::string(ok ? "PASS " : "FAIL ") + line);
    };
    char buf[160];

    const WedgeSystem system = cfg.system();
    {
        const ClosureReport rep = verify_closure(system.terms);
        std::snprintf(buf, sizeof(buf), "closure: dihedral group of order %zu, max deviation %.3e",
                      system.terms.size(), rep.max_deviation);
        check(rep.pass, buf);
    }
    {
        // generator relation: slanted-wall reflection after the y=0 reflection
        // is the rotation by 2 pi / N
        const PlaneIsometry m0 = reflection_across_x_axis();
        const PlaneIsometry m_slant =
            rotation(2.0 * M_PI / system.n_wedge).compose(m0);
        const double dev =
            m_slant.compose(m0).max_abs_diff(rotation(2.0 * M_PI / system.n_wedge));
        std::snprintf(buf, sizeof(buf), "generator relation: deviation %.3e", dev);
        check(dev < 1e-12, buf);
    }

    // boundary suite: unmasked image sum on both walls vs the in-wedge peak
    std::mt19937 rng(seed);
    {
        double worst = 0.0;
        for (double t : cfg.times) {
            const GridSpec coarse = auto_grid(system, t, 8.0);
            double peak = 0.0;
            const WedgeEvaluator eval(system, t);
            for (int j = 0; j < 101; ++j) {
                const double y = coarse.y_min + (coarse.y_max - coarse.y_min) * j / 100.0;
                for (int i = 0; i < 101; ++i) {
                    const double x = coarse.x_min + (coarse.x_max - coarse.x_min) * i / 100.0;
                    if (!inside_wedge(system.n_wedge, x, y)) continue;
                    peak = std::max(peak, std::abs(eval.sum(x, y)));
                }
            }
            const double r_max = std::hypot(cfg.x0, cfg.y0) + 12.0 *
                                     std::max(spread_at(system.packet.px_params, t),
                                              spread_at(system.packet.py_params, t));
            const double wall_angle = M_PI / system.n_wedge;
            double wall_max = 0.0;
            for (int k = 1; k <= 1000; ++k) {
                const double r = r_max * k / 1000.0;
                wall_max = std::max(wall_max, std::abs(eval.sum(r, 0.0)));
                wall_max = std::max(
                    wall_max, std::abs(eval.sum(r * std::cos(wall_angle), r * std::sin(wall_angle))));
            }
            worst = std::max(worst, wall_max / peak);
        }
        std::snprintf(buf, sizeof(buf), "boundary: max wall |psi| / peak = %.3e (tol 1e-12)",
                      worst);
        check(worst < 1e-12, buf);
    }

    // residual suite: 20 random points where the packet lives, 4 per time slice
    {
        const double h = 1e-3;
        const double t_hi = std::min(5.0, std::max(1.0, cfg.times.back()));
        std::uniform_real_distribution<double> tdist(0.5, t_hi);
        double worst = 0.0;
        for (int slice = 0; slice < 5; ++slice) {
            const double t = tdist(rng);
            const GridSpec box = auto_grid(system, t, 8.0);
            const WedgeEvaluator eval(system, t);
            double peak = 0.0;
            for (int j = 0; j < 101; ++j) {
                const double y = box.y_min + (box.y_max - box.y_min) * j / 100.0;
                for (int i = 0; i < 101; ++i) {
                    const double x = box.x_min + (box.x_max - box.x_min) * i / 100.0;
                    if (!inside_wedge(system.n_wedge, x, y)) continue;
                    peak = std::max(peak, std::abs(eval.sum(x, y)));
                }
            }
            std::uniform_real_distribution<double> xd(box.x_min, box.x_max);
            std::uniform_real_distribution<double> yd(box.y_min, box.y_max);
            int tested = 0;
            while (tested < 4) {
                const double x = xd(rng), y = yd(rng);
                if (!inside_wedge(system.n_wedge, x, y) ||
                    !inside_wedge(system.n_wedge, x + h, y) ||
                    !inside_wedge(system.n_wedge, x - h, y) ||
                    !inside_wedge(system.n_wedge, x, y + h) ||
                    !inside_wedge(system.n_wedge, x, y - h))
                    continue;
                if (std::abs(eval.sum(x, y)) < 1e-3 * peak) continue;
                worst = std::max(worst, schrodinger_residual(system, x, y, t, h) / peak);
                ++tested;
            }
        }
        std::snprintf(buf, sizeof(buf), "residual: max |SE residual| / peak = %.3e (tol 1e-5)",
                      worst);
        check(worst < 1e-5, buf);
    }
    return outcome;
}

}  // namespace wedgewave
