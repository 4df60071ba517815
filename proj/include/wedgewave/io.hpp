#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wedgewave/config.hpp"

namespace wedgewave {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// FNV-1a 64-bit over raw bytes; the manifest checksum.
std::uint64_t fnv1a64(const std::string& bytes);
std::string checksum_hex(const std::string& bytes);

// -- exact text formats ------------------------------------------------------

/// Header lines `# t=<v>`, `# x: <min> <max> <n>`, `# y: <min> <max> <n>`,
/// then ny rows of nx space-separated values, all doubles at 17 significant
/// digits.
std::string format_density_csv(const DensityGrid& grid);
DensityGrid parse_density_csv(const std::string& text);

/// Single header row `t,norm,x,y,px,py,T`, one row per record.
std::string format_series_csv(const ExpectationSeries& series);

/// Stats comment header, then `p,density` rows for one time slice.
std::string format_momentum_csv(const MomentumDensity1D& density);

/// Summary over a series: `t,mean_p,spread_p,mean_p2,raw_norm`.
std::string format_momentum_stats_csv(const std::vector<MomentumDensity1D>& series);

/// `x,density` rows of the 1D mirror position density (Fig.-4 left panels).
std::string format_position_csv(const PacketParams1D& params, double t, double x_max,
                                int n_samples);

/// One line per image term: sign, the 4 matrix entries at 17 significant
/// digits, and the term's argument transform applied to the probe point.
std::string format_image_table(const std::vector<ImageTerm>& terms, double probe_x,
                               double probe_y);

/// 16-bit binary portable graymap. Header `P5\n<nx> <ny>\n65535\n`, rows top
/// to bottom (y descending), big-endian samples. Pixel value is
/// round-half-even of (density/max)^gamma * 65535; an all-zero grid renders
/// all-zero pixels.
std::string render_heatmap(const DensityGrid& grid, double gamma);

// -- artifact pipeline -------------------------------------------------------

struct RunResult {
    std::vector<std::string> files;  // relative to output_dir, manifest last
    std::vector<std::string> notes;  // tail warnings and similar
};

/// Executes every artifact request in the config, writing into
/// config.output_dir (created if needed). Writes are atomic (temp file +
/// rename) and `manifest.txt` lists every emitted file with checksum and
/// size. Throws IoError on filesystem failure, ConfigError on requests the
/// config cannot satisfy.
RunResult run(const RunConfig& config, int threads = 1);

struct ValidationOutcome {
    bool pass = true;
    std::vector<std::string> report;  // one line per check
};

/// Closure, wall-boundary and PDE-residual checks for the configured system.
ValidationOutcome validate(const RunConfig& config, unsigned seed = 12345);

}  // namespace wedgewave
