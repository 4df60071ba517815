#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wedgewave/momentum.hpp"
#include "wedgewave/observables.hpp"

namespace wedgewave {

/// Configuration problem: bad syntax, unknown key, range violation. `line` is
/// 0 when the problem is not tied to one line.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string message, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                      : message),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

enum class Artifact { Density, Heatmap, Series, Momentum1D, Images };

std::string artifact_name(Artifact a);

struct GridConfig {
    bool automatic = true;
    double k_sigma = 8.0;   // when automatic
    GridSpec spec;          // when explicit
};

struct RunConfig {
    int wedge_n = 1;
    double x0 = 0.0, y0 = 0.0;
    double px0 = 0.0, py0 = 0.0;
    double beta = 1.0, m = 1.0, hbar = 1.0;
    std::vector<double> times;
    GridConfig grid;
    std::vector<Artifact> artifacts;
    std::string output_dir = "out";
    double gamma = 1.0;
    TransformSettings momentum;
    bool momentum_emit_position = true;

    GaussianPacket2D packet() const;
    WedgeSystem system() const;

    bool operator==(const RunConfig& rhs) const;
};

/// Parses the line-oriented `key = value` format with `[section]` headers.
/// Unknown sections/keys, malformed lines, range violations and missing
/// required keys all raise ConfigError with the offending line.
RunConfig parse_run_config(const std::string& text);

/// Reads and parses a config file; errors are prefixed with the path.
RunConfig load_run_config(const std::string& path);

/// Canonical text form; parse(serialize(c)) == c.
std::string serialize_run_config(const RunConfig& config);

}  // namespace wedgewave
