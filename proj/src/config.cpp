#include "wedgewave/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace wedgewave {

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_double(const std::string& value, const std::string& key, int line) {
    try {
        size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        if (!std::isfinite(v)) throw std::invalid_argument("not finite");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': cannot parse number from '" + value + "'", line);
    }
}

int parse_int(const std::string& value, const std::string& key, int line) {
    const double v = parse_double(value, key, line);
    if (v != std::floor(v) || std::abs(v) > 1e9)
        throw ConfigError("key '" + key + "': expected an integer, got '" + value + "'", line);
    return static_cast<int>(v);
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) items.push_back(trim(item));
    return items;
}

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Artifact parse_artifact(const std::string& name, int line) {
    if (name == "density") return Artifact::Density;
    if (name == "heatmap") return Artifact::Heatmap;
    if (name == "series") return Artifact::Series;
    if (name == "momentum1d") return Artifact::Momentum1D;
    if (name == "images") return Artifact::Images;
    throw ConfigError("unknown artifact '" + name + "'", line);
}

struct KeyedValue {
    std::string value;
    int line = 0;
    bool seen = false;
};

}  // namespace

std::string artifact_name(Artifact a) {
    switch (a) {
        case Artifact::Density: return "density";
        case Artifact::Heatmap: return "heatmap";
        case Artifact::Series: return "series";
        case Artifact::Momentum1D: return "momentum1d";
        case Artifact::Images: return "images";
    }
    return "?";
}

GaussianPacket2D RunConfig::packet() const {
    GaussianPacket2D packet;
    packet.px_params = PacketParams1D{x0, px0, beta, m, hbar};
    packet.py_params = PacketParams1D{y0, py0, beta, m, hbar};
    return packet;
}

WedgeSystem RunConfig::system() const { return make_wedge_system(wedge_n, packet()); }

bool RunConfig::operator==(const RunConfig& rhs) const {
    return wedge_n == rhs.wedge_n && x0 == rhs.x0 && y0 == rhs.y0 && px0 == rhs.px0 &&
           py0 == rhs.py0 && beta == rhs.beta && m == rhs.m && hbar == rhs.hbar &&
           times == rhs.times && grid.automatic == rhs.grid.automatic &&
           grid.k_sigma == rhs.grid.k_sigma && grid.spec.x_min == rhs.grid.spec.x_min &&
           grid.spec.x_max == rhs.grid.spec.x_max && grid.spec.y_min == rhs.grid.spec.y_min &&
           grid.spec.y_max == rhs.grid.spec.y_max && grid.spec.nx == rhs.grid.spec.nx &&
           grid.spec.ny == rhs.grid.spec.ny && artifacts == rhs.artifacts &&
           output_dir == rhs.output_dir && gamma == rhs.gamma &&
           momentum.x_max == rhs.momentum.x_max &&
           momentum.n_samples == rhs.momentum.n_samples &&
           momentum.pad_factor == rhs.momentum.pad_factor &&
           momentum.p_window == rhs.momentum.p_window &&
           momentum_emit_position == rhs.momentum_emit_position;
}

RunConfig parse_run_config(const std::string& text) {
    // section -> key -> value, duplicate keys rejected
    std::map<std::string, std::map<std::string, KeyedValue>> sections;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("unterminated section header", lineno);
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) throw ConfigError("empty section name", lineno);
            sections[section];
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'key = value', got '" + line + "'", lineno);
        if (section.empty()) throw ConfigError("key outside any [section]", lineno);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key", lineno);
        auto& slot = sections[section][key];
        if (slot.seen) throw ConfigError("duplicate key '" + key + "'", lineno);
        slot = KeyedValue{value, lineno, true};
    }

    static const std::map<std::string, std::vector<std::string>> known = {
        {"wedge", {"n"}},
        {"packet", {"x0", "y0", "px0", "py0", "beta", "m", "hbar"}},
        {"times", {"values"}},
        {"grid", {"mode", "k_sigma", "x_min", "x_max", "y_min", "y_max", "nx", "ny"}},
        {"output", {"dir", "artifacts", "gamma"}},
        {"momentum", {"x_max", "n_samples", "pad", "p_window", "emit_position"}},
    };
    for (const auto& [name, keys] : sections) {
        const auto it = known.find(name);
        if (it == known.end()) {
            // report the first key's line for location info
            const int line = keys.empty() ? 0 : keys.begin()->second.line;
            throw ConfigError("unknown section [" + name + "]", line);
        }
        for (const auto& [key, kv] : keys) {
            if (std::find(it->second.begin(), it->second.end(), key) == it->second.end())
                throw ConfigError("unknown key '" + key + "' in [" + name + "]", kv.line);
        }
    }

    auto get = [&sections](const std::string& sec, const std::string& key) -> const KeyedValue* {
        const auto sit = sections.find(sec);
        if (sit == sections.end()) return nullptr;
        const auto kit = sit->second.find(key);
        return kit == sit->second.end() ? nullptr : &kit->second;
    };
    auto require = [&get](const std::string& sec, const std::string& key) -> const KeyedValue& {
        const KeyedValue* kv = get(sec, key);
        if (!kv) throw ConfigError("missing required key '" + key + "' in [" + sec + "]");
        return *kv;
    };

    RunConfig cfg;
    {
        const KeyedValue& kv = require("wedge", "n");
        cfg.wedge_n = parse_int(kv.value, "n", kv.line);
        if (cfg.wedge_n < 1) throw ConfigError("key 'n': wedge index must be >= 1", kv.line);
    }
    {
        auto num = [&](const char* key, double& dst, bool positive) {
            const KeyedValue& kv = require("packet", key);
            dst = parse_double(kv.value, key, kv.line);
            if (positive && !(dst > 0.0))
                throw ConfigError(std::string("key '") + key + "': must be > 0", kv.line);
        };
        num("x0", cfg.x0, false);
        num("y0", cfg.y0, false);
        num("px0", cfg.px0, false);
        num("py0", cfg.py0, false);
        num("beta", cfg.beta, true);
        num("m", cfg.m, true);
        num("hbar", cfg.hbar, true);
    }
    {
        const KeyedValue& kv = require("times", "values");
        for (const std::string& item : split_list(kv.value))
            cfg.times.push_back(parse_double(item, "values", kv.line));
        if (cfg.times.empty()) throw ConfigError("key 'values': times list is empty", kv.line);
        for (size_t i = 1; i < cfg.times.size(); ++i)
            if (!(cfg.times[i] > cfg.times[i - 1]))
                throw ConfigError("key 'values': times must be strictly increasing", kv.line);
        if (cfg.times.front() < 0.0)
            throw ConfigError("key 'values': times must be non-negative", kv.line);
    }
    if (const KeyedValue* mode = get("grid", "mode")) {
        if (mode->value == "auto") {
            cfg.grid.automatic = true;
        } else if (mode->value == "explicit") {
            cfg.grid.automatic = false;
        } else {
            throw ConfigError("key 'mode': expected 'auto' or 'explicit'", mode->line);
        }
    }
    if (cfg.grid.automatic) {
        for (const char* key : {"x_min", "x_max", "y_min", "y_max", "nx", "ny"})
            if (const KeyedValue* kv = get("grid", key))
                throw ConfigError(std::string("key '") + key + "' requires mode = explicit",
                                  kv->line);
        if (const KeyedValue* kv = get("grid", "k_sigma")) {
            cfg.grid.k_sigma = parse_double(kv->value, "k_sigma", kv->line);
            if (!(cfg.grid.k_sigma >= 6.0))
                throw ConfigError("key 'k_sigma': must be >= 6", kv->line);
        }
    } else {
        if (const KeyedValue* kv = get("grid", "k_sigma"))
            throw ConfigError("key 'k_sigma' requires mode = auto", kv->line);
        GridSpec spec;
        auto num = [&](const char* key, double& dst) {
            const KeyedValue& kv = require("grid", key);
            dst = parse_double(kv.value, key, kv.line);
        };
        num("x_min", spec.x_min);
        num("x_max", spec.x_max);
        num("y_min", spec.y_min);
        num("y_max", spec.y_max);
        const KeyedValue& kx = require("grid", "nx");
        spec.nx = parse_int(kx.value, "nx", kx.line);
        const KeyedValue& ky = require("grid", "ny");
        spec.ny = parse_int(ky.value, "ny", ky.line);
        try {
            spec.validate();
        } catch (const std::exception& e) {
            throw ConfigError(std::string("[grid]: ") + e.what());
        }
        cfg.grid.spec = spec;
    }
    {
        const KeyedValue& kv = require("output", "dir");
        if (kv.value.empty()) throw ConfigError("key 'dir': empty output directory", kv.line);
        cfg.output_dir = kv.value;
        const KeyedValue& art = require("output", "artifacts");
        for (const std::string& item : split_list(art.value))
            cfg.artifacts.push_back(parse_artifact(item, art.line));
        if (cfg.artifacts.empty())
            throw ConfigError("key 'artifacts': list is empty", art.line);
        for (size_t i = 0; i < cfg.artifacts.size(); ++i)
            for (size_t j = i + 1; j < cfg.artifacts.size(); ++j)
                if (cfg.artifacts[i] == cfg.artifacts[j])
                    throw ConfigError("key 'artifacts': duplicate entry '" +
                                          artifact_name(cfg.artifacts[i]) + "'",
                                      art.line);
        if (const KeyedValue* kv2 = get("output", "gamma")) {
            cfg.gamma = parse_double(kv2->value, "gamma", kv2->line);
            if (!(cfg.gamma > 0.0)) throw ConfigError("key 'gamma': must be > 0", kv2->line);
        }
    }
    if (const KeyedValue* kv = get("momentum", "x_max")) {
        cfg.momentum.x_max = parse_double(kv->value, "x_max", kv->line);
        if (!(cfg.momentum.x_max > 0.0))
            throw ConfigError("key 'x_max': must be > 0", kv->line);
    }
    if (const KeyedValue* kv = get("momentum", "n_samples")) {
        cfg.momentum.n_samples = parse_int(kv->value, "n_samples", kv->line);
        if (cfg.momentum.n_samples < (1 << 12))
            throw ConfigError("key 'n_samples': must be >= 4096", kv->line);
    }
    if (const KeyedValue* kv = get("momentum", "pad")) {
        cfg.momentum.pad_factor = parse_int(kv->value, "pad", kv->line);
        if (cfg.momentum.pad_factor < 1) throw ConfigError("key 'pad': must be >= 1", kv->line);
    }
    if (const KeyedValue* kv = get("momentum", "p_window")) {
        cfg.momentum.p_window = parse_double(kv->value, "p_window", kv->line);
        if (!(cfg.momentum.p_window > 0.0))
            throw ConfigError("key 'p_window': must be > 0", kv->line);
    }
    if (const KeyedValue* kv = get("momentum", "emit_position")) {
        if (kv->value == "true") {
            cfg.momentum_emit_position = true;
        } else if (kv->value == "false") {
            cfg.momentum_emit_position = false;
        } else {
            throw ConfigError("key 'emit_position': expected true or false", kv->line);
        }
    }
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_run_config(buf.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what(), 0);
    }
}

std::string serialize_run_config(const RunConfig& cfg) {
    std::ostringstream out;
    out << "[wedge]\n";
    out << "n = " << cfg.wedge_n << "\n\n";
    out << "[packet]\n";
    out << "x0 = " << format_g17(cfg.x0) << "\n";
    out << "y0 = " << format_g17(cfg.y0) << "\n";
    out << "px0 = " << format_g17(cfg.px0) << "\n";
    out << "py0 = " << format_g17(cfg.py0) << "\n";
    out << "beta = " << format_g17(cfg.beta) << "\n";
    out << "m = " << format_g17(cfg.m) << "\n";
    out << "hbar = " << format_g17(cfg.hbar) << "\n\n";
    out << "[times]\n";
    out << "values = ";
    for (size_t i = 0; i < cfg.times.size(); ++i) {
        if (i) out << ", ";
        out << format_g17(cfg.times[i]);
    }
    out << "\n\n";
    out << "[grid]\n";
    if (cfg.grid.automatic) {
        out << "mode = auto\n";
        out << "k_sigma = " << format_g17(cfg.grid.k_sigma) << "\n\n";
    } else {
        out << "mode = explicit\n";
        out << "x_min = " << format_g17(cfg.grid.spec.x_min) << "\n";
        out << "x_max = " << format_g17(cfg.grid.spec.x_max) << "\n";
        out << "y_min = " << format_g17(cfg.grid.spec.y_min) << "\n";
        out << "y_max = " << format_g17(cfg.grid.spec.y_max) << "\n";
        out << "nx = " << cfg.grid.spec.nx << "\n";
        out << "ny = " << cfg.grid.spec.ny << "\n\n";
    }
    out << "[output]\n";
    out << "dir = " << cfg.output_dir << "\n";
    out << "artifacts = ";
    for (size_t i = 0; i < cfg.artifacts.size(); ++i) {
        if (i) out << ", ";
        out << artifact_name(cfg.artifacts[i]);
    }
    out << "\n";
    out << "gamma = " << format_g17(cfg.gamma) << "\n\n";
    out << "[momentum]\n";
    if (cfg.momentum.x_max > 0.0) out << "x_max = " << format_g17(cfg.momentum.x_max) << "\n";
    out << "n_samples = " << cfg.momentum.n_samples << "\n";
    out << "pad = " << cfg.momentum.pad_factor << "\n";
    if (cfg.momentum.p_window > 0.0)
        out << "p_window = " << format_g17(cfg.momentum.p_window) << "\n";
    out << "emit_position = " << (cfg.momentum_emit_position ? "true" : "false") << "\n";
    return out.str();
}

}  // namespace wedgewave
