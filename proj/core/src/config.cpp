#include "ncperiods/config.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace ncperiods {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size())
        throw ConfigError("config: " + key + " expects a number, got \"" + value + "\"");
    return x;
}

std::size_t parse_size(const std::string& key, const std::string& value) {
    const double x = parse_double(key, value);
    if (x < 0 || x != static_cast<double>(static_cast<std::size_t>(x)))
        throw ConfigError("config: " + key + " expects a nonnegative integer, got \"" +
                          value + "\"");
    return static_cast<std::size_t>(x);
}

bool parse_bool(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
    if (v == "0" || v == "false" || v == "off" || v == "no") return false;
    throw ConfigError("config: " + key + " expects a boolean, got \"" + value + "\"");
}

std::vector<double> parse_family(const std::string& value) {
    std::vector<double> out;
    std::string item;
    std::istringstream in(trim(value));
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(parse_double("family", item));
    }
    return out;
}

std::string render_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

const char* format_name(OutputFormat f) {
    switch (f) {
        case OutputFormat::json: return "json";
        case OutputFormat::csv: return "csv";
        case OutputFormat::pretty: return "pretty";
    }
    return "pretty";
}

OutputFormat parse_format(const std::string& name) {
    if (name == "json") return OutputFormat::json;
    if (name == "csv") return OutputFormat::csv;
    if (name == "pretty") return OutputFormat::pretty;
    throw ConfigError("config: unknown output format \"" + name +
                      "\" (expected json, csv, or pretty)");
}

void Config::set(const std::string& key, const std::string& value) {
    if (key == "quad_tol") {
        quad_tol = parse_double(key, value);
    } else if (key == "transport_tol") {
        transport_tol = parse_double(key, value);
    } else if (key == "terms") {
        expansion_terms = parse_size(key, value);
    } else if (key == "depth") {
        depth = parse_size(key, value);
    } else if (key == "family") {
        family = parse_family(value);
    } else if (key == "cache_dir") {
        cache_dir = trim(value);
    } else if (key == "format") {
        format = parse_format(trim(value));
    } else if (key == "allow_depth4") {
        allow_depth4 = parse_bool(key, value);
    } else if (key == "seed") {
        seed = static_cast<std::uint32_t>(parse_size(key, value));
    } else {
        throw ConfigError("config: unknown key \"" + key + "\"");
    }
}

void Config::validate() const {
    if (!(quad_tol > 0)) throw ConfigError("config: quad_tol must be positive");
    if (!(transport_tol > 0)) throw ConfigError("config: transport_tol must be positive");
    if (expansion_terms < 1) throw ConfigError("config: terms must be at least 1");
    const std::size_t ceiling = allow_depth4 ? 4 : 3;
    if (depth > ceiling)
        throw ConfigError(allow_depth4
                              ? "config: depth must be at most 4"
                              : "config: depth must be at most 3 (set allow_depth4 "
                                "to run depth 4 at the relaxed tolerance)");
    if (family.size() > 4) throw ConfigError("config: at most 4 family members");
    for (double w : family)
        if (!(w > 0)) throw ConfigError("config: family weights must be positive");
}

std::vector<std::pair<std::string, std::string>> Config::snapshot() const {
    std::string fam;
    for (std::size_t i = 0; i < family.size(); ++i) {
        if (i) fam += ',';
        fam += render_double(family[i]);
    }
    return {
        {"quad_tol", render_double(quad_tol)},
        {"transport_tol", render_double(transport_tol)},
        {"terms", std::to_string(expansion_terms)},
        {"depth", std::to_string(depth)},
        {"family", fam},
        {"cache_dir", cache_dir},
        {"format", format_name(format)},
        {"allow_depth4", allow_depth4 ? "true" : "false"},
        {"seed", std::to_string(seed)},
    };
}

double Config::series_tolerance(double base) const {
    return depth >= 4 ? std::max(base, 1e-4) : base;
}

Config parse_config_text(const std::string& text) {
    Config c;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected key = value, got \"" + line + "\"");
        c.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return c;
}

Config load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_config_text(buf.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

void apply_env_overrides(Config& c) {
    if (const char* dir = std::getenv("NCPERIODS_CACHE_DIR")) c.cache_dir = dir;
}

}  // namespace ncperiods
