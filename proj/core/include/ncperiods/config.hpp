#pragma once

// Run configuration shared by the command line and the verification suites.
//
// Sources, in increasing precedence: built-in defaults, a `key = value`
// config file, the NCPERIODS_CACHE_DIR environment variable (cache
// directory only), command-line flags.  Later sources simply call set()
// again, so "flags win" falls out of application order.
//
// The depth ceiling is 4, and depth 4 is opt-in (allow_depth4): the series
// identities accumulate roundoff through products of length-4 words whose
// coefficients differ by many orders of magnitude, so suites at depth 4 run
// against the relaxed tolerance 1e-4 (series_tolerance below).

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ncperiods {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { pretty, json, csv };

const char* format_name(OutputFormat f);
OutputFormat parse_format(const std::string& name);  // throws ConfigError

struct Config {
    double quad_tol = 1e-12;       // adaptive quadrature target (absolute)
    double transport_tol = 1e-11;  // series transport target
    std::size_t expansion_terms = 256;  // q-expansion length M
    std::size_t depth = 3;              // series truncation depth N
    std::vector<double> family{12.0, 5.3};  // weights of the working family
    std::string cache_dir;              // empty: no disk cache
    OutputFormat format = OutputFormat::pretty;
    bool allow_depth4 = false;
    std::uint32_t seed = 20240601;      // seeds the randomized identity sweeps

    /// Assign one knob from its textual form.  Keys are the field names
    /// above ("quad_tol", "transport_tol", "terms", "depth", "family",
    /// "cache_dir", "format", "allow_depth4", "seed"); family is a comma
    /// list of weights.  Throws ConfigError on unknown keys or unparsable
    /// values so typos die loudly instead of silently running defaults.
    void set(const std::string& key, const std::string& value);

    /// Enforces the invariants (positive tolerances, terms >= 1, depth <= 3
    /// or <= 4 with allow_depth4, at most 4 family members with positive
    /// weights).  Throws ConfigError.
    void validate() const;

    /// Stable key/value rendering, embedded in every report so a saved
    /// residual can be traced to the run that produced it.
    std::vector<std::pair<std::string, std::string>> snapshot() const;

    /// The tolerance a depth-sensitive identity actually runs at: `base`
    /// through depth 3, relaxed to 1e-4 at depth 4.
    double series_tolerance(double base) const;
};

/// Parse `key = value` lines; '#' starts a comment, blank lines are
/// skipped.  Values keep interior spaces, ends trimmed.
Config parse_config_text(const std::string& text);

/// parse_config_text over a file's contents; missing file is an error.
Config load_config_file(const std::string& path);

/// Apply environment overrides (NCPERIODS_CACHE_DIR) on top of `c`.
void apply_env_overrides(Config& c);

}  // namespace ncperiods
