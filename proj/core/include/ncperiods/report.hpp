#pragma once

// Machine-readable verification reports.
//
// A suite run produces a flat list of check records -- one identity instance
// each, carrying either a measured residual against a tolerance or an exact
// yes/no verdict -- plus enough context to trace any number in a saved
// report back to the run that made it: the config snapshot, content hashes
// of the forms involved, and wall time.  Records sort by id before anything
// is emitted, so checks may run in any order (or concurrently) without
// perturbing the output byte stream.
//
// The `inputs` field of a record is a pre-rendered JSON value (callers
// build it with their JSON library of choice and pass the compact dump);
// plain prose is also accepted and is embedded as a JSON string.

#include <chrono>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ncperiods {

struct CheckRecord {
    std::string id;        // unique within a report; the sort key
    std::string equation;  // which identity this instance exercises
    std::string inputs;    // rendered JSON (or prose) pinning the instance
    bool exact = false;    // exact verdict instead of residual vs tolerance
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

class Report {
public:
    explicit Report(std::string suite);

    /// pass = (residual <= tolerance), with NaN counting as failure.
    void add_residual(std::string id, std::string equation, std::string inputs,
                      double residual, double tolerance);
    void add_exact(std::string id, std::string equation, std::string inputs,
                   bool pass);

    /// Pulls in another report's records and form hashes (for suite
    /// aggregation); the receiving report keeps its own name and clock.
    void absorb(const Report& other);

    /// Stamp a form definition the checks depended on; duplicates collapse.
    void note_form(const std::string& name, std::uint64_t content_hash);

    void set_config(std::vector<std::pair<std::string, std::string>> snapshot);

    const std::string& suite() const { return suite_; }
    bool all_pass() const;
    std::size_t total() const { return records_.size(); }
    std::size_t failed() const;

    /// Seconds since construction; reports created before their checks run
    /// therefore cover the whole suite.
    double wall_seconds() const;

    /// Records sorted by id (the stored order is insertion order).
    std::vector<CheckRecord> sorted_records() const;
    const std::vector<CheckRecord>& records() const { return records_; }

    std::string to_json(int indent = 2) const;
    std::string to_csv() const;
    std::string pretty() const;

    /// Render in the named format ("json", "csv", or anything else ->
    /// pretty); the switch every command's --format flag funnels through.
    std::string render(const std::string& format) const;

private:
    std::string suite_;
    std::chrono::steady_clock::time_point start_;
    std::vector<CheckRecord> records_;
    std::vector<std::pair<std::string, std::string>> config_;
    std::vector<std::pair<std::string, std::string>> forms_;  // name -> hash hex
};

/// RFC-4180 field quoting: wraps in double quotes when the text contains a
/// comma, quote, or newline (quotes doubled).  Shared with the CLI's symbol
/// table exporter.
std::string csv_field(const std::string& s);

/// 16-hex-digit rendering used for content hashes in reports and cache keys.
std::string hash_hex(std::uint64_t h);

}  // namespace ncperiods
