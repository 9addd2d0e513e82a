#include "ncperiods/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ncperiods {

namespace {

// Residual / tolerance columns of the pretty table.
std::string short_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

// The inputs string is normally a rendered JSON value; fall back to
// embedding it as a string so prose inputs cannot corrupt the report.
nlohmann::json inputs_as_json(const std::string& s) {
    if (!s.empty() && (s.front() == '{' || s.front() == '[' || s.front() == '"')) {
        nlohmann::json parsed = nlohmann::json::parse(s, nullptr, false);
        if (!parsed.is_discarded()) return parsed;
    }
    return nlohmann::json(s);
}

}  // namespace

Report::Report(std::string suite)
    : suite_(std::move(suite)), start_(std::chrono::steady_clock::now()) {}

void Report::add_residual(std::string id, std::string equation, std::string inputs,
                          double residual, double tolerance) {
    CheckRecord r;
    r.id = std::move(id);
    r.equation = std::move(equation);
    r.inputs = std::move(inputs);
    r.exact = false;
    r.residual = residual;
    r.tolerance = tolerance;
    r.pass = std::isfinite(residual) && residual <= tolerance;
    records_.push_back(std::move(r));
}

void Report::add_exact(std::string id, std::string equation, std::string inputs,
                       bool pass) {
    CheckRecord r;
    r.id = std::move(id);
    r.equation = std::move(equation);
    r.inputs = std::move(inputs);
    r.exact = true;
    r.pass = pass;
    records_.push_back(std::move(r));
}

void Report::absorb(const Report& other) {
    records_.insert(records_.end(), other.records_.begin(), other.records_.end());
    for (const auto& f : other.forms_) {
        if (std::find(forms_.begin(), forms_.end(), f) == forms_.end())
            forms_.push_back(f);
    }
}

void Report::note_form(const std::string& name, std::uint64_t content_hash) {
    std::pair<std::string, std::string> entry{name, hash_hex(content_hash)};
    if (std::find(forms_.begin(), forms_.end(), entry) == forms_.end())
        forms_.push_back(std::move(entry));
}

void Report::set_config(std::vector<std::pair<std::string, std::string>> snapshot) {
    config_ = std::move(snapshot);
}

bool Report::all_pass() const {
    return std::all_of(records_.begin(), records_.end(),
                       [](const CheckRecord& r) { return r.pass; });
}

std::size_t Report::failed() const {
    return static_cast<std::size_t>(std::count_if(
        records_.begin(), records_.end(), [](const CheckRecord& r) { return !r.pass; }));
}

double Report::wall_seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
}

std::vector<CheckRecord> Report::sorted_records() const {
    std::vector<CheckRecord> out = records_;
    std::stable_sort(out.begin(), out.end(),
                     [](const CheckRecord& a, const CheckRecord& b) { return a.id < b.id; });
    return out;
}

std::string Report::to_json(int indent) const {
    nlohmann::json j;
    j["suite"] = suite_;
    j["total"] = total();
    j["failed"] = failed();
    j["all_pass"] = all_pass();
    j["wall_seconds"] = wall_seconds();

    nlohmann::json cfg = nlohmann::json::object();
    for (const auto& [k, v] : config_) cfg[k] = v;
    j["config"] = std::move(cfg);

    nlohmann::json forms = nlohmann::json::object();
    for (const auto& [name, hash] : forms_) forms[name] = hash;
    j["forms"] = std::move(forms);

    nlohmann::json checks = nlohmann::json::array();
    for (const CheckRecord& r : sorted_records()) {
        nlohmann::json c;
        c["id"] = r.id;
        c["equation"] = r.equation;
        c["inputs"] = inputs_as_json(r.inputs);
        if (r.exact) {
            c["exact"] = true;
        } else {
            c["residual"] = r.residual;
            c["tolerance"] = r.tolerance;
        }
        c["pass"] = r.pass;
        checks.push_back(std::move(c));
    }
    j["checks"] = std::move(checks);
    return j.dump(indent);
}

std::string Report::to_csv() const {
    std::ostringstream out;
    out << "id,equation,inputs,kind,residual,tolerance,pass\n";
    char buf[40];
    for (const CheckRecord& r : sorted_records()) {
        out << csv_field(r.id) << ',' << csv_field(r.equation) << ','
            << csv_field(r.inputs) << ',';
        if (r.exact) {
            out << "exact,,,";
        } else {
            out << "residual,";
            std::snprintf(buf, sizeof buf, "%.17g", r.residual);
            out << buf << ',';
            std::snprintf(buf, sizeof buf, "%.17g", r.tolerance);
            out << buf << ',';
        }
        out << (r.pass ? "true" : "false") << '\n';
    }
    return out.str();
}

std::string Report::pretty() const {
    const auto rows = sorted_records();
    std::size_t id_width = 2;
    for (const CheckRecord& r : rows) id_width = std::max(id_width, r.id.size());

    std::ostringstream out;
    out << "suite " << suite_ << ": " << total() << " checks, " << (total() - failed())
        << " passed, " << failed() << " failed";
    char wall[32];
    std::snprintf(wall, sizeof wall, "%.1f", wall_seconds());
    out << "  (" << wall << " s)\n";
    for (const auto& [name, hash] : forms_) out << "form " << name << "  " << hash << '\n';
    for (const CheckRecord& r : rows) {
        out << (r.pass ? "  pass  " : "  FAIL  ") << r.id
            << std::string(id_width - r.id.size() + 2, ' ');
        if (r.exact) {
            out << "exact            ";
        } else {
            std::string res = short_double(r.residual);
            out << res << std::string(res.size() < 9 ? 9 - res.size() : 1, ' ') << " <= "
                << short_double(r.tolerance) << "  ";
        }
        out << r.equation;
        if (!r.inputs.empty()) out << "  " << r.inputs;
        out << '\n';
    }
    out << (all_pass() ? "PASS" : "FAIL") << '\n';
    return out.str();
}

std::string Report::render(const std::string& format) const {
    if (format == "json") return to_json();
    if (format == "csv") return to_csv();
    return pretty();
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string hash_hex(std::uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace ncperiods
