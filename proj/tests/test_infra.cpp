// Configuration plumbing, report rendering, and the disk-backed quadrature
// cache.  These tests pin behaviour the CLI contract depends on: precedence
// of config sources, loud failure on typos, byte-stable report output, and
// the cache's bit-exact hit guarantee (a hit must return the very doubles
// that were stored, and a corrupted store must be dropped wholesale rather
// than trusted line by line).

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "ncperiods/cache.hpp"
#include "ncperiods/config.hpp"
#include "ncperiods/forms.hpp"
#include "ncperiods/iterated_periods.hpp"
#include "ncperiods/quadrature.hpp"
#include "ncperiods/report.hpp"

using namespace ncperiods;
namespace fs = std::filesystem;

namespace {

// Fresh empty directory under the system temp root, unique per test case so
// cache tests cannot see each other's files.
fs::path fresh_dir(const std::string& tag) {
    fs::path dir = fs::temp_directory_path() / ("ncperiods-test-" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string snapshot_value(const Config& c, const std::string& key) {
    for (const auto& [k, v] : c.snapshot())
        if (k == key) return v;
    return "<missing " + key + ">";
}

}  // namespace

TEST_CASE("config defaults match the documented knobs") {
    Config c;
    CHECK_EQ(c.quad_tol, 1e-12);
    CHECK_EQ(c.transport_tol, 1e-11);
    CHECK_EQ(c.expansion_terms, 256u);
    CHECK_EQ(c.depth, 3u);
    REQUIRE_EQ(c.family.size(), 2u);
    CHECK_EQ(c.family[0], 12.0);
    CHECK_EQ(c.family[1], 5.3);
    CHECK(c.cache_dir.empty());
    CHECK_EQ(c.format, OutputFormat::pretty);
    CHECK_FALSE(c.allow_depth4);
    CHECK_EQ(c.seed, 20240601u);
    CHECK_NOTHROW(c.validate());

    // Snapshot renders every knob; a report embedding it can reproduce the run.
    CHECK_EQ(snapshot_value(c, "depth"), "3");
    CHECK_EQ(snapshot_value(c, "terms"), "256");
    CHECK_EQ(snapshot_value(c, "format"), "pretty");
    CHECK_EQ(snapshot_value(c, "allow_depth4"), "false");
    CHECK_EQ(snapshot_value(c, "seed"), "20240601");
    CHECK_EQ(c.snapshot().size(), 9u);
}

TEST_CASE("config set covers every documented key") {
    Config c;
    c.set("quad_tol", "1e-9");
    c.set("transport_tol", "1e-8");
    c.set("terms", "64");
    c.set("depth", "2");
    c.set("family", "12,5.3,0.5");
    c.set("cache_dir", "/tmp/somewhere");
    c.set("format", "json");
    c.set("allow_depth4", "true");
    c.set("seed", "42");

    CHECK_EQ(c.quad_tol, 1e-9);
    CHECK_EQ(c.transport_tol, 1e-8);
    CHECK_EQ(c.expansion_terms, 64u);
    CHECK_EQ(c.depth, 2u);
    REQUIRE_EQ(c.family.size(), 3u);
    CHECK_EQ(c.family[2], 0.5);
    CHECK_EQ(c.cache_dir, "/tmp/somewhere");
    CHECK_EQ(c.format, OutputFormat::json);
    CHECK(c.allow_depth4);
    CHECK_EQ(c.seed, 42u);

    // Booleans accept the usual spellings in either direction.
    c.set("allow_depth4", "0");
    CHECK_FALSE(c.allow_depth4);
    c.set("allow_depth4", "yes");
    CHECK(c.allow_depth4);
    c.set("format", "csv");
    CHECK_EQ(c.format, OutputFormat::csv);
}

TEST_CASE("config rejects unknown keys and malformed values loudly") {
    Config c;
    CHECK_THROWS_AS(c.set("quadtol", "1e-9"), ConfigError);      // typo'd key
    CHECK_THROWS_AS(c.set("quad_tol", "fast"), ConfigError);     // not a number
    CHECK_THROWS_AS(c.set("depth", "-1"), ConfigError);          // negative count
    CHECK_THROWS_AS(c.set("allow_depth4", "maybe"), ConfigError);
    CHECK_THROWS_AS(c.set("format", "yaml"), ConfigError);
    CHECK_THROWS_AS(c.set("family", "12,abc"), ConfigError);

    // The message names the offending key so the user can find the typo.
    try {
        c.set("quadtol", "1e-9");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("quadtol") != std::string::npos);
    }
}

TEST_CASE("config validation enforces the documented invariants") {
    Config c;
    CHECK_NOTHROW(c.validate());

    SUBCASE("tolerances must be positive") {
        c.quad_tol = 0.0;
        CHECK_THROWS_AS(c.validate(), ConfigError);
        c.quad_tol = 1e-12;
        c.transport_tol = -1e-10;
        CHECK_THROWS_AS(c.validate(), ConfigError);
    }
    SUBCASE("at least one expansion term") {
        c.expansion_terms = 0;
        CHECK_THROWS_AS(c.validate(), ConfigError);
    }
    SUBCASE("depth 4 is opt-in and the message says how to opt in") {
        c.depth = 4;
        try {
            c.validate();
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("allow_depth4") != std::string::npos);
        }
        c.allow_depth4 = true;
        CHECK_NOTHROW(c.validate());
        c.depth = 5;  // the ceiling is 4 even when opted in
        CHECK_THROWS_AS(c.validate(), ConfigError);
    }
    SUBCASE("family size and weight positivity") {
        c.family = {12.0, 5.3, 0.5, 10.6, 12.0};
        CHECK_THROWS_AS(c.validate(), ConfigError);
        c.family = {12.0, -5.3};
        CHECK_THROWS_AS(c.validate(), ConfigError);
        c.family = {12.0, 5.3, 0.5, 10.6};
        CHECK_NOTHROW(c.validate());
    }
}

TEST_CASE("series tolerance relaxes only at depth 4") {
    Config c;
    c.depth = 3;
    CHECK_EQ(c.series_tolerance(1e-6), 1e-6);
    c.depth = 2;
    CHECK_EQ(c.series_tolerance(1e-7), 1e-7);
    c.depth = 4;
    c.allow_depth4 = true;
    CHECK_EQ(c.series_tolerance(1e-6), 1e-4);  // relaxed floor kicks in
    CHECK_EQ(c.series_tolerance(1e-3), 1e-3);  // but never tightens
}

TEST_CASE("config text parsing handles comments, blanks, and trimming") {
    const std::string text =
        "# verification run knobs\n"
        "depth = 2\n"
        "\n"
        "format= json   # trailing comment\n"
        "  family = 12 , 5.3\n"
        "cache_dir = /tmp/with space\n";
    Config c = parse_config_text(text);
    CHECK_EQ(c.depth, 2u);
    CHECK_EQ(c.format, OutputFormat::json);
    REQUIRE_EQ(c.family.size(), 2u);
    CHECK_EQ(c.family[1], 5.3);
    CHECK_EQ(c.cache_dir, "/tmp/with space");  // interior spaces survive

    // A line without '=' is reported with its line number.
    try {
        parse_config_text("depth = 2\nbogus line\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("config file loading reports the path on failure") {
    const fs::path dir = fresh_dir("cfgfile");
    const fs::path path = dir / "run.conf";
    {
        std::ofstream out(path);
        out << "seed = 7\nterms = 32\n";
    }
    Config c = load_config_file(path.string());
    CHECK_EQ(c.seed, 7u);
    CHECK_EQ(c.expansion_terms, 32u);

    const std::string missing = (dir / "no-such-file.conf").string();
    try {
        load_config_file(missing);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find(missing) != std::string::npos);
    }
    fs::remove_all(dir);
}

TEST_CASE("environment override supplies the cache directory") {
    const char* saved = std::getenv("NCPERIODS_CACHE_DIR");
    const std::string saved_copy = saved ? saved : "";

    ::setenv("NCPERIODS_CACHE_DIR", "/tmp/env-cache", 1);
    Config c;
    c.cache_dir = "/tmp/from-file";
    apply_env_overrides(c);
    CHECK_EQ(c.cache_dir, "/tmp/env-cache");  // env beats the file value

    ::unsetenv("NCPERIODS_CACHE_DIR");
    apply_env_overrides(c);
    CHECK_EQ(c.cache_dir, "/tmp/env-cache");  // absent env leaves it alone

    if (saved) ::setenv("NCPERIODS_CACHE_DIR", saved_copy.c_str(), 1);
}

TEST_CASE("output format names round-trip") {
    for (OutputFormat f : {OutputFormat::pretty, OutputFormat::json, OutputFormat::csv})
        CHECK_EQ(parse_format(format_name(f)), f);
    CHECK_THROWS_AS(parse_format("xml"), ConfigError);
}

TEST_CASE("report pass bookkeeping, sorting, and absorption") {
    Report rep("unit");
    rep.add_residual("b-second", "x = y", "{}", 1e-9, 1e-8);        // pass
    rep.add_exact("c-third", "p == q", "prose inputs", true);       // pass
    rep.add_residual("a-first", "u = v", "{}", 2e-8, 1e-8);         // fail
    const double nan = std::numeric_limits<double>::quiet_NaN();
    rep.add_residual("d-nan", "w = w", "{}", nan, 1e-3);            // NaN fails

    CHECK_EQ(rep.total(), 4u);
    CHECK_EQ(rep.failed(), 2u);
    CHECK_FALSE(rep.all_pass());

    // Boundary: residual exactly at tolerance passes.
    Report edge("edge");
    edge.add_residual("at-tol", "e", "{}", 1e-8, 1e-8);
    CHECK(edge.all_pass());

    // records() keeps insertion order; sorted_records() orders by id.
    CHECK_EQ(rep.records()[0].id, "b-second");
    const auto sorted = rep.sorted_records();
    CHECK_EQ(sorted[0].id, "a-first");
    CHECK_EQ(sorted[1].id, "b-second");
    CHECK_EQ(sorted[3].id, "d-nan");

    // absorb pulls in records and deduplicates form stamps.
    Report host("host");
    host.note_form("delta", 0x1234u);
    Report guest("guest");
    guest.note_form("delta", 0x1234u);  // duplicate of host's stamp
    guest.note_form("eta", 0x5678u);
    guest.add_exact("z-only", "r", "{}", true);
    host.absorb(guest);
    CHECK_EQ(host.suite(), "host");
    CHECK_EQ(host.total(), 1u);
    const auto j = nlohmann::json::parse(host.to_json());
    CHECK_EQ(j["forms"].size(), 2u);
    CHECK_EQ(j["forms"]["eta"], hash_hex(0x5678u));
}

TEST_CASE("report JSON carries config, forms, and per-check fields") {
    Report rep("shape");
    Config cfg;
    rep.set_config(cfg.snapshot());
    rep.note_form("delta", 0xabcdef01u);
    rep.add_residual("r1", "lhs = rhs", R"({"p":2,"q":1})", 3e-11, 1e-10);
    rep.add_exact("e1", "lhs == rhs", "plain prose", true);

    const auto j = nlohmann::json::parse(rep.to_json());
    CHECK_EQ(j["suite"], "shape");
    CHECK_EQ(j["total"], 2);
    CHECK_EQ(j["failed"], 0);
    CHECK(j["all_pass"].get<bool>());
    CHECK(j["wall_seconds"].get<double>() >= 0.0);
    CHECK_EQ(j["config"]["depth"], "3");
    CHECK_EQ(j["forms"]["delta"], hash_hex(0xabcdef01u));

    REQUIRE_EQ(j["checks"].size(), 2u);
    const auto& exact = j["checks"][0];  // "e1" sorts before "r1"
    CHECK_EQ(exact["id"], "e1");
    CHECK(exact["exact"].get<bool>());
    CHECK_FALSE(exact.contains("residual"));
    CHECK_EQ(exact["inputs"], "plain prose");  // prose embeds as a string

    const auto& res = j["checks"][1];
    CHECK_EQ(res["residual"], 3e-11);
    CHECK_EQ(res["tolerance"], 1e-10);
    CHECK_FALSE(res.contains("exact"));
    CHECK_EQ(res["inputs"]["p"], 2);  // JSON inputs survive as structure
}

TEST_CASE("report CSV and the field quoting rules") {
    Report rep("csv");
    rep.add_exact("b", "eq,with,commas", "{}", true);
    rep.add_residual("a", "plain", "{}", 0.5, 1.0);
    const std::string csv = rep.to_csv();
    CHECK(csv.rfind("id,equation,inputs,kind,residual,tolerance,pass\n", 0) == 0);
    CHECK(csv.find("a,plain,{},residual,0.5,1,true") != std::string::npos);
    CHECK(csv.find("b,\"eq,with,commas\",{},exact,,,true") != std::string::npos);

    CHECK_EQ(csv_field("plain"), "plain");
    CHECK_EQ(csv_field("a,b"), "\"a,b\"");
    CHECK_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    CHECK_EQ(csv_field("two\nlines"), "\"two\nlines\"");

    // render() dispatches on the format name; unknown names fall back to pretty.
    CHECK_EQ(rep.render("csv"), csv);
    CHECK(rep.render("pretty").rfind("suite csv:", 0) == 0);
    CHECK(rep.render("weird").rfind("suite csv:", 0) == 0);
    CHECK_EQ(nlohmann::json::parse(rep.render("json"))["suite"], "csv");
}

TEST_CASE("hash_hex renders 16 fixed hex digits") {
    CHECK_EQ(hash_hex(0), "0000000000000000");
    CHECK_EQ(hash_hex(0xdeadbeefull), "00000000deadbeef");
    CHECK_EQ(hash_hex(~0ull), "ffffffffffffffff");
}

TEST_CASE("memory-only cache tallies hits and misses") {
    QuadratureCache cache;
    const std::string k =
        QuadratureCache::key(0x1111u, Cusp(0, 1), Cusp(1, 0), Complex(0, -1), 1e-12);
    CHECK_FALSE(cache.find(k).has_value());
    CHECK_EQ(cache.misses(), 1);
    cache.store(k, {Complex(1.5, -2.5), 1e-13, 99});
    const auto hit = cache.find(k);
    REQUIRE(hit.has_value());
    CHECK_EQ(hit->value, Complex(1.5, -2.5));
    CHECK_EQ(hit->evals, 99);
    CHECK_EQ(cache.hits(), 1);
    CHECK_EQ(cache.size(), 1u);

    // Different tolerance -> different key: tolerances never alias.
    const std::string k2 =
        QuadratureCache::key(0x1111u, Cusp(0, 1), Cusp(1, 0), Complex(0, -1), 1e-10);
    CHECK_NE(k, k2);
    CHECK_FALSE(cache.find(k2).has_value());
}

TEST_CASE("disk cache persists bit-identical doubles across instances") {
    const fs::path dir = fresh_dir("cache-persist");
    const std::string k =
        QuadratureCache::key(0x2222u, Cusp(0, 1), Cusp(1, 0), Complex(0.25, -0.75), 1e-12);
    // Doubles with no short decimal rendering; %.17g must round-trip them.
    const CachedQuad stored{Complex(1.0 / 3.0, -2.0 / 7.0), 1e-13 / 3.0, 12345};
    {
        QuadratureCache cache(dir.string());
        CHECK(cache.path().find("quadrature.jsonl") != std::string::npos);
        cache.store(k, stored);
    }
    QuadratureCache reopened(dir.string());
    CHECK_FALSE(reopened.rebuilt());
    CHECK_EQ(reopened.size(), 1u);
    const auto hit = reopened.find(k);
    REQUIRE(hit.has_value());
    CHECK_EQ(hit->value.real(), stored.value.real());  // exact, not approximate
    CHECK_EQ(hit->value.imag(), stored.value.imag());
    CHECK_EQ(hit->err_estimate, stored.err_estimate);
    CHECK_EQ(hit->evals, stored.evals);
    fs::remove_all(dir);
}

TEST_CASE("a corrupted cache line drops the whole store") {
    const fs::path dir = fresh_dir("cache-corrupt");
    const std::string k =
        QuadratureCache::key(0x3333u, Cusp(0, 1), Cusp(1, 0), Complex(0, -1), 1e-12);
    {
        QuadratureCache cache(dir.string());
        cache.store(k, {Complex(4.0, 0.0), 0.0, 1});
    }
    {
        // Simulate a torn append.
        std::ofstream out(dir / "quadrature.jsonl", std::ios::app);
        out << "{\"key\": \"torn";
    }
    QuadratureCache reopened(dir.string());
    CHECK(reopened.rebuilt());
    CHECK_EQ(reopened.size(), 0u);  // even the valid line is dropped
    CHECK_FALSE(reopened.find(k).has_value());
    CHECK_EQ(fs::file_size(dir / "quadrature.jsonl"), 0u);  // file truncated
    fs::remove_all(dir);
}

TEST_CASE("duplicate cache keys: the last stored value wins on reload") {
    const fs::path dir = fresh_dir("cache-dup");
    const std::string k =
        QuadratureCache::key(0x4444u, Cusp(0, 1), Cusp(1, 0), Complex(0, -1), 1e-12);
    {
        QuadratureCache cache(dir.string());
        cache.store(k, {Complex(1.0, 0.0), 1e-15, 10});
        cache.store(k, {Complex(2.0, 0.0), 1e-16, 20});  // appends a second line
    }
    QuadratureCache reopened(dir.string());
    CHECK_FALSE(reopened.rebuilt());
    CHECK_EQ(reopened.size(), 1u);
    const auto hit = reopened.find(k);
    REQUIRE(hit.has_value());
    CHECK_EQ(hit->value, Complex(2.0, 0.0));
    CHECK_EQ(hit->evals, 20);
    fs::remove_all(dir);
}

TEST_CASE("cached period integrals hit on repeat and never alias exponents") {
    const fs::path dir = fresh_dir("cache-period");
    QuadratureCache cache(dir.string());
    const CuspForm delta(12.0, 64);
    const OneForm period{&delta, 10.0, Complex(0, -1)};
    QuadratureOptions opt;
    opt.tol = 1e-10;

    const QuadResult first = cached_period_integral(cache, period, Cusp(0, 1),
                                                    Cusp(1, 0), opt);
    CHECK_EQ(cache.misses(), 1);
    CHECK_EQ(cache.hits(), 0);
    const QuadResult again = cached_period_integral(cache, period, Cusp(0, 1),
                                                    Cusp(1, 0), opt);
    CHECK_EQ(cache.hits(), 1);
    CHECK_EQ(again.value.real(), first.value.real());  // bit-identical replay
    CHECK_EQ(again.value.imag(), first.value.imag());
    CHECK_EQ(again.err_estimate, first.err_estimate);
    CHECK_EQ(again.evals, first.evals);

    // Same form and endpoints, different exponent: a moment integral must
    // miss rather than collide with the period-function entry.
    OneForm moment = period;
    moment.k = 3.0;
    moment.t = Complex(0, 0);
    cached_period_integral(cache, moment, Cusp(0, 1), Cusp(1, 0), opt);
    CHECK_EQ(cache.misses(), 2);
    fs::remove_all(dir);
}

TEST_CASE("cached iterated periods replay a full hit without transport") {
    const fs::path dir = fresh_dir("cache-iterate");
    const FormFamily fam({CuspForm(12.0, 64)}, 2);
    const Cusp zero(0, 1), inf(1, 0);
    const Complex t(0, -1);
    TransportOptions opt;
    opt.tol = 1e-9;

    NCSeries direct = iterated_period(fam, zero, inf, t, opt);
    long replay_hits = 0;
    {
        QuadratureCache cache(dir.string());
        NCSeries first = cached_iterated_period(cache, fam, zero, inf, t, opt);
        CHECK_EQ(distance(first, direct), 0.0);  // same computation underneath
        CHECK(cache.misses() > 0);
        const long before = cache.hits();
        NCSeries second = cached_iterated_period(cache, fam, zero, inf, t, opt);
        replay_hits = cache.hits() - before;
        CHECK(replay_hits > 0);  // every word coefficient came from the store
        CHECK_EQ(distance(second, first), 0.0);
    }
    // And the replay survives a process restart byte-for-byte.
    QuadratureCache reopened(dir.string());
    NCSeries replayed = cached_iterated_period(reopened, fam, zero, inf, t, opt);
    CHECK_EQ(reopened.hits(), replay_hits);
    CHECK_EQ(distance(replayed, direct), 0.0);
    fs::remove_all(dir);
}
