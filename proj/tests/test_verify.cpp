// The verification layer itself: the moment oracle that anchors half the
// integral checks, the suite registry the CLI dispatches on, and the
// determinism contract (same config in, byte-identical records out, no
// matter how the worker pool schedules the checks).

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <doctest.h>

#include "ncperiods/config.hpp"
#include "ncperiods/report.hpp"
#include "ncperiods/verify.hpp"

using namespace ncperiods;
using std::complex;

TEST_CASE("delta moment oracle: frozen values") {
    // Termwise integration of the discriminant form's q-expansion gives the
    // moments as finite sums of incomplete-Gamma factors.  These eleven
    // values were frozen from that formula; they are alternately purely
    // imaginary (even s) and purely real (odd s), and the quadrature-based
    // checks in the main suite must land on them to 1e-8 relative.
    const complex<double> frozen[11] = {
        {0.0, +5.958964989578241e-3},  {-3.707710464948067e-3, 0.0},
        {0.0, -2.541756054196645e-3},  {+1.931099200493784e-3, 0.0},
        {0.0, +1.633986034840700e-3},  {-1.544879360395027e-3, 0.0},
        {0.0, -1.633986034840700e-3},  {+1.931099200493784e-3, 0.0},
        {0.0, +2.541756054196645e-3},  {-3.707710464948067e-3, 0.0},
        {0.0, -5.958964989578243e-3},
    };
    for (int s = 0; s <= 10; ++s) {
        const complex<double> got = delta_moment_oracle(s);
        CHECK_MESSAGE(std::abs(got - frozen[s]) <= 1e-13 * std::abs(frozen[s]),
                      "s = ", s, ": got ", got.real(), " + ", got.imag(), "i");
    }
}

TEST_CASE("delta moment oracle: antisymmetry and domain") {
    // M_s + (-1)^s M_{10-s} = 0 holds exactly by the construction of the
    // Gamma-factor sum (the two sums are rearrangements of each other), so
    // the cancellation should be at roundoff, not merely at tolerance.
    for (int s = 0; s <= 10; ++s) {
        const complex<double> lhs =
            delta_moment_oracle(s) + ((s % 2 == 0) ? 1.0 : -1.0) * delta_moment_oracle(10 - s);
        CHECK(std::abs(lhs) <= 1e-17);
    }
    CHECK_THROWS_AS(delta_moment_oracle(-1), std::domain_error);
    CHECK_THROWS_AS(delta_moment_oracle(11), std::domain_error);
}

TEST_CASE("suite registry: names, partition, and lookup") {
    const auto& all = suites();
    REQUIRE_EQ(all.size(), 7u);
    CHECK_EQ(all.back().name, "all");
    CHECK_EQ(all.back().checks.size(), 10u);

    std::size_t partial_total = 0;
    for (const Suite& s : all) {
        CHECK(suite_known(s.name));
        CHECK_FALSE(s.summary.empty());
        if (s.name != "all") partial_total += s.checks.size();
    }
    // The named suites partition the full check set.
    CHECK_EQ(partial_total, 10u);

    CHECK(suite_known("multiplier"));
    CHECK(suite_known("dedekind"));
    CHECK(suite_known("cocycle"));
    CHECK_FALSE(suite_known("everything"));
    CHECK_FALSE(suite_known(""));
}

TEST_CASE("run_suite: unknown names and invalid configs die before work") {
    Config cfg;
    CHECK_THROWS_AS(run_suite("nosuchsuite", cfg), ConfigError);
    try {
        run_suite("nosuchsuite", cfg);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        // The message lists the valid names so the caller can fix the typo.
        const std::string what = e.what();
        CHECK(what.find("multiplier") != std::string::npos);
        CHECK(what.find("all") != std::string::npos);
    }
    cfg.depth = 9;
    CHECK_THROWS_AS(run_suite("multiplier", cfg), ConfigError);
}

TEST_CASE("run_suite: the multiplier suite passes and records its config") {
    Config cfg;
    const Report rep = run_suite("multiplier", cfg);
    CHECK_EQ(rep.suite(), "multiplier");
    CHECK(rep.all_pass());
    CHECK(rep.total() >= 9u);  // three weights x three generators, plus sweeps
    // The embedded snapshot lets a saved report be traced to its run.
    const std::string json = rep.to_json();
    CHECK(json.find("\"seed\": \"20240601\"") != std::string::npos);
}

TEST_CASE("run_suite: records are deterministic across runs") {
    // Checks fan out over a worker pool, so this guards against both seed
    // leakage between checks and order-dependent accumulation: two runs must
    // agree record for record, bit for bit.
    Config cfg;
    const Report a = run_suite("multiplier", cfg);
    const Report b = run_suite("multiplier", cfg);
    const auto ra = a.sorted_records(), rb = b.sorted_records();
    REQUIRE_EQ(ra.size(), rb.size());
    for (std::size_t i = 0; i < ra.size(); ++i) {
        CHECK_EQ(ra[i].id, rb[i].id);
        CHECK_EQ(ra[i].equation, rb[i].equation);
        CHECK_EQ(ra[i].inputs, rb[i].inputs);
        CHECK_EQ(ra[i].exact, rb[i].exact);
        CHECK_EQ(ra[i].residual, rb[i].residual);  // bitwise, not approximate
        CHECK_EQ(ra[i].pass, rb[i].pass);
    }
}

TEST_CASE("run_suite: a different seed moves the random sweeps") {
    // The randomized sweeps must actually depend on the seed (otherwise the
    // "random" coverage is an illusion); closed-form anchor records do not.
    Config a, b;
    b.seed = 777;
    const auto ra = run_suite("multiplier", a).sorted_records();
    const auto rb = run_suite("multiplier", b).sorted_records();
    REQUIRE_EQ(ra.size(), rb.size());
    bool any_differs = false;
    for (std::size_t i = 0; i < ra.size(); ++i)
        if (ra[i].inputs != rb[i].inputs) any_differs = true;
    CHECK(any_differs);
}
