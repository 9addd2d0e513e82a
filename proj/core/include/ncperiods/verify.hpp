#pragma once

// The verification suites.
//
// Every library-level identity the project promises is packaged here as a
// function Config -> Report, so the command line, the unit tests, and the
// acceptance gate all drive exactly the same code and disagree only about
// how the records are rendered.  Checks are independent of each other and
// of execution order; run_suite fans them out over a small worker pool and
// the report sorts by id, so output is byte-stable regardless of
// scheduling.

#include <complex>
#include <string>
#include <vector>

#include "ncperiods/config.hpp"
#include "ncperiods/report.hpp"

namespace ncperiods {

/// Closed-form multiplier values at sigma, theta, theta sigma theta for
/// weights 1/2, 5.3, 12.
Report check_multiplier_values(const Config& cfg = {});

/// Automorphy cocycle law j(gd, z) = j(g, dz) j(d, z) on random
/// (g, d, z) triples for every built-in weight.
Report check_automorphy_cocycle(const Config& cfg = {});

/// Modular invariance F(gz) = v(g) (cz+d)^w F(z) at random points for every
/// built-in form and each generator.
Report check_modular_invariance(const Config& cfg = {});

/// Moments int_0^{i inf} Delta(z) z^s dz, s = 0..10, against the
/// Gamma-factor oracle below (no quadrature in the oracle).
Report check_moment_oracle(const Config& cfg = {});

/// Classical Dedekind reciprocity, exact rationals, all coprime
/// 0 < p, q <= 200, with the <5s runtime budget recorded as a check.
Report check_classical_reciprocity(const Config& cfg = {});

/// Transport weight action (equivariance of J_a^b under the group) for the
/// families {w=12} and {w=12, w=5.3} and each generator.
Report check_weight_action(const Config& cfg = {});

/// Reciprocity series identities: scalar three-term relation on the coprime
/// grid <= 5 for every built-in form, full series recursion on five pairs,
/// and the path inversion J_0^inf . J_inf^0 = 1.
Report check_reciprocity_series(const Config& cfg = {});

/// Path cocycle: generator relations, the tau X = Y identity, and the
/// cocycle law on random group pairs, all through numeric transports.
Report check_path_cocycle(const Config& cfg = {});

/// Composition of transports at interior points and the shuffle relations.
Report check_composition_shuffle(const Config& cfg = {});

/// Exact layer: symbol reconstruction over the free group, cocycle
/// round-trip conversion, and the generator relations of the classical
/// cocycle over the rationals -- all word- or rational-exact.
Report check_symbol_algebra(const Config& cfg = {});

/// int_0^{i inf} Delta(z) z^s dz for s = 0..10 by termwise integration of
/// the q-expansion: finite sums of incomplete-Gamma factors, no quadrature.
/// Oracle for check_moment_oracle and the frozen values in the tests.
std::complex<double> delta_moment_oracle(int s);

struct Suite {
    std::string name;
    std::string summary;
    std::vector<Report (*)(const Config&)> checks;
};

/// The named suites the command line exposes, "all" last.
const std::vector<Suite>& suites();

bool suite_known(const std::string& name);

/// Runs the named suite's checks concurrently and merges their records.
/// Throws ConfigError for unknown names (the caller turns that into a
/// usage error).
Report run_suite(const std::string& name, const Config& cfg);

}  // namespace ncperiods
