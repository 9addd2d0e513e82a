// Iterated period integrals via ODE transport.
//
// The single-letter slice has an independent oracle (direct quadrature);
// the depth-2 slice has another (nested two-level quadrature).  The
// structural identities — composition, inversion, shuffle, equivariance —
// close the loop at all depths.
#include "doctest.h"

#include <cmath>
#include <complex>

#include "ncperiods/iterated_periods.hpp"
#include "ncperiods/modular_group.hpp"
#include "ncperiods/quadrature.hpp"

using namespace ncperiods;

namespace {

FormFamily delta_family(std::size_t depth, std::size_t M = 96) {
    return FormFamily({CuspForm(12.0, M)}, depth);
}

FormFamily two_family(std::size_t depth, std::size_t M = 96) {
    return FormFamily({CuspForm(12.0, M), CuspForm(5.3, M)}, depth);
}

const Complex kT(0.0, -1.0);

}  // namespace

TEST_CASE("family bookkeeping") {
    const FormFamily fam = two_family(3);
    CHECK_EQ(fam.size(), 2);
    CHECK_EQ(fam.depth(), 3);
    CHECK_EQ(fam.power(0), 10.0);
    CHECK_EQ(fam.power(1), doctest::Approx(3.3));
    const auto v = fam.multiplier_values(sigma_gen());
    REQUIRE_EQ(v.size(), 2);
    CHECK_LE(std::abs(v[0] - 1.0), 1e-12);  // weight 12: trivial
}

TEST_CASE("depth zero is the constant series 1") {
    const FormFamily fam = two_family(0);
    const NCSeries J = iterated_period(fam, Cusp(0, 1), Cusp::infinity(), kT);
    CHECK_EQ(J.depth(), 0);
    CHECK_EQ(J.coeff({}), Complex(1.0, 0.0));
}

TEST_CASE("empty path gives the unit series") {
    const NCSeries J = iterated_period(two_family(2), Cusp(1, 2), Cusp(1, 2), kT);
    CHECK_EQ(distance(J, NCSeries::one(2, 2)), 0.0);
}

TEST_CASE("single-letter slice equals direct quadrature") {
    const FormFamily fam = two_family(2);
    TransportOptions topt;
    topt.tol = 1e-11;
    const NCSeries J = iterated_period(fam, Cusp(0, 1), Cusp::infinity(), kT, topt);
    QuadratureOptions qopt;
    qopt.tol = 1e-13;
    for (std::size_t j = 0; j < fam.size(); ++j) {
        const OneForm w{&fam.form(j), fam.power(j), kT};
        const auto direct = period_integral(w, Cusp(0, 1), Cusp::infinity(), qopt);
        CHECK_LE(std::abs(J.coeff({static_cast<int>(j)}) - direct.value),
                 1e-9 * std::max(1.0, std::abs(direct.value)));
    }
}

TEST_CASE("depth-2 slice equals the nested reference quadrature") {
    const FormFamily fam = two_family(2);
    const PathParam path = cusp_geodesic(Cusp(0, 1), Cusp::infinity());
    TransportOptions topt;
    topt.tol = 1e-11;
    const auto range = transport_range(fam, path, kT, topt);
    const NCSeries J = transport(fam, path, range.first, range.second, kT, topt);
    for (const Word& w : {Word{0, 1}, Word{1, 0}, Word{0, 0}}) {
        const Complex ref = nested_reference(fam, path, range.first, range.second, kT, w);
        CHECK_LE(std::abs(J.coeff(w) - ref), 1e-8 * std::max(1.0, std::abs(ref)));
    }
}

TEST_CASE("composition glues paths") {
    CHECK_LE(composition_residual(delta_family(3), Cusp(0, 1), Cusp::infinity(), kT,
                                  Complex(0.0, 1.0)),
             1e-9);
}

TEST_CASE("reversal inverts the series") {
    CHECK_LE(inverse_identity_residual(delta_family(3), Cusp(0, 1), Cusp::infinity(), kT),
             1e-9);
}

TEST_CASE("coefficients satisfy the shuffle relations") {
    const NCSeries J = iterated_period(two_family(3), Cusp(0, 1), Cusp::infinity(), kT);
    CHECK_LE(shuffle_residual(J), 1e-9);
}

TEST_CASE("weight action / equivariance under the generators") {
    const FormFamily fam = two_family(2);
    for (const UniModular& g : {sigma_gen(), theta_gen(), tau_gen()})
        CHECK_LE(equivariance_residual(fam, g, Cusp(0, 1), Cusp::infinity(), kT), 1e-8);
}

TEST_CASE("interior evaluation points work too") {
    // t strictly below the real axis, path between finite cusps; the split
    // point i is the apex of the connecting semicircle
    const FormFamily fam = delta_family(2);
    const Complex t(0.4, -0.7);
    CHECK_LE(composition_residual(fam, Cusp(-1, 1), Cusp(1, 1), t, Complex(0.0, 1.0)),
             1e-9);
}
