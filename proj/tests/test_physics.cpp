#include <doctest.h>

#include "approx.hpp"

#include <cmath>
#include <limits>

#include "fecap/physics.hpp"
#include "oracle.hpp"

using namespace fecap;
namespace ph = fecap::physics;
using C = PhysicalConstants;

namespace {

DeviceParams at_300k() {
    DeviceParams d;
    d.temperature = 300.0;
    return d;
}

}  // namespace

TEST_SUITE("physics") {

// Reference numbers below were produced once with an independent 40-digit
// evaluation and are frozen here.
TEST_CASE("frozen reference values") {
    const DeviceParams d;
    const DeviceParams d300 = at_300k();

    SUBCASE("rates at zero modulation energy, 300 K") {
        const auto r = ph::transition_rates(d300.offset_field, d300);
        CHECK(r.k_down == approx(1.434580288724474e-5).epsilon(1e-12));
        CHECK(r.k_up == approx(1.434580288724474e-5).epsilon(1e-12));
        CHECK(oracle::close(r.k_down, oracle::k_down(d300.offset_field, d300), 1e-12));
    }
    SUBCASE("stationary probability ten kT above the offset") {
        const double kt = C::k_B * d.temperature;
        const double e = d.offset_field + 10.0 * kt / (C::q * d.action_distance);
        CHECK(ph::p_steady_state(e, d) == approx(0.99999999793884638).epsilon(1e-14));
    }
    SUBCASE("exact step over two relaxation times") {
        CHECK(ph::p_step(0.0, {1.0, 1.0}, 1.0) == approx(0.43233235838169365).epsilon(1e-14));
    }
    SUBCASE("layer capacitances") {
        CHECK(ph::c_layer(d.eps_fe, d.t_fe) == approx(0.063244198662857142).epsilon(1e-14));
        CHECK(ph::c_layer(d.eps_int, d.t_int) == approx(0.796876903152).epsilon(1e-14));
    }
    SUBCASE("depletion capacitance and potential at zero field") {
        CHECK(ph::c_depl(0.3, 0.0, d) == approx(0.756585217424838726).epsilon(1e-13));
        CHECK(ph::phi_depl(1.0, 0.0, d, 0.0) == approx(0.35686660772859013).epsilon(1e-13));
    }
    SUBCASE("tunnelling at 5 MV/cm, emission at 1 MV/cm and 300 K") {
        CHECK(ph::j_fn(5e8, d) == approx(460955318.95358492).epsilon(1e-11));
        CHECK(ph::j_pf(1e8, d300) == approx(3.0281079862787084).epsilon(1e-11));
        CHECK(oracle::close(ph::j_fn(5e8, d), oracle::j_fn(5e8, d), 1e-11));
        CHECK(oracle::close(ph::j_pf(1e8, d300), oracle::j_pf(1e8, d300), 1e-11));
    }
}

TEST_CASE("rates respond to field with detailed balance") {
    const DeviceParams d;
    const double kt = C::k_B * d.temperature;
    for (double e : {-3e8, -1e8, 0.0, 0.5e8, 2e8}) {
        const auto r = ph::transition_rates(e, d);
        const double expected = std::exp(2.0 * ph::field_energy(e, d) / kt);
        CHECK(r.k_down / r.k_up == approx(expected).epsilon(1e-9));
    }
    CHECK(ph::transition_rates(2e8, d).k_down > ph::transition_rates(1e8, d).k_down);
    CHECK(ph::transition_rates(2e8, d).k_up < ph::transition_rates(1e8, d).k_up);
}

TEST_CASE("rates stay finite for extreme fields") {
    const DeviceParams d;
    for (double e : {1e12, -1e12, 1e15}) {
        const auto r = ph::transition_rates(e, d);
        CHECK(std::isfinite(r.k_down));
        CHECK(std::isfinite(r.k_up));
        CHECK(r.k_down >= 0.0);
        CHECK(r.k_up >= 0.0);
    }
    CHECK_THROWS_AS(ph::transition_rates(std::numeric_limits<double>::infinity(), d), std::invalid_argument);
    CHECK_THROWS_AS(ph::transition_rates(std::nan(""), d), std::invalid_argument);
}

TEST_CASE("stationary probability") {
    const DeviceParams d;
    CHECK(ph::p_steady_state(d.offset_field, d) == approx(0.5));
    double prev = 0.0;
    for (double e = -5e8; e <= 5e8; e += 1e7) {
        const double p = ph::p_steady_state(e, d);
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
        CHECK(p >= prev);
        prev = p;
    }
}

TEST_CASE("exact relaxation step") {
    const ph::TransitionRates r{3e3, 1e3};
    CHECK(ph::p_step(0.2, r, 0.0) == 0.2);
    CHECK(ph::p_step(0.2, r, 1.0) == approx(0.75).epsilon(1e-12));
    CHECK(ph::p_step(0.2, {0.0, 0.0}, 1.0) == 0.2);
    CHECK_THROWS_AS(ph::p_step(0.2, r, -1e-9), std::invalid_argument);
    // Composition: two half steps equal one full step for frozen rates.
    const double once = ph::p_step(0.1, r, 4e-4);
    const double twice = ph::p_step(ph::p_step(0.1, r, 2e-4), r, 2e-4);
    CHECK(once == approx(twice).epsilon(1e-13));
    for (double p : {0.0, 0.3, 1.0}) {
        for (double dt : {1e-12, 1e-6, 1.0, 1e6}) {
            const double n = ph::p_step(p, {1e9, 1e-9}, dt);
            CHECK(n >= 0.0);
            CHECK(n <= 1.0);
        }
    }
}

TEST_CASE("polarization maps p onto [-P_s, P_s]") {
    const DeviceParams d;
    CHECK(ph::polarization(0.0, d) == approx(-d.p_sat));
    CHECK(ph::polarization(0.5, d) == approx(0.0));
    CHECK(ph::polarization(1.0, d) == approx(d.p_sat));
}

TEST_CASE("layer capacitance rejects non-physical input") {
    CHECK_THROWS_AS(ph::c_layer(70.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ph::c_layer(70.0, -1e-9), std::invalid_argument);
    CHECK_THROWS_AS(ph::c_layer(0.0, 1e-9), std::invalid_argument);
}

TEST_CASE("depletion capacitance is floored where its charge vanishes") {
    const DeviceParams d;
    // Field at which the down-branch denominator crosses zero.
    const double e0 = -d.q_fix_depl / (C::eps0 * d.eps_fe);
    for (double e : {e0, e0 * (1 + 1e-12), e0 * (1 - 1e-12)}) {
        const auto b = ph::c_depl_branches(e, d);
        CHECK(std::isfinite(b.down));
        CHECK(b.down > 0.0);
        CHECK(b.down <= C::eps0 * d.eps_depl * C::q * d.n_depl_down / ph::kDepletionDenomMin * (1 + 1e-12));
    }
    CHECK(ph::c_depl(1.0, 1e8, d) == approx(ph::c_depl_branches(1e8, d).down));
    CHECK(ph::c_depl(0.0, 1e8, d) == approx(ph::c_depl_branches(1e8, d).up));
}

TEST_CASE("leakage laws are odd and increasing in field magnitude") {
    const DeviceParams d;
    CHECK(ph::j_fn(0.0, d) == 0.0);
    CHECK(ph::j_pf(0.0, d) == 0.0);
    double prev_fn = 0.0;
    double prev_pf = 0.0;
    for (double e = 1e6; e <= 1e9; e *= 1.5) {
        CHECK(ph::j_fn(-e, d) == -ph::j_fn(e, d));
        CHECK(ph::j_pf(-e, d) == -ph::j_pf(e, d));
        CHECK(ph::j_fn(e, d) >= prev_fn);
        CHECK(ph::j_pf(e, d) > prev_pf);
        prev_fn = ph::j_fn(e, d);
        prev_pf = ph::j_pf(e, d);
    }
}

TEST_CASE("emission grows with temperature") {
    DeviceParams cold;
    DeviceParams hot;
    hot.temperature = 358.15;
    CHECK(ph::j_pf(1e8, hot) > ph::j_pf(1e8, cold));
}

TEST_CASE("parameter validation names the field") {
    DeviceParams d;
    d.t_fe = -1e-9;
    try {
        d.validate();
        FAIL("expected an exception");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("t_fe") != std::string::npos);
    }
    DeviceParams z;
    z.p_sat = 0.0;
    z.mu_fe = 0.0;
    CHECK_NOTHROW(z.validate());
    for (Param p : kAllParams) {
        CHECK(param_from_key(param_key(p)) == p);
    }
    DeviceParams s;
    set_param(s, Param::n_depl, 5e27);
    CHECK(s.n_depl_down == 5e27);
    CHECK(s.n_depl_up == 5e27);
}

}  // TEST_SUITE
