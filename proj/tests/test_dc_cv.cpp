#include <doctest.h>

#include "approx.hpp"

#include <cmath>

#include "fecap/analyses.hpp"
#include "fecap/dc_cv.hpp"
#include "fecap/physics.hpp"

using namespace fecap;
namespace ph = fecap::physics;

namespace {

DeviceParams symmetric_stack() {
    DeviceParams d;
    d.offset_field = 0.0;
    d.q_fix_depl = 0.0;
    return d;
}

std::vector<std::size_t> local_maxima(const std::vector<CvPoint>& c) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 1; i + 1 < c.size(); ++i) {
        if (c[i].c > c[i - 1].c && c[i].c >= c[i + 1].c) idx.push_back(i);
    }
    return idx;
}

}  // namespace

TEST_SUITE("dc_cv") {

TEST_CASE("zero bias carries no current for a symmetric stack") {
    const auto pt = dc_operating_point(symmetric_stack(), 0.0);
    CHECK(std::abs(pt.i) < 1e-25);
    CHECK(pt.p == approx(0.5));
}

TEST_CASE("leakage magnitude increases with bias") {
    const auto sweep = dc_sweep(DeviceParams{}, 0.0, 3.0, 31);
    for (std::size_t i = 1; i < sweep.size(); ++i) {
        CHECK(std::abs(sweep[i].i) > std::abs(sweep[i - 1].i));
    }
    CHECK(sweep.back().v == 3.0);
}

TEST_CASE("operating point closes the loop and equates the two leakage paths") {
    const DeviceParams d;
    for (double v : {-2.0, 0.5, 2.5}) {
        const auto pt = dc_operating_point(d, v);
        const double e_fe = pt.v_fe / d.t_fe;
        const double phi = ph::phi_depl(pt.p, pt.v_fe, d, e_fe);
        CHECK(std::abs(v - pt.v_fe - pt.v_int - phi) < 1e-9);
        CHECK(ph::j_fn(pt.v_int / d.t_int, d) == approx(ph::j_pf(e_fe, d)).epsilon(1e-6));
    }
}

TEST_CASE("sweep argument checks") {
    CHECK_THROWS_AS(dc_sweep(DeviceParams{}, 0.0, 1.0, 1), std::invalid_argument);
}

TEST_CASE("series capacitance") {
    CHECK(series_capacitance(1.0, 1.0, 1.0) == approx(1.0 / 3.0));
    CHECK(series_capacitance(2.0, 3.0, 6.0) == approx(1.0));
}

TEST_CASE("small-signal probe reduces to the series value without polarization") {
    DeviceParams d;
    d.p_sat = 0.0;
    d.mu_fe = 0.0;
    d.offset_field = 0.0;
    TimeSample op;  // zero-bias rest state
    op.p = 0.5;
    const double expected = d.area * series_capacitance(ph::c_layer(d.eps_fe, d.t_fe),
                                                        ph::c_layer(d.eps_int, d.t_int),
                                                        ph::c_depl(0.5, 0.0, d));
    CHECK(small_signal_capacitance(d, op, 1e-3) == approx(expected).epsilon(1e-4));
    CHECK_THROWS_AS(small_signal_capacitance(d, op, 0.0), std::invalid_argument);
}

TEST_CASE("butterfly has one peak per sweep direction") {
    const DeviceParams d;
    const auto cv = small_signal_cv(d, Waveform::triangle(3.0, 1e3, 2), 0.01, SolverConfig{});
    std::vector<CvPoint> last;
    for (const auto& p : cv) {
        if (p.t >= 1e-3 - 1e-12) last.push_back(p);
    }
    const auto peaks = local_maxima(last);
    REQUIRE(peaks.size() == 2);
    CHECK(last[peaks[0]].v_bias * last[peaks[1]].v_bias < 0.0);
}

TEST_CASE("current-mode drive is rejected for C-V") {
    CHECK_THROWS_AS(small_signal_cv(DeviceParams{}, Waveform::hold(1e-9, 1e-6, DriveMode::current), 0.01,
                                    SolverConfig{}),
                    std::invalid_argument);
}

}  // TEST_SUITE
