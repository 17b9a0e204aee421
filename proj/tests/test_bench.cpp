#include <doctest.h>

#include "approx.hpp"

#include "fecap/array_bench.hpp"

using namespace fecap;

TEST_SUITE("bench") {

TEST_CASE("bench waveform spans the requested duration") {
    const BenchOptions o;
    const auto w = bench_waveform(o);
    CHECK(w.mode() == DriveMode::current);
    CHECK(w.end_time() == approx(o.duration));
    CHECK(w.value(o.pulse_width / 2) == approx(o.pulse_current));
    CHECK(w.value(o.duration) == 0.0);
}

TEST_CASE("small arrays run without failures and identical device traces") {
    BenchOptions o;
    o.workers = 2;
    const auto rep = run_array_bench(DeviceParams{}, {1, 7, 40}, o);
    REQUIRE(rep.rows.size() == 3);
    CHECK_FALSE(rep.machine.empty());
    const auto& ref = rep.rows[0].device0.rows;
    REQUIRE_FALSE(ref.empty());
    for (const auto& row : rep.rows) {
        CHECK(row.failures == 0);
        CHECK(row.diagnostics.empty());
        CHECK(row.steps_per_device == rep.rows[0].steps_per_device);
        CHECK(row.steps_total == row.steps_per_device * row.n_devices);
        CHECK(row.wall_seconds >= 0.0);
        REQUIRE(row.device0.rows.size() == ref.size());
        for (std::size_t i = 0; i < ref.size(); ++i) {
            CHECK(row.device0.rows[i].p == ref[i].p);
            CHECK(row.device0.rows[i].v_appl == ref[i].v_appl);
        }
    }
    CHECK(ref.back().p > ref.front().p);
}

TEST_CASE("an unsolvable configuration is reported, not thrown") {
    BenchOptions o;
    SolverConfig cfg;
    cfg.max_newton_iters = 1;
    cfg.max_step_halvings = 0;
    const auto rep = run_array_bench(DeviceParams{}, {3}, o, cfg);
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].failures > 0);
    CHECK_FALSE(rep.rows[0].diagnostics.empty());
}

}  // TEST_SUITE
