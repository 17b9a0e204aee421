#include <doctest.h>

#include "approx.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fecap/csv.hpp"

using namespace fecap;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "fecap_csv_test";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_SUITE("csv") {

TEST_CASE("time series header contract") {
    const auto t = to_table(TimeSeries{});
    const std::vector<std::string> expected{"t_s", "V_appl_V", "I_A", "p", "P_uC_cm2",
                                            "V_fe_V", "V_int_V", "phi_depl_V", "J_pf_A_cm2", "J_fn_A_cm2"};
    CHECK(t.header == expected);
    CHECK(t.rows.empty());
    const auto path = temp_file("empty.csv");
    write_csv(t, path);
    CHECK(slurp(path) == "t_s,V_appl_V,I_A,p,P_uC_cm2,V_fe_V,V_int_V,phi_depl_V,J_pf_A_cm2,J_fn_A_cm2\n");
}

TEST_CASE("values survive a write and re-read to 1e-9 relative") {
    TimeSeries ts;
    for (int i = 0; i < 50; ++i) {
        TimeSample s;
        s.t = i * 1.0e-7 / 3.0;
        s.v_appl = std::sin(i * 0.37) * 3.0;
        s.i_terminal = 1.234567891234e-9 * (i - 25);
        s.p = i / 49.0;
        s.polarization = 0.27 * (2 * s.p - 1);
        s.j_fn = -1e-3 * i;
        ts.rows.push_back(s);
    }
    const auto path = temp_file("series.csv");
    write_csv(ts, path);
    const auto back = read_csv(path);
    REQUIRE(back.rows.size() == ts.rows.size());
    const auto ci = back.column("I_A");
    const auto cp = back.column("P_uC_cm2");
    const auto cj = back.column("J_fn_A_cm2");
    for (std::size_t i = 0; i < ts.rows.size(); ++i) {
        CHECK(parse_number(back.rows[i][ci]) == approx(ts.rows[i].i_terminal).epsilon(1e-9));
        CHECK(parse_number(back.rows[i][cp]) == approx(ts.rows[i].polarization * 100).epsilon(1e-9));
        CHECK(parse_number(back.rows[i][cj]) == approx(ts.rows[i].j_fn * 1e-4).epsilon(1e-9));
    }
    CHECK_THROWS_AS((void)back.column("nope"), std::out_of_range);
}

TEST_CASE("number formatting is deterministic and exact when asked") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1.0 / 3.0) == "0.3333333333");
    CHECK(format_number(1.0 / 3.0, 6) == "0.333333");
    CHECK(format_number(-2.5e-12) == "-2.5e-12");
    CHECK(format_number(0.0) == "0");
    for (double v : {0.1 + 0.2, 1.0 / 3.0, 6.02214076e23, -1e-300, 5e-324}) {
        CHECK(parse_number(format_exact(v)) == v);
    }
    CHECK(parse_number("+1.5") == 1.5);
    CHECK_THROWS_AS(parse_number("1.5x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_number(""), std::invalid_argument);
}

TEST_CASE("unreadable and unwritable paths raise I/O errors") {
    CHECK_THROWS_AS(read_csv("/nonexistent/dir/x.csv"), IoError);
    CHECK_THROWS_AS(write_csv(CsvTable{{"a"}, {}}, "/nonexistent/dir/x.csv"), IoError);
}

TEST_CASE("histogram and kinetics tables") {
    Histogram h{{0.0, 1.0, 2.0}, {3, 4}};
    const auto t = to_table(h);
    CHECK(t.rows.size() == 2);
    const std::vector<KineticsPoint> k{{1.5, 1e-6, 0.1}};
    const auto kt = to_table(std::span<const KineticsPoint>(k));
    CHECK(kt.rows.size() == 1);
    CHECK(kt.header.size() == kt.rows[0].size());
}

}  // TEST_SUITE
