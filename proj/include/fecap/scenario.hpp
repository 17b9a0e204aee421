#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fecap/analyses.hpp"
#include "fecap/array_bench.hpp"
#include "fecap/device_params.hpp"
#include "fecap/montecarlo.hpp"
#include "fecap/solver.hpp"
#include "fecap/waveform.hpp"

namespace fecap {

enum class ScenarioKind { hysteresis, kinetics, cv, iv, program, transient, mc, bench };

std::string_view to_string(ScenarioKind k);

struct HysteresisScenario {
    double amplitude = 3.0;   // V
    double frequency = 1e3;   // Hz
    int cycles = 3;

    bool operator==(const HysteresisScenario&) const = default;
};

struct KineticsScenario {
    std::vector<double> amplitudes{1.0, 1.5, 2.0, 2.5, 3.0};
    std::vector<double> widths{1e-7, 4.64e-7, 2.15e-6, 1e-5, 4.64e-5, 2.15e-4, 1e-3};
    KineticsOptions options;

    bool operator==(const KineticsScenario&) const = default;
};

struct CvScenario {
    double amplitude = 3.0;
    double frequency = 1e3;
    int cycles = 2;
    double delta_v = 0.01;

    bool operator==(const CvScenario&) const = default;
};

struct IvScenario {
    double v_start = 0.0;
    double v_stop = 3.0;
    int points = 31;

    bool operator==(const IvScenario&) const = default;
};

struct ProgramScenario {
    ProgramSpec train;
    bool compare_single = true;
    double single_current = 25e-9;  // A
    double single_width = 1e-3;     // s

    bool operator==(const ProgramScenario&) const = default;
};

enum class WaveShape { triangle, pulse, train, pwl };

std::string_view to_string(WaveShape s);

struct TransientScenario {
    WaveShape shape = WaveShape::triangle;
    DriveMode mode = DriveMode::voltage;
    double amplitude = 3.0;   // V or A
    double frequency = 1e3;
    int cycles = 1;
    double width = 1e-6;
    double period = 2e-6;
    int count = 1;
    double edge = kPulseEdge;
    double delay = 0.0;
    double tail = 0.0;
    std::vector<double> times;   // pwl, s
    std::vector<double> values;  // pwl, V or A

    bool operator==(const TransientScenario&) const = default;

    [[nodiscard]] Waveform waveform() const;
};

struct McScenarioSpec {
    McScenario scenario = McScenario::hysteresis;
    int trials = 200;
    std::uint64_t seed = 1;
    int workers = 1;
    std::string set = "21C";          // 21C | 85C
    std::vector<McEntry> overrides;   // replace or extend the set's entries

    bool operator==(const McScenarioSpec&) const = default;

    [[nodiscard]] McDistribution distribution() const;
};

struct BenchScenario {
    std::vector<std::size_t> sizes{100, 1000, 10000, 100000};
    BenchOptions options;

    bool operator==(const BenchScenario&) const = default;
};

struct Scenario {
    ScenarioKind kind = ScenarioKind::hysteresis;
    std::string out;  // output directory, empty = CLI default
    DeviceParams device;
    SolverConfig solver;
    HysteresisScenario hysteresis;
    KineticsScenario kinetics;
    CvScenario cv;
    IvScenario iv;
    ProgramScenario program;
    TransientScenario transient;
    McScenarioSpec mc;
    BenchScenario bench;

    bool operator==(const Scenario&) const = default;

    /// Monte Carlo settings assembled from the mc section and the scenario
    /// sections it runs.
    [[nodiscard]] McSpec mc_spec() const;
};

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
    [[nodiscard]] int line() const { return line_; }

private:
    int line_;
};

/// Line-oriented `[section]` / `key = value [unit]` text; '#' starts a
/// comment. Omitted keys keep their defaults; unknown sections and keys are
/// errors. Throws ParseError.
Scenario parse_scenario(std::string_view text);

/// Canonical text for `s`, every field written in base SI units so that
/// parse_scenario(emit_scenario(s)) == s exactly.
std::string emit_scenario(const Scenario& s);

/// Human-readable device table in display units (nm, uC/cm2, MV/cm, ...).
std::string describe_params(const DeviceParams& d);

/// Monte Carlo distribution table in display units.
std::string describe_distribution(const McDistribution& dist);

}  // namespace fecap
