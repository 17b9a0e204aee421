#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fecap/analyses.hpp"
#include "fecap/device_params.hpp"
#include "fecap/solver.hpp"

namespace fecap {

struct McEntry {
    Param param = Param::t_int;
    double mean = 0.0;
    double sigma = 0.0;
    double lower = 0.0;
    double upper = 0.0;

    bool operator==(const McEntry&) const = default;
};

/// Independent truncated Gaussians, one per listed parameter.
struct McDistribution {
    std::vector<McEntry> entries;

    void validate() const;

    /// Entry with truncation [max(mean - 4 sigma, floor), mean + 4 sigma].
    static McEntry make_entry(Param p, double mean, double sigma, double floor);
    /// Physical lower floor for the parameter (0 if none is imposed).
    static double floor_for(Param p);

    static McDistribution room_temperature();  // 21 degC set
    static McDistribution hot();               // 85 degC set
};

/// Deterministic random stream: mt19937_64 with an explicit normal
/// transform so results do not depend on the standard library vendor.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform();
    /// Standard normal (Box-Muller, both variates used).
    double normal();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// SplitMix64 finaliser.
std::uint64_t splitmix64(std::uint64_t x);

/// Independent stream for one trial, derived from (seed, trial) only.
RngStream trial_stream(std::uint64_t seed, std::uint64_t trial);

DeviceParams sample_params(const DeviceParams& base, const McDistribution& dist, RngStream& rng);

enum class McScenario { hysteresis, kinetics, program };

std::string_view to_string(McScenario s);

struct McSpec {
    McScenario scenario = McScenario::hysteresis;
    int n_trials = 200;
    std::uint64_t seed = 1;
    int workers = 1;

    // hysteresis
    double amplitude = 3.0;
    double frequency = 1e3;
    int n_cycles = 2;

    // kinetics
    std::vector<double> amplitudes{1.5};
    std::vector<double> widths{1e-7, 1e-6, 1e-5, 1e-4, 1e-3};
    KineticsOptions kinetics;

    // program
    ProgramSpec program;

    SolverConfig solver;
};

struct Histogram {
    std::vector<double> edges;   // bins + 1
    std::vector<std::uint64_t> counts;
};

/// Freedman-Diaconis binning (bin width 2 IQR / n^(1/3)); a single bin when
/// the IQR or the range vanishes. At most 1000 bins.
Histogram freedman_diaconis(std::span<const double> values);

struct McTrial {
    std::uint64_t index = 0;
    DeviceParams params;
    bool ok = false;
    std::string error;
    std::vector<double> outputs;
};

struct McResult {
    McSpec spec;
    std::vector<std::string> labels;  // one per output point
    std::vector<McTrial> trials;      // n_trials entries, failed ones included
    std::vector<double> mean;         // over successful trials
    std::vector<double> sigma;        // population standard deviation
    Histogram histogram;              // of pr_pos, hysteresis only
    std::size_t failures = 0;
};

class McError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Per-output mean and population sigma over the successful trials.
void aggregate(McResult& result);

/// Runs spec.n_trials sampled devices on spec.workers threads. Failed trials
/// are kept with their error and excluded from the aggregates; more than
/// 10 % failures throws McError.
McResult run_mc(const McSpec& spec, const DeviceParams& base, const McDistribution& dist);

}  // namespace fecap
