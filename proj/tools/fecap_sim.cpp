// fecap-sim: command-line front end for the capacitor simulator.

#include <CLI11.hpp>

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fecap/analyses.hpp"
#include "fecap/array_bench.hpp"
#include "fecap/csv.hpp"
#include "fecap/dc_cv.hpp"
#include "fecap/montecarlo.hpp"
#include "fecap/physics.hpp"
#include "fecap/scenario.hpp"
#include "fecap/units.hpp"

namespace fs = std::filesystem;
using namespace fecap;

namespace {

enum Exit { kOk = 0, kUsage = 1, kSolver = 2, kIo = 3 };

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string command;
    std::string scenario_path;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    std::optional<std::string> dt;
};

// "1e-7", "100ns" or "100 ns"; bare numbers are seconds.
double parse_time(const std::string& text) {
    const std::string s = text;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{}) throw UsageError("--dt: not a number: '" + text + "'");
    std::string unit(ptr, s.data() + s.size());
    unit.erase(0, unit.find_first_not_of(' '));
    if (unit.empty()) unit = "s";
    try {
        v = units::to_si(v, unit, units::Dimension::time);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--dt: ") + e.what());
    }
    if (!(v > 0.0)) throw UsageError("--dt: value must be positive");
    return v;
}

std::string read_file(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    if (!f) throw IoError(p, "cannot open scenario");
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

class Run {
public:
    Run(Options opt, Scenario sc) : opt_(std::move(opt)), sc_(std::move(sc)) {}

    void execute() {
        dir_ = opt_.out.empty() ? (sc_.out.empty() ? fs::path("fecap-out") : fs::path(sc_.out)) : fs::path(opt_.out);
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec) throw IoError(dir_, "cannot create output directory: " + ec.message());

        const std::string& c = opt_.command;
        if (c == "hysteresis") hysteresis_cmd();
        else if (c == "kinetics") kinetics_cmd();
        else if (c == "cv") cv_cmd();
        else if (c == "iv") iv_cmd();
        else if (c == "program") program_cmd();
        else if (c == "transient") transient_cmd();
        else if (c == "mc") mc_cmd();
        else if (c == "bench") bench_cmd();
        write_manifest();
    }

private:
    template <class T>
    void write(const std::string& name, const T& table) {
        write_csv(table, dir_ / name);
        files_.push_back(name);
    }

    void hysteresis_cmd() {
        const auto& h = sc_.hysteresis;
        const auto r = fecap::hysteresis(sc_.device, h.amplitude, h.frequency, h.cycles, sc_.solver);
        write("series.csv", to_table(r.series));
        write("loop.csv", loop_table(r));
        const double amp = h.amplitude;
        write("summary.csv", hysteresis_summary_table(std::span(&r, 1), std::span(&amp, 1)));
        std::cout << "Pr+ " << format_number(r.pr_pos * 100, 6) << " uC/cm2, Pr- "
                  << format_number(r.pr_neg * 100, 6) << " uC/cm2, Vc+ "
                  << (r.vc_pos ? format_number(*r.vc_pos, 6) : "none") << " V, Vc- "
                  << (r.vc_neg ? format_number(*r.vc_neg, 6) : "none") << " V\n";
    }

    void kinetics_cmd() {
        const auto pts = switching_kinetics(sc_.device, sc_.kinetics.amplitudes, sc_.kinetics.widths,
                                            sc_.solver, sc_.kinetics.options);
        write("kinetics.csv", to_table(std::span<const KineticsPoint>(pts)));
        std::cout << pts.size() << " kinetics points\n";
    }

    void cv_cmd() {
        const auto& c = sc_.cv;
        SolverConfig cfg = sc_.solver;
        cfg.dt = std::min(cfg.dt, 1.0 / (c.frequency * 1000.0));
        const auto pts = small_signal_cv(sc_.device, Waveform::triangle(c.amplitude, c.frequency, c.cycles),
                                         c.delta_v, cfg);
        write("cv.csv", to_table(std::span<const CvPoint>(pts)));
        std::cout << pts.size() << " C-V points\n";
    }

    void iv_cmd() {
        const auto pts = dc_sweep(sc_.device, sc_.iv.v_start, sc_.iv.v_stop, sc_.iv.points);
        write("iv.csv", to_table(std::span<const DcPoint>(pts)));
        std::cout << pts.size() << " DC points\n";
    }

    void program_cmd() {
        const auto train = current_program(sc_.device, sc_.program.train, sc_.solver);
        write("program.csv", program_table(train));
        write("series.csv", to_table(train.series));
        std::cout << "train: P after last pulse "
                  << format_number(train.polarization_after_pulse.back() * 100, 6) << " uC/cm2\n";
        if (sc_.program.compare_single) {
            ProgramSpec one = sc_.program.train;
            one.pulse_current = sc_.program.single_current;
            one.pulse_width = sc_.program.single_width;
            one.n_pulses = 1;
            const auto single = current_program(sc_.device, one, sc_.solver);
            write("single.csv", program_table(single));
            write("single_series.csv", to_table(single.series));
            std::cout << "single: P after pulse "
                      << format_number(single.polarization_after_pulse.back() * 100, 6) << " uC/cm2\n";
        }
    }

    void transient_cmd() {
        SolverStats stats;
        const auto ts = run_transient(sc_.device, sc_.transient.waveform(), sc_.solver, &stats);
        write("series.csv", to_table(ts));
        std::cout << stats.steps << " steps, " << stats.newton_iterations << " Newton iterations, "
                  << stats.halvings << " halvings\n";
    }

    void mc_cmd() {
        const auto r = run_mc(sc_.mc_spec(), sc_.device, sc_.mc.distribution());
        write("mc_trials.csv", mc_trials_table(r));
        write("mc_aggregate.csv", mc_aggregate_table(r));
        write("mc_params.csv", mc_params_table(r));
        if (r.spec.scenario == McScenario::hysteresis) write("mc_histogram.csv", to_table(r.histogram));
        std::cout << r.trials.size() << " trials, " << r.failures << " failed, seed " << r.spec.seed << "\n";
    }

    void bench_cmd() {
        const auto rep = run_array_bench(sc_.device, sc_.bench.sizes, sc_.bench.options, sc_.solver);
        write("bench.csv", to_table(rep));
        if (!rep.rows.empty()) write("bench_device0.csv", to_table(rep.rows.front().device0));
        std::cout << "machine: " << rep.machine << "\n";
        std::cout << "       N      wall_s   per_device_s  steps  failures\n";
        bool failed = false;
        for (const auto& row : rep.rows) {
            std::cout << std::setw(8) << row.n_devices << "  " << std::setw(10) << format_number(row.wall_seconds, 4)
                      << "  " << std::setw(12) << format_number(row.wall_seconds / static_cast<double>(row.n_devices), 4)
                      << "  " << std::setw(6) << row.steps_per_device << "  " << std::setw(8) << row.failures << "\n";
            if (row.failures > 0) {
                std::cerr << "N = " << row.n_devices << ": " << row.diagnostics << "\n";
                failed = true;
            }
        }
        if (failed) bench_failed_ = true;
    }

    void write_manifest() {
        std::ofstream f(dir_ / "manifest.txt", std::ios::binary);
        if (!f) throw IoError(dir_ / "manifest.txt", "cannot open for writing");
        f << "fecap-sim " << FECAP_VERSION << "\n";
        f << "command: " << opt_.command << "\n";
        f << "scenario: " << opt_.scenario_path << "\n";
        f << "seed: " << sc_.mc.seed << "\n";
        f << "workers: " << sc_.mc.workers << " (mc), " << sc_.bench.options.workers << " (bench)\n";
        f << "dt: " << format_number(sc_.solver.dt) << " s\n";
        f << "compiler: " << __VERSION__ << "\n";
        f << "files:";
        for (const auto& n : files_) f << ' ' << n;
        f << "\n\n# device parameters (display units)\n" << describe_params(sc_.device);
        if (opt_.command == "mc") {
            f << "\n# sampling distribution (mean sigma [lower, upper])\n"
              << describe_distribution(sc_.mc.distribution());
        }
        f << "\n# resolved scenario\n" << emit_scenario(sc_);
        if (!f) throw IoError(dir_ / "manifest.txt", "write failed");
    }

public:
    bool bench_failed_ = false;

private:
    Options opt_;
    Scenario sc_;
    fs::path dir_;
    std::vector<std::string> files_;
};

void print_defaults(const Scenario& sc) {
    std::cout << "# device defaults\n" << describe_params(sc.device);
    std::cout << "\n# sampling set 21C (mean sigma [lower, upper])\n"
              << describe_distribution(McDistribution::room_temperature());
    std::cout << "\n# sampling set 85C (mean sigma [lower, upper])\n"
              << describe_distribution(McDistribution::hot());
}

int run(int argc, char** argv) {
    CLI::App app{"Ferroelectric capacitor compact-model simulator"};
    app.set_version_flag("--version", FECAP_VERSION);
    app.require_subcommand(1);
    Options opt;

    const std::vector<std::pair<std::string, std::string>> commands{
        {"hysteresis", "triangular sweep, loop and remanent/coercive values"},
        {"kinetics", "switched polarization over pulse amplitude and width"},
        {"cv", "small-signal capacitance along a bias sweep"},
        {"iv", "static leakage current sweep"},
        {"program", "current-pulse programming train and single-pulse comparison"},
        {"transient", "arbitrary drive waveform"},
        {"mc", "device-to-device variability run"},
        {"bench", "array throughput benchmark"},
        {"defaults", "print default device and sampling parameters"},
    };
    std::uint64_t seed = 0;
    int workers = 0;
    std::string dt;
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        auto* scen = sub->add_option("--scenario", opt.scenario_path, "scenario file");
        if (name != "defaults") scen->required();
        sub->add_option("--out", opt.out, "output directory");
        sub->add_option("--seed", seed, "random seed (mc)");
        sub->add_option("--workers", workers, "worker threads (mc, bench)")->check(CLI::PositiveNumber);
        sub->add_option("--dt", dt, "base time step, e.g. 1e-6 or 100ns");
        sub->callback([&opt, sub, &seed, &workers, &dt, name = name] {
            opt.command = name;
            if (sub->count("--seed") > 0) opt.seed = seed;
            if (sub->count("--workers") > 0) opt.workers = workers;
            if (sub->count("--dt") > 0) opt.dt = dt;
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        Scenario sc;
        if (!opt.scenario_path.empty()) sc = parse_scenario(read_file(opt.scenario_path));
        if (opt.seed) sc.mc.seed = *opt.seed;
        if (opt.workers) {
            sc.mc.workers = *opt.workers;
            sc.bench.options.workers = *opt.workers;
        }
        if (opt.dt) {
            sc.solver.dt = parse_time(*opt.dt);
            sc.bench.options.dt = sc.solver.dt;
        }
        if (opt.command == "defaults") {
            print_defaults(sc);
            return kOk;
        }
        Run r(opt, std::move(sc));
        r.execute();
        return r.bench_failed_ ? kSolver : kOk;
    } catch (const ParseError& e) {
        std::cerr << "scenario error: " << e.what() << "\n";
        return kUsage;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kIo;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kIo;
    } catch (const StepFailure& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kSolver;
    } catch (const DcFailure& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kSolver;
    } catch (const McError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kSolver;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kSolver;
    }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
