#include "fecap/array_bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace fecap {

Waveform bench_waveform(const BenchOptions& o) {
    const double e = std::min(o.edge, o.pulse_width);
    const double tail = o.duration - (o.pulse_width + e);
    if (!(tail >= 0.0)) throw std::invalid_argument("bench: duration shorter than the pulse");
    return Waveform::pulse(o.pulse_current, o.pulse_width, o.edge, 0.0, tail, DriveMode::current);
}

std::string machine_descriptor() {
    std::string cpu = "unknown cpu";
    std::ifstream info("/proc/cpuinfo");
    for (std::string line; std::getline(info, line);) {
        if (line.rfind("model name", 0) == 0) {
            const auto colon = line.find(':');
            if (colon != std::string::npos) cpu = line.substr(colon + 2);
            break;
        }
    }
    std::ostringstream s;
    s << cpu << "; " << std::thread::hardware_concurrency() << " hw threads";
#if defined(__clang__)
    s << "; clang " << __clang_major__ << "." << __clang_minor__;
#elif defined(__GNUC__)
    s << "; gcc " << __GNUC__ << "." << __GNUC_MINOR__;
#endif
    return s.str();
}

namespace {

BenchRow run_size(const DeviceParams& params, std::size_t n, const Waveform& wave,
                  const BenchOptions& o, const SolverConfig& config) {
    BenchRow row;
    row.n_devices = n;

    // Setup (untimed): N independent instances at their initial point.
    std::vector<Transient> devices;
    devices.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        devices.emplace_back(params, config);
        devices.back().initialize(0.0);
    }
    if (o.keep_device0_trace && n > 0) row.device0.rows.push_back(devices[0].sample());

    const auto workers = static_cast<std::size_t>(std::max(1, std::min<int>(o.workers, static_cast<int>(n))));
    std::atomic<bool> abort{false};
    std::mutex failure_mutex;
    std::size_t first_failed = n;

    auto block = [&](std::size_t w) {
        const std::size_t lo = n * w / workers;
        const std::size_t hi = n * (w + 1) / workers;
        for (std::size_t i = lo; i < hi && !abort.load(std::memory_order_relaxed); ++i) {
            try {
                devices[i].advance(wave, o.dt, i == 0 && o.keep_device0_trace ? &row.device0 : nullptr);
            } catch (const StepFailure& e) {
                abort = true;
                std::lock_guard lock(failure_mutex);
                ++row.failures;
                if (i < first_failed) {
                    first_failed = i;
                    row.diagnostics = "device " + std::to_string(i) + ": " + e.what();
                }
            }
        }
    };

    const auto start = std::chrono::steady_clock::now();
    if (workers == 1) {
        block(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(block, w);
        for (auto& t : pool) t.join();
    }
    row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    for (const auto& d : devices) {
        row.steps_total += d.stats().steps;
        row.newton_iterations += d.stats().newton_iterations;
        row.halvings += d.stats().halvings;
    }
    if (n > 0) row.steps_per_device = devices[0].stats().steps;
    return row;
}

}  // namespace

BenchReport run_array_bench(const DeviceParams& params, const std::vector<std::size_t>& sizes,
                            const BenchOptions& options, const SolverConfig& config) {
    if (sizes.empty()) throw std::invalid_argument("bench: sizes must not be empty");
    if (!(options.dt > 0.0)) throw std::invalid_argument("bench: dt must be positive");
    if (options.workers < 1) throw std::invalid_argument("bench: workers must be >= 1");
    params.validate();
    const Waveform wave = bench_waveform(options);

    BenchReport report;
    report.machine = machine_descriptor();
    for (std::size_t n : sizes) {
        if (n == 0) throw std::invalid_argument("bench: array size must be >= 1");
        report.rows.push_back(run_size(params, n, wave, options, config));
    }
    return report;
}

}  // namespace fecap
