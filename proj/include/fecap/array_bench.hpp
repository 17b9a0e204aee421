#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fecap/device_params.hpp"
#include "fecap/solver.hpp"
#include "fecap/waveform.hpp"

namespace fecap {

struct BenchOptions {
    double pulse_current = 250e-9;  // A
    double pulse_width = 10e-6;     // s, FWHM
    double edge = 10e-9;            // s
    double duration = 30e-6;        // s, whole transient
    double dt = 100e-9;             // s
    int workers = 1;
    bool keep_device0_trace = true;

    bool operator==(const BenchOptions&) const = default;
};

/// The single-pulse current-mode drive followed by zero current up to
/// `duration`.
Waveform bench_waveform(const BenchOptions& options);

struct BenchRow {
    std::size_t n_devices = 0;
    double wall_seconds = 0.0;           // integration loop only
    std::uint64_t steps_per_device = 0;  // accepted steps of device 0
    std::uint64_t steps_total = 0;
    std::uint64_t newton_iterations = 0;
    std::uint64_t halvings = 0;
    std::size_t failures = 0;
    std::string diagnostics;             // first failure, if any
    TimeSeries device0;                  // trace of device 0
};

struct BenchReport {
    std::vector<BenchRow> rows;
    std::string machine;
};

/// Short description of the host (CPU model, hardware threads, compiler).
std::string machine_descriptor();

/// For each N, N independent devices with `params` run the bench waveform;
/// devices are split into contiguous blocks across the workers. A device
/// failure stops that size and is reported in the row.
BenchReport run_array_bench(const DeviceParams& params, const std::vector<std::size_t>& sizes,
                            const BenchOptions& options = {}, const SolverConfig& config = {});

}  // namespace fecap
