#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fecap/device_params.hpp"
#include "fecap/solver.hpp"

namespace fecap {

/// Default rectangular-pulse edge time, s.
inline constexpr double kPulseEdge = 10e-9;

struct LoopPoint {
    double v = 0.0;  // V
    double p = 0.0;  // polarization, C/m^2
};

/// Remanent/coercive values of one closed loop.
struct LoopMetrics {
    double pr_pos = 0.0;  // P at the V = 0 crossing of the falling branch
    double pr_neg = 0.0;  // P at the V = 0 crossing of the rising branch
    std::optional<double> vc_pos;  // V where P crosses zero upwards
    std::optional<double> vc_neg;  // V where P crosses zero downwards
};

/// Crossing extraction by linear interpolation between bracketing samples.
/// The last crossing of each kind wins.
LoopMetrics extract_loop_metrics(std::span<const LoopPoint> loop);

/// Enclosed area of a closed (V, P) loop, oint V dP (trapezoid), J/m^2-like
/// units V*C/m^2. Positive for the usual counter-clockwise ferroelectric loop.
double loop_area(std::span<const LoopPoint> loop);

struct HysteresisResult {
    std::vector<LoopPoint> loop;  // final cycle
    double pr_pos = 0.0;
    double pr_neg = 0.0;
    std::optional<double> vc_pos;
    std::optional<double> vc_neg;
    std::vector<std::pair<double, double>> displacement_current;  // (V, I)
    double closure_rms = 0.0;  // RMS(P_N - P_{N-1}) / range(P_N)
    double area = 0.0;
    TimeSeries series;  // full transient
};

/// Triangular drive 0 -> +A -> 0 -> -A -> 0 at `frequency` for n_cycles
/// (>= 2). The base step is min(config.dt, period / 1000).
HysteresisResult hysteresis(const DeviceParams& params, double amplitude, double frequency,
                            int n_cycles, const SolverConfig& config = {});

struct KineticsPoint {
    double pulse_amplitude = 0.0;  // V
    double pulse_width = 0.0;      // s
    double delta_p = 0.0;          // switched polarization, C/m^2
};

struct KineticsOptions {
    double preset = -3.0;          // V
    double preset_width = 1e-3;    // s
    double settle = 1e-6;          // s at 0 V after the preset
    double edge = kPulseEdge;
    int steps_per_pulse = 200;

    bool operator==(const KineticsOptions&) const = default;
};

/// Preset, discharge, then one programming pulse per (amplitude, width).
/// Points are ordered amplitude-major.
std::vector<KineticsPoint> switching_kinetics(const DeviceParams& params,
                                              std::span<const double> amplitudes,
                                              std::span<const double> widths,
                                              const SolverConfig& config = {},
                                              const KineticsOptions& options = {});

struct ProgramSpec {
    double pulse_current = 250e-9;  // A
    double pulse_width = 10e-6;     // s
    int n_pulses = 25;
    bool discharge_between = true;
    double max_discharge = 30e-6;   // s per discharge
    double discharge_threshold = 1e-12;  // A
    double edge = kPulseEdge;
    int steps_per_pulse = 200;

    bool operator==(const ProgramSpec&) const = default;
};

struct ProgramTrace {
    ProgramSpec spec;
    std::vector<double> polarization_after_pulse;      // C/m^2
    std::vector<double> polarization_after_discharge;  // C/m^2, empty without discharge
    std::vector<double> peak_voltage;                  // V per pulse
    std::vector<double> discharge_time;                // s per discharge
    double initial_polarization = 0.0;
    TimeSeries series;
};

/// Current-mode pulses on `params` (area as given), each optionally followed
/// by a 0 V clamp until |I| < threshold or max_discharge elapses.
ProgramTrace current_program(const DeviceParams& params, const ProgramSpec& spec,
                             const SolverConfig& config = {});

/// Carrier density used for the pristine (not woken-up) device, 1/m^3.
inline constexpr double kPristineDepletionDensity = 7e27;

DeviceParams pristine_params(const DeviceParams& woken);

/// Hysteresis of the pristine device at each amplitude.
std::vector<HysteresisResult> pristine_scenario(const DeviceParams& params,
                                                std::span<const double> amplitudes,
                                                double frequency = 1e3, int n_cycles = 2,
                                                const SolverConfig& config = {});

}  // namespace fecap
