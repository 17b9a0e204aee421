#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fecap/device_params.hpp"
#include "fecap/waveform.hpp"

namespace fecap {

/// Dynamic state of one capacitor. v_appl is the terminal voltage; it is an
/// unknown under current drive and equals the drive under voltage drive.
struct DeviceState {
    double p = 0.0;
    double v_fe = 0.0;
    double v_int = 0.0;
    double v_appl = 0.0;
    double t = 0.0;
};

struct SolverConfig {
    double dt = 1e-6;              // base step, s
    double newton_tol_v = 1e-9;    // loop residual, V
    double newton_tol_i = 1e-12;   // KCL residual, A, for a 25 um^2 device
    int max_newton_iters = 50;
    int max_step_halvings = 12;
    double p_init = 0.0;
    int record_every = 1;
    int min_segment_steps = 10;    // steps per waveform segment, at least

    void validate() const;

    bool operator==(const SolverConfig&) const = default;

    /// KCL tolerance in amperes scaled to the device area.
    [[nodiscard]] double kcl_tolerance(double area) const {
        return newton_tol_i * area / kReferenceArea;
    }

    static constexpr double kReferenceArea = 25e-12;
};

/// One recorded row. Columns past j_fn are solver diagnostics.
struct TimeSample {
    double t = 0.0;
    double v_appl = 0.0;
    double i_terminal = 0.0;   // A
    double p = 0.0;
    double polarization = 0.0; // C/m^2
    double v_fe = 0.0;
    double v_int = 0.0;
    double phi_depl = 0.0;
    double j_pf = 0.0;         // A/m^2
    double j_fn = 0.0;         // A/m^2
    double j_pol = 0.0;        // polarization current density over the step, A/m^2
    double loop_residual = 0.0;  // V
    double kcl_residual = 0.0;   // A
};

struct TimeSeries {
    std::vector<TimeSample> rows;

    [[nodiscard]] std::size_t size() const { return rows.size(); }
    [[nodiscard]] bool empty() const { return rows.empty(); }
};

/// Terminal charge by trapezoidal integration of i_terminal, one entry per row.
std::vector<double> terminal_charge(const TimeSeries& ts);

/// Trial values of the unknowns at the end of a step.
struct TrialPoint {
    double v_fe = 0.0;
    double v_int = 0.0;
    double v_appl = 0.0;
};

struct StepResidual {
    double loop = 0.0;   // V
    double kcl = 0.0;    // A
    double drive = 0.0;  // A, current mode only
    double p_next = 0.0;
    double phi_depl = 0.0;
    double j_terminal = 0.0;  // A/m^2
    double j_pol = 0.0;
    double j_pf = 0.0;
    double j_fn = 0.0;
};

/// Residuals of the implicit step prev -> trial over dt. p is advanced by
/// the exact frozen-rate update using the trial ferroelectric field.
StepResidual step_residual(const DeviceState& prev, const TrialPoint& trial, double dt,
                           DriveMode mode, double drive_value, const DeviceParams& params);

class StepFailure : public std::runtime_error {
public:
    StepFailure(const std::string& what, double time, double loop_residual, double kcl_residual)
        : std::runtime_error(what),
          time_(time),
          loop_residual_(loop_residual),
          kcl_residual_(kcl_residual) {}

    [[nodiscard]] double time() const { return time_; }
    [[nodiscard]] double loop_residual() const { return loop_residual_; }
    [[nodiscard]] double kcl_residual() const { return kcl_residual_; }

private:
    double time_;
    double loop_residual_;
    double kcl_residual_;
};

struct SolverStats {
    std::uint64_t steps = 0;
    std::uint64_t newton_iterations = 0;
    std::uint64_t halvings = 0;
    double max_loop_ratio = 0.0;  // worst |loop| / tol over accepted steps
    double max_kcl_ratio = 0.0;   // worst |kcl| / tol over accepted steps
};

/// Result of one converged implicit step.
struct StepOutcome {
    DeviceState state;
    StepResidual residual;
};

/// Damped Newton on the step residuals with a finite-difference Jacobian.
/// On non-convergence the step is split in halves (drive interpolated
/// linearly between drive_start and drive_end), up to max_step_halvings
/// levels deep. Throws StepFailure when that is exhausted.
StepOutcome solve_timestep(const DeviceState& prev, double dt, DriveMode mode, double drive_start,
                           double drive_end, const DeviceParams& params,
                           const SolverConfig& config, SolverStats* stats = nullptr);

/// Solver instance owning one device. Copyable; copies evolve independently.
class Transient {
public:
    Transient(const DeviceParams& params, const SolverConfig& config);

    /// Sets t = 0, p = p_init and solves the internal split for the terminal
    /// voltage v_appl under electrode charge neutrality.
    void initialize(double v_appl);

    void set_state(const DeviceState& state) { state_ = state; }
    [[nodiscard]] const DeviceState& state() const { return state_; }
    [[nodiscard]] const DeviceParams& params() const { return params_; }
    [[nodiscard]] const SolverConfig& config() const { return config_; }
    [[nodiscard]] const SolverStats& stats() const { return stats_; }

    /// One implicit step of length dt.
    const DeviceState& step(double dt, DriveMode mode, double drive_start, double drive_end);

    /// Marches through the waveform (time relative to the current state)
    /// with base step dt, aligned to breakpoints. Rows are appended to `out`
    /// every record_every steps and at the end.
    void advance(const Waveform& waveform, double dt, TimeSeries* out = nullptr);

    /// Current state as a recordable row.
    [[nodiscard]] TimeSample sample() const;

    /// Terminal current of the last accepted step, A.
    [[nodiscard]] double terminal_current() const;

private:
    DeviceParams params_;
    SolverConfig config_;
    DeviceState state_;
    StepResidual last_;
    SolverStats stats_;
};

/// Initializes from the drive value at t = 0 (voltage drive) or from 0 V
/// (current drive), records the initial row and every step to the end of
/// the waveform.
TimeSeries run_transient(const DeviceParams& params, const Waveform& waveform,
                         const SolverConfig& config, SolverStats* stats = nullptr);

}  // namespace fecap
