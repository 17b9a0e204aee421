#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace fecap {

enum class DriveMode { voltage, current };

std::string_view to_string(DriveMode mode);

struct Breakpoint {
    double t = 0.0;
    double value = 0.0;
};

/// Piecewise-linear drive. Before the first and after the last breakpoint
/// the end values are held.
class Waveform {
public:
    /// Throws std::invalid_argument if empty or times are not strictly
    /// increasing.
    Waveform(DriveMode mode, std::vector<Breakpoint> breakpoints);

    [[nodiscard]] DriveMode mode() const { return mode_; }
    [[nodiscard]] std::span<const Breakpoint> breakpoints() const { return points_; }
    [[nodiscard]] double start_time() const { return points_.front().t; }
    [[nodiscard]] double end_time() const { return points_.back().t; }
    [[nodiscard]] double value(double t) const;

    /// n_cycles periods of 0 -> +A -> 0 -> -A -> 0.
    static Waveform triangle(double amplitude, double frequency, int n_cycles,
                             DriveMode mode = DriveMode::voltage);

    /// Constant `value` over [0, duration].
    static Waveform hold(double value, double duration, DriveMode mode = DriveMode::voltage);

    /// Trapezoid from `base` to `base + amplitude` starting at `delay`.
    /// `width` is the full width at half amplitude; the edge time is
    /// min(edge, width). The waveform ends at `base` after `tail`.
    static Waveform pulse(double amplitude, double width, double edge, double delay = 0.0,
                          double tail = 0.0, DriveMode mode = DriveMode::voltage, double base = 0.0);

    /// `count` pulses with the given period, each shaped as in pulse().
    static Waveform pulse_train(double amplitude, double width, double period, int count,
                                double edge, DriveMode mode = DriveMode::voltage);

private:
    DriveMode mode_;
    std::vector<Breakpoint> points_;
};

}  // namespace fecap
