#include "fecap/waveform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fecap {

std::string_view to_string(DriveMode mode) {
    return mode == DriveMode::voltage ? "voltage" : "current";
}

Waveform::Waveform(DriveMode mode, std::vector<Breakpoint> breakpoints)
    : mode_(mode), points_(std::move(breakpoints)) {
    if (points_.empty()) {
        throw std::invalid_argument("waveform: no breakpoints");
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!std::isfinite(points_[i].t) || !std::isfinite(points_[i].value)) {
            throw std::invalid_argument("waveform: non-finite breakpoint");
        }
        if (i > 0 && !(points_[i].t > points_[i - 1].t)) {
            throw std::invalid_argument("waveform: breakpoint times must be strictly increasing");
        }
    }
}

double Waveform::value(double t) const {
    if (t <= points_.front().t) return points_.front().value;
    if (t >= points_.back().t) return points_.back().value;
    auto hi = std::upper_bound(points_.begin(), points_.end(), t,
                               [](double x, const Breakpoint& b) { return x < b.t; });
    auto lo = hi - 1;
    const double frac = (t - lo->t) / (hi->t - lo->t);
    return lo->value + frac * (hi->value - lo->value);
}

Waveform Waveform::triangle(double amplitude, double frequency, int n_cycles, DriveMode mode) {
    if (!(frequency > 0.0) || n_cycles < 1) {
        throw std::invalid_argument("triangle: frequency must be > 0 and n_cycles >= 1");
    }
    const double period = 1.0 / frequency;
    std::vector<Breakpoint> pts;
    pts.reserve(4 * static_cast<std::size_t>(n_cycles) + 1);
    pts.push_back({0.0, 0.0});
    for (int c = 0; c < n_cycles; ++c) {
        const double t0 = c * period;
        pts.push_back({t0 + 0.25 * period, amplitude});
        pts.push_back({t0 + 0.75 * period, -amplitude});
        pts.push_back({t0 + period, 0.0});
    }
    return {mode, std::move(pts)};
}

Waveform Waveform::hold(double value, double duration, DriveMode mode) {
    if (!(duration > 0.0)) throw std::invalid_argument("hold: duration must be > 0");
    return {mode, {{0.0, value}, {duration, value}}};
}

namespace {

// Appends one trapezoid starting at t0 (the last point already in pts sits at
// t0 with value `base`).
void append_trapezoid(std::vector<Breakpoint>& pts, double t0, double base, double amplitude,
                      double width, double edge) {
    const double e = std::min(edge, width);
    const double flat = width - e;
    pts.push_back({t0 + e, base + amplitude});
    if (flat > 0.0) pts.push_back({t0 + e + flat, base + amplitude});
    pts.push_back({t0 + 2.0 * e + flat, base});
}

}  // namespace

Waveform Waveform::pulse(double amplitude, double width, double edge, double delay, double tail,
                         DriveMode mode, double base) {
    if (!(width > 0.0) || !(edge > 0.0) || delay < 0.0 || tail < 0.0) {
        throw std::invalid_argument("pulse: width and edge must be > 0, delay/tail >= 0");
    }
    std::vector<Breakpoint> pts{{0.0, base}};
    if (delay > 0.0) pts.push_back({delay, base});
    append_trapezoid(pts, delay, base, amplitude, width, edge);
    if (tail > 0.0) pts.push_back({pts.back().t + tail, base});
    return {mode, std::move(pts)};
}

Waveform Waveform::pulse_train(double amplitude, double width, double period, int count,
                               double edge, DriveMode mode) {
    const double e = std::min(edge, width);
    if (count < 1 || !(period >= width + e)) {
        throw std::invalid_argument("pulse_train: count >= 1 and period >= width + edge required");
    }
    std::vector<Breakpoint> pts{{0.0, 0.0}};
    for (int i = 0; i < count; ++i) {
        const double t0 = i * period;
        if (t0 > pts.back().t) pts.push_back({t0, 0.0});
        append_trapezoid(pts, t0, 0.0, amplitude, width, edge);
    }
    const double t_end = count * period;
    if (t_end > pts.back().t) pts.push_back({t_end, 0.0});
    return {mode, std::move(pts)};
}

}  // namespace fecap
