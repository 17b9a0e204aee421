#include "fecap/analyses.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fecap/physics.hpp"
#include "fecap/waveform.hpp"

namespace fecap {

LoopMetrics extract_loop_metrics(std::span<const LoopPoint> loop) {
    LoopMetrics m;
    for (std::size_t i = 1; i < loop.size(); ++i) {
        const auto& a = loop[i - 1];
        const auto& b = loop[i];
        if ((a.v > 0.0 && b.v <= 0.0) || (a.v < 0.0 && b.v >= 0.0)) {
            const double s = a.v / (a.v - b.v);
            const double p0 = a.p + s * (b.p - a.p);
            (a.v > 0.0 ? m.pr_pos : m.pr_neg) = p0;
        }
        if ((a.p < 0.0 && b.p >= 0.0) || (a.p > 0.0 && b.p <= 0.0)) {
            const double s = a.p / (a.p - b.p);
            const double v0 = a.v + s * (b.v - a.v);
            (a.p < 0.0 ? m.vc_pos : m.vc_neg) = v0;
        }
    }
    return m;
}

double loop_area(std::span<const LoopPoint> loop) {
    if (loop.size() < 3) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < loop.size(); ++i) {
        const auto& a = loop[i];
        const auto& b = loop[(i + 1) % loop.size()];
        acc += 0.5 * (a.v + b.v) * (b.p - a.p);
    }
    return acc;
}

namespace {

// Rows with t in [t_lo, t_hi] (tolerant at both ends).
std::vector<const TimeSample*> rows_between(const TimeSeries& ts, double t_lo, double t_hi,
                                            double tol) {
    std::vector<const TimeSample*> out;
    for (const auto& r : ts.rows) {
        if (r.t >= t_lo - tol && r.t <= t_hi + tol) out.push_back(&r);
    }
    return out;
}

}  // namespace

HysteresisResult hysteresis(const DeviceParams& params, double amplitude, double frequency,
                            int n_cycles, const SolverConfig& config) {
    if (n_cycles < 2) throw std::invalid_argument("hysteresis: n_cycles must be >= 2");
    if (!(frequency > 0.0)) throw std::invalid_argument("hysteresis: frequency must be > 0");
    const double period = 1.0 / frequency;
    SolverConfig cfg = config;
    cfg.dt = std::min(config.dt, period / 1000.0);

    HysteresisResult res;
    res.series = run_transient(params, Waveform::triangle(amplitude, frequency, n_cycles), cfg);

    const double tol = 1e-9 * period;
    const auto last = rows_between(res.series, (n_cycles - 1) * period, n_cycles * period, tol);
    const auto prev = rows_between(res.series, (n_cycles - 2) * period, (n_cycles - 1) * period, tol);

    res.loop.reserve(last.size());
    for (const auto* r : last) {
        res.loop.push_back({r->v_appl, r->polarization});
        res.displacement_current.emplace_back(r->v_appl, r->i_terminal);
    }
    const auto m = extract_loop_metrics(res.loop);
    res.pr_pos = m.pr_pos;
    res.pr_neg = m.pr_neg;
    res.vc_pos = m.vc_pos;
    res.vc_neg = m.vc_neg;
    res.area = loop_area(res.loop);

    const std::size_t n = std::min(last.size(), prev.size());
    double lo = 0.0;
    double hi = 0.0;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = last[i]->polarization - prev[i]->polarization;
        ss += d * d;
    }
    for (const auto* r : last) {
        lo = std::min(lo, r->polarization);
        hi = std::max(hi, r->polarization);
    }
    const double rms = n > 0 ? std::sqrt(ss / static_cast<double>(n)) : 0.0;
    res.closure_rms = hi > lo ? rms / (hi - lo) : rms;
    return res;
}

std::vector<KineticsPoint> switching_kinetics(const DeviceParams& params,
                                              std::span<const double> amplitudes,
                                              std::span<const double> widths,
                                              const SolverConfig& config,
                                              const KineticsOptions& options) {
    if (options.steps_per_pulse < 1) throw std::invalid_argument("kinetics: steps_per_pulse must be >= 1");
    Transient preset(params, config);
    preset.initialize(0.0);
    preset.advance(Waveform::pulse(options.preset, options.preset_width, options.edge, 0.0,
                                   options.settle),
                   std::min(config.dt, options.preset_width / options.steps_per_pulse));
    const double p_before = preset.state().p;

    std::vector<KineticsPoint> out;
    out.reserve(amplitudes.size() * widths.size());
    for (double amp : amplitudes) {
        for (double width : widths) {
            Transient tr = preset;
            tr.advance(Waveform::pulse(amp, width, options.edge),
                       std::min(config.dt, width / options.steps_per_pulse));
            out.push_back({amp, width, 2.0 * params.p_sat * (tr.state().p - p_before)});
        }
    }
    return out;
}

ProgramTrace current_program(const DeviceParams& params, const ProgramSpec& spec,
                             const SolverConfig& config) {
    if (spec.n_pulses < 1) throw std::invalid_argument("current_program: n_pulses must be >= 1");
    if (!(spec.pulse_width > 0.0)) throw std::invalid_argument("current_program: pulse_width must be > 0");
    if (!(spec.max_discharge > 0.0)) throw std::invalid_argument("current_program: max_discharge must be > 0");

    ProgramTrace trace;
    trace.spec = spec;
    Transient tr(params, config);
    tr.initialize(0.0);
    trace.initial_polarization = physics::polarization(tr.state().p, params);
    trace.series.rows.push_back(tr.sample());

    const Waveform pulse = Waveform::pulse(spec.pulse_current, spec.pulse_width, spec.edge, 0.0,
                                           0.0, DriveMode::current);
    const double dt_pulse = std::min(config.dt, spec.pulse_width / spec.steps_per_pulse);
    for (int k = 0; k < spec.n_pulses; ++k) {
        const std::size_t first = trace.series.rows.size();
        tr.advance(pulse, dt_pulse, &trace.series);
        double peak = 0.0;
        for (std::size_t i = first; i < trace.series.rows.size(); ++i) {
            peak = std::max(peak, std::abs(trace.series.rows[i].v_appl));
        }
        trace.peak_voltage.push_back(peak);
        trace.polarization_after_pulse.push_back(physics::polarization(tr.state().p, params));

        if (!spec.discharge_between) continue;
        // 0 V clamp with geometrically growing steps. A single small sample
        // can be a sign change of the relaxation current, so two
        // consecutive ones are required.
        double h = 1e-9;
        double elapsed = 0.0;
        int below = 0;
        while (elapsed < spec.max_discharge) {
            h = std::min({h, config.dt, spec.max_discharge - elapsed});
            tr.step(h, DriveMode::voltage, 0.0, 0.0);
            elapsed += h;
            trace.series.rows.push_back(tr.sample());
            below = std::abs(tr.terminal_current()) < spec.discharge_threshold ? below + 1 : 0;
            if (below >= 2) break;
            h *= 1.25;
        }
        trace.discharge_time.push_back(elapsed);
        trace.polarization_after_discharge.push_back(physics::polarization(tr.state().p, params));
    }
    return trace;
}

DeviceParams pristine_params(const DeviceParams& woken) {
    DeviceParams p = woken;
    p.n_depl_down = kPristineDepletionDensity;
    p.n_depl_up = kPristineDepletionDensity;
    return p;
}

std::vector<HysteresisResult> pristine_scenario(const DeviceParams& params,
                                                std::span<const double> amplitudes,
                                                double frequency, int n_cycles,
                                                const SolverConfig& config) {
    const DeviceParams pristine = pristine_params(params);
    std::vector<HysteresisResult> out;
    out.reserve(amplitudes.size());
    for (double a : amplitudes) out.push_back(hysteresis(pristine, a, frequency, n_cycles, config));
    return out;
}

}  // namespace fecap
