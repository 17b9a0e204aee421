#include "fecap/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fecap/physics.hpp"
#include "newton.hpp"

namespace fecap {

namespace ph = physics;

void SolverConfig::validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("solver: dt must be positive");
    if (!(newton_tol_v > 0.0)) throw std::invalid_argument("solver: newton_tol_v must be positive");
    if (!(newton_tol_i > 0.0)) throw std::invalid_argument("solver: newton_tol_i must be positive");
    if (max_newton_iters < 1) throw std::invalid_argument("solver: max_newton_iters must be >= 1");
    if (max_step_halvings < 0) throw std::invalid_argument("solver: max_step_halvings must be >= 0");
    if (!(p_init >= 0.0 && p_init <= 1.0)) throw std::invalid_argument("solver: p_init must lie in [0, 1]");
    if (record_every < 1) throw std::invalid_argument("solver: record_every must be >= 1");
    if (min_segment_steps < 1) throw std::invalid_argument("solver: min_segment_steps must be >= 1");
}

std::vector<double> terminal_charge(const TimeSeries& ts) {
    std::vector<double> q(ts.rows.size(), 0.0);
    for (std::size_t i = 1; i < ts.rows.size(); ++i) {
        const auto& a = ts.rows[i - 1];
        const auto& b = ts.rows[i];
        q[i] = q[i - 1] + 0.5 * (a.i_terminal + b.i_terminal) * (b.t - a.t);
    }
    return q;
}

StepResidual step_residual(const DeviceState& prev, const TrialPoint& trial, double dt,
                           DriveMode mode, double drive_value, const DeviceParams& params) {
    StepResidual r;
    if (!std::isfinite(trial.v_fe) || !std::isfinite(trial.v_int) || !std::isfinite(trial.v_appl)) {
        const double nan = std::nan("");
        r.loop = r.kcl = r.drive = nan;
        return r;
    }
    const double e_fe = trial.v_fe / params.t_fe;
    const double e_int = trial.v_int / params.t_int;
    const double c_fe = ph::c_layer(params.eps_fe, params.t_fe);
    const double c_int = ph::c_layer(params.eps_int, params.t_int);

    r.p_next = ph::p_step(prev.p, ph::transition_rates(e_fe, params), dt);
    r.phi_depl = ph::phi_depl(r.p_next, trial.v_fe, params, e_fe);
    const double v_appl = mode == DriveMode::voltage ? drive_value : trial.v_appl;
    r.loop = v_appl - trial.v_fe - trial.v_int - r.phi_depl;

    r.j_pol = 2.0 * params.p_sat * (r.p_next - prev.p) / dt;
    r.j_pf = ph::j_pf(e_fe, params);
    r.j_fn = ph::j_fn(e_int, params);
    const double j_fe = c_fe * (trial.v_fe - prev.v_fe) / dt + r.j_pol + r.j_pf;
    r.j_terminal = c_int * (trial.v_int - prev.v_int) / dt + r.j_fn;
    r.kcl = params.area * (j_fe - r.j_terminal);
    if (mode == DriveMode::current) {
        r.drive = params.area * r.j_terminal - drive_value;
    }
    return r;
}

namespace {

struct Attempt {
    bool converged = false;
    int iterations = 0;
    StepOutcome outcome;
};

Attempt attempt_step(const DeviceState& prev, double dt, DriveMode mode, double drive,
                     const DeviceParams& params, const SolverConfig& config) {
    const double tol_v = config.newton_tol_v;
    const double tol_i = config.kcl_tolerance(params.area);
    Attempt a;

    auto finish = [&](double v_fe, double v_int, double v_appl, int iterations, bool converged) {
        a.converged = converged;
        a.iterations = iterations;
        a.outcome.residual = step_residual(prev, {v_fe, v_int, v_appl}, dt, mode, drive, params);
        a.outcome.state = {a.outcome.residual.p_next, v_fe, v_int, v_appl, prev.t + dt};
    };

    if (mode == DriveMode::voltage) {
        auto res = [&](const detail::Vec<2>& x) {
            const auto r = step_residual(prev, {x[0], x[1], drive}, dt, mode, drive, params);
            return detail::Vec<2>(r.loop / tol_v, r.kcl / tol_i);
        };
        auto nr = detail::damped_newton<2>(res, detail::Vec<2>(prev.v_fe, prev.v_int),
                                           config.max_newton_iters);
        finish(nr.x[0], nr.x[1], drive, nr.iterations, nr.converged);
    } else {
        auto res = [&](const detail::Vec<3>& x) {
            const auto r = step_residual(prev, {x[0], x[1], x[2]}, dt, mode, drive, params);
            return detail::Vec<3>(r.loop / tol_v, r.kcl / tol_i, r.drive / tol_i);
        };
        auto nr = detail::damped_newton<3>(
            res, detail::Vec<3>(prev.v_fe, prev.v_int, prev.v_appl), config.max_newton_iters);
        finish(nr.x[0], nr.x[1], nr.x[2], nr.iterations, nr.converged);
    }
    return a;
}

void accept(SolverStats* stats, const StepResidual& r, double tol_v, double tol_i) {
    if (stats == nullptr) return;
    ++stats->steps;
    stats->max_loop_ratio = std::max(stats->max_loop_ratio, std::abs(r.loop) / tol_v);
    stats->max_kcl_ratio = std::max(stats->max_kcl_ratio, std::abs(r.kcl) / tol_i);
}

StepOutcome solve_recursive(const DeviceState& prev, double dt, DriveMode mode, double d0,
                            double d1, const DeviceParams& params, const SolverConfig& config,
                            SolverStats* stats, int depth) {
    Attempt a = attempt_step(prev, dt, mode, d1, params, config);
    if (stats != nullptr) stats->newton_iterations += static_cast<std::uint64_t>(a.iterations);
    if (a.converged) {
        accept(stats, a.outcome.residual, config.newton_tol_v, config.kcl_tolerance(params.area));
        return a.outcome;
    }
    if (depth >= config.max_step_halvings) {
        std::ostringstream msg;
        msg << "step failed to converge at t = " << prev.t + dt << " s (dt = " << dt
            << " s, loop residual " << a.outcome.residual.loop << " V, KCL residual "
            << a.outcome.residual.kcl << " A)";
        throw StepFailure(msg.str(), prev.t + dt, a.outcome.residual.loop, a.outcome.residual.kcl);
    }
    if (stats != nullptr) ++stats->halvings;
    const double half = 0.5 * dt;
    const double d_mid = 0.5 * (d0 + d1);
    StepOutcome first =
        solve_recursive(prev, half, mode, d0, d_mid, params, config, stats, depth + 1);
    return solve_recursive(first.state, half, mode, d_mid, d1, params, config, stats, depth + 1);
}

}  // namespace

StepOutcome solve_timestep(const DeviceState& prev, double dt, DriveMode mode, double drive_start,
                           double drive_end, const DeviceParams& params,
                           const SolverConfig& config, SolverStats* stats) {
    if (!(dt > 0.0)) throw std::invalid_argument("solve_timestep: dt must be positive");
    return solve_recursive(prev, dt, mode, drive_start, drive_end, params, config, stats, 0);
}

Transient::Transient(const DeviceParams& params, const SolverConfig& config)
    : params_(params), config_(config) {
    params_.validate();
    config_.validate();
    state_.p = config_.p_init;
}

void Transient::initialize(double v_appl) {
    const double p = config_.p_init;
    const double pol = ph::polarization(p, params_);
    const double c_fe = ph::c_layer(params_.eps_fe, params_.t_fe);
    const double c_int = ph::c_layer(params_.eps_int, params_.t_int);
    const double tol_v = config_.newton_tol_v;
    constexpr double kChargeTol = 1e-14;  // C/m^2

    auto res = [&](const detail::Vec<2>& x) {
        const double loop = v_appl - x[0] - x[1] - ph::phi_depl(p, x[0], params_, x[0] / params_.t_fe);
        const double charge = c_int * x[1] - (pol + c_fe * x[0]);
        return detail::Vec<2>(loop / tol_v, charge / kChargeTol);
    };
    auto nr = detail::damped_newton<2>(res, detail::Vec<2>(0.0, 0.0), 4 * config_.max_newton_iters);
    if (!nr.converged) {
        throw StepFailure("initial operating point did not converge", 0.0, nr.residual[0] * tol_v,
                          0.0);
    }
    state_ = {p, nr.x[0], nr.x[1], v_appl, 0.0};
    last_ = {};
    last_.p_next = p;
    last_.phi_depl = ph::phi_depl(p, state_.v_fe, params_, state_.v_fe / params_.t_fe);
    last_.loop = nr.residual[0] * tol_v;
    last_.j_pf = ph::j_pf(state_.v_fe / params_.t_fe, params_);
    last_.j_fn = ph::j_fn(state_.v_int / params_.t_int, params_);
    last_.j_terminal = last_.j_fn;
}

const DeviceState& Transient::step(double dt, DriveMode mode, double drive_start, double drive_end) {
    auto out = solve_timestep(state_, dt, mode, drive_start, drive_end, params_, config_, &stats_);
    state_ = out.state;
    last_ = out.residual;
    return state_;
}

void Transient::advance(const Waveform& waveform, double dt, TimeSeries* out) {
    if (!(dt > 0.0)) throw std::invalid_argument("advance: dt must be positive");
    const double t0 = state_.t;
    const auto pts = waveform.breakpoints();
    std::uint64_t count = 0;
    for (std::size_t seg = 1; seg < pts.size(); ++seg) {
        const double len = pts[seg].t - pts[seg - 1].t;
        const auto n = std::max<std::int64_t>(config_.min_segment_steps,
                                              static_cast<std::int64_t>(std::ceil(len / dt - 1e-9)));
        for (std::int64_t k = 1; k <= n; ++k) {
            const double ta = pts[seg - 1].t + len * static_cast<double>(k - 1) / static_cast<double>(n);
            const double tb = k == n ? pts[seg].t
                                     : pts[seg - 1].t + len * static_cast<double>(k) / static_cast<double>(n);
            step(tb - ta, waveform.mode(), waveform.value(ta), waveform.value(tb));
            // Pin time to the breakpoint grid so long runs do not drift.
            state_.t = t0 + (tb - pts.front().t);
            ++count;
            const bool last = seg + 1 == pts.size() && k == n;
            if (out != nullptr && (count % static_cast<std::uint64_t>(config_.record_every) == 0 || last)) {
                out->rows.push_back(sample());
            }
        }
    }
}

TimeSample Transient::sample() const {
    TimeSample s;
    s.t = state_.t;
    s.v_appl = state_.v_appl;
    s.i_terminal = terminal_current();
    s.p = state_.p;
    s.polarization = ph::polarization(state_.p, params_);
    s.v_fe = state_.v_fe;
    s.v_int = state_.v_int;
    s.phi_depl = last_.phi_depl;
    s.j_pf = last_.j_pf;
    s.j_fn = last_.j_fn;
    s.j_pol = last_.j_pol;
    s.loop_residual = last_.loop;
    s.kcl_residual = last_.kcl;
    return s;
}

double Transient::terminal_current() const {
    return params_.area * last_.j_terminal;
}

TimeSeries run_transient(const DeviceParams& params, const Waveform& waveform,
                         const SolverConfig& config, SolverStats* stats) {
    Transient tr(params, config);
    const double v0 = waveform.mode() == DriveMode::voltage ? waveform.value(waveform.start_time()) : 0.0;
    tr.initialize(v0);
    TimeSeries ts;
    ts.rows.push_back(tr.sample());
    tr.advance(waveform, config.dt, &ts);
    if (stats != nullptr) *stats = tr.stats();
    return ts;
}

}  // namespace fecap
