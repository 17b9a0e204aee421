#include "fecap/dc_cv.hpp"

#include <cmath>
#include <sstream>

#include "fecap/physics.hpp"

namespace fecap {

namespace ph = physics;

namespace {

// Illinois variant of regula falsi on a sign-changing bracket. Returns the
// abscissa; `ok` is false if the bracket does not change sign.
template <class F>
double illinois(F&& f, double lo, double hi, double f_tol, bool& ok) {
    double flo = f(lo);
    double fhi = f(hi);
    ok = true;
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0) || !std::isfinite(flo) || !std::isfinite(fhi)) {
        ok = false;
        return 0.5 * (lo + hi);
    }
    int side = 0;
    double x = lo;
    for (int it = 0; it < 400; ++it) {
        x = (lo * fhi - hi * flo) / (fhi - flo);
        if (!(x > std::min(lo, hi) && x < std::max(lo, hi))) x = 0.5 * (lo + hi);
        const double fx = f(x);
        if (std::abs(fx) < f_tol || std::abs(hi - lo) < 1e-15 * std::max(1.0, std::abs(x))) {
            return x;
        }
        if ((fx > 0.0) == (fhi > 0.0)) {
            hi = x;
            fhi = fx;
            if (side == -1) flo *= 0.5;
            side = -1;
        } else {
            lo = x;
            flo = fx;
            if (side == +1) fhi *= 0.5;
            side = +1;
        }
    }
    return x;
}

// Interface voltage at which FN tunnelling carries current density j.
double interface_voltage_for(double j, const DeviceParams& params) {
    if (j == 0.0 || !std::isfinite(j)) return 0.0;
    const double target = std::log(std::abs(j));
    auto g = [&](double log_e) { return std::log(ph::j_fn(std::exp(log_e), params)) - target; };
    double lo = std::log(1e-3);
    double hi = std::log(1e13);
    if (g(lo) >= 0.0) return 0.0;
    if (g(hi) <= 0.0) {
        throw std::domain_error("interface current exceeds the FN range");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) < 0.0 ? lo : hi) = mid;
    }
    return std::copysign(std::exp(0.5 * (lo + hi)) * params.t_int, j);
}

}  // namespace

DcPoint dc_operating_point(const DeviceParams& params, double v_bias) {
    auto fail = [&](const std::string& why) {
        std::ostringstream msg;
        msg << "dc operating point failed at V = " << v_bias << " V: " << why;
        return DcFailure(msg.str(), v_bias);
    };
    if (!std::isfinite(v_bias)) throw fail("non-finite bias");

    auto split = [&](double v_fe, double& v_int, double& p) {
        const double e_fe = v_fe / params.t_fe;
        v_int = interface_voltage_for(ph::j_pf(e_fe, params), params);
        p = ph::p_steady_state(e_fe, params);
        return v_bias - v_fe - v_int - ph::phi_depl(p, v_fe, params, e_fe);
    };
    auto loop = [&](double v_fe) {
        double v_int = 0.0;
        double p = 0.0;
        return split(v_fe, v_int, p);
    };

    double half_width = std::abs(v_bias) + 20.0;
    bool ok = false;
    double v_fe = 0.0;
    for (int attempt = 0; attempt < 4 && !ok; ++attempt, half_width *= 4.0) {
        try {
            v_fe = illinois(loop, -half_width, half_width, 1e-13, ok);
        } catch (const std::domain_error& e) {
            throw fail(e.what());
        }
    }
    if (!ok) throw fail("no sign change of the loop residual");

    DcPoint pt;
    pt.v = v_bias;
    pt.v_fe = v_fe;
    const double residual = split(v_fe, pt.v_int, pt.p);
    if (!(std::abs(residual) < 1e-9)) throw fail("loop residual above tolerance");
    pt.i = params.area * ph::j_fn(pt.v_int / params.t_int, params);
    return pt;
}

std::vector<DcPoint> dc_sweep(const DeviceParams& params, double v_start, double v_stop,
                              int n_points) {
    if (n_points < 2) throw std::invalid_argument("dc_sweep: n_points must be >= 2");
    params.validate();
    std::vector<DcPoint> out;
    out.reserve(static_cast<std::size_t>(n_points));
    for (int k = 0; k < n_points; ++k) {
        const double v = k + 1 == n_points
                             ? v_stop
                             : v_start + (v_stop - v_start) * static_cast<double>(k) / (n_points - 1);
        out.push_back(dc_operating_point(params, v));
    }
    return out;
}

double series_capacitance(double c1, double c2, double c3) {
    return c1 * c2 * c3 / (c1 * c2 + c1 * c3 + c2 * c3);
}

double small_signal_capacitance(const DeviceParams& params, const TimeSample& op, double delta_v) {
    if (!(delta_v > 0.0)) throw std::invalid_argument("small-signal probe: delta_v must be > 0");
    const double c_fe = ph::c_layer(params.eps_fe, params.t_fe);
    const double c_int = ph::c_layer(params.eps_int, params.t_int);
    const double ratio = c_fe / c_int;

    auto shift = [&](double target) {
        // d = change of V_fe; the interface takes ratio * d by charge equality.
        auto g = [&](double d) {
            const double v_fe = op.v_fe + d;
            return target - v_fe - (op.v_int + ratio * d) -
                   ph::phi_depl(op.p, v_fe, params, v_fe / params.t_fe);
        };
        bool ok = false;
        double span = 10.0 * delta_v + 1e-2;
        double d = 0.0;
        for (int attempt = 0; attempt < 6 && !ok; ++attempt, span *= 4.0) {
            d = illinois(g, -span, span, 1e-15, ok);
        }
        if (!ok) {
            std::ostringstream msg;
            msg << "small-signal probe did not bracket at V = " << op.v_appl << " V";
            throw std::runtime_error(msg.str());
        }
        return d;
    };
    const double d_plus = shift(op.v_appl + delta_v);
    const double d_minus = shift(op.v_appl - delta_v);
    return params.area * c_fe * (d_plus - d_minus) / (2.0 * delta_v);
}

std::vector<CvPoint> small_signal_cv(const DeviceParams& params, const Waveform& bias_waveform,
                                     double delta_v, const SolverConfig& config) {
    if (bias_waveform.mode() != DriveMode::voltage) {
        throw std::invalid_argument("small_signal_cv: bias waveform must be voltage-mode");
    }
    const TimeSeries ts = run_transient(params, bias_waveform, config);
    std::vector<CvPoint> out;
    out.reserve(ts.rows.size());
    for (const auto& row : ts.rows) {
        out.push_back({row.t, row.v_appl, small_signal_capacitance(params, row, delta_v)});
    }
    return out;
}

}  // namespace fecap
