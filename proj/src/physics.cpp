#include "fecap/physics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fecap::physics {

namespace {

using C = PhysicalConstants;

double clamp_exponent(double x) {
    return std::clamp(x, -kExponentClamp, kExponentClamp);
}

double floored(double denom) {
    if (std::abs(denom) >= kDepletionDenomMin) return denom;
    return denom < 0.0 ? -kDepletionDenomMin : kDepletionDenomMin;
}

}  // namespace

double guarded_exp(double x) {
    return std::exp(clamp_exponent(x));
}

double field_energy(double e_fe, const DeviceParams& params) {
    return C::q * (e_fe - params.offset_field) * params.action_distance;
}

TransitionRates transition_rates(double e_fe, const DeviceParams& params) {
    if (!std::isfinite(e_fe)) {
        throw std::invalid_argument("transition_rates: non-finite field");
    }
    const double kt = C::k_B * params.temperature;
    const double log_attempt = std::log(kt / C::h);
    const double w_e = field_energy(e_fe, params);
    // The attempt frequency is folded into the clamped exponent so that the
    // product cannot overflow.
    return {
        .k_down = guarded_exp(log_attempt + (-params.barrier + w_e) / kt),
        .k_up = guarded_exp(log_attempt + (-params.barrier - w_e) / kt),
    };
}

double p_steady_state(double e_fe, const DeviceParams& params) {
    const double kt = C::k_B * params.temperature;
    return 1.0 / (1.0 + guarded_exp(-2.0 * field_energy(e_fe, params) / kt));
}

double p_step(double p, const TransitionRates& rates, double dt) {
    if (dt < 0.0 || !std::isfinite(dt)) {
        throw std::invalid_argument("p_step: dt must be finite and >= 0");
    }
    const double total = rates.k_down + rates.k_up;
    if (!(total > 0.0) || dt == 0.0) return p;
    const double p_eq = rates.k_down / total;
    const double next = p_eq + (p - p_eq) * std::exp(-total * dt);
    return std::clamp(next, 0.0, 1.0);
}

double polarization(double p, const DeviceParams& params) {
    return params.p_sat * (2.0 * p - 1.0);
}

double c_layer(double eps_r, double thickness) {
    if (!(thickness > 0.0)) {
        throw std::invalid_argument("c_layer: thickness must be positive");
    }
    if (!(eps_r > 0.0)) {
        throw std::invalid_argument("c_layer: permittivity must be positive");
    }
    return C::eps0 * eps_r / thickness;
}

DepletionBranches c_depl_branches(double e_fe, const DeviceParams& params) {
    const double charge_fe = C::eps0 * params.eps_fe * e_fe;
    const double numerator = C::eps0 * params.eps_depl * C::q;
    return {
        .down = std::abs(numerator * params.n_depl_down / floored(charge_fe + params.q_fix_depl)),
        .up = std::abs(numerator * params.n_depl_up / floored(charge_fe - params.q_fix_depl)),
    };
}

double c_depl(double p, double e_fe, const DeviceParams& params) {
    const auto b = c_depl_branches(e_fe, params);
    return p * b.down + (1.0 - p) * b.up;
}

double phi_depl(double p, double v_fe, const DeviceParams& params, double e_fe_for_cdepl) {
    const double c_fe = c_layer(params.eps_fe, params.t_fe);
    const double charge = 2.0 * params.p_sat * p - params.p_sat + c_fe * v_fe;
    return charge / c_depl(p, e_fe_for_cdepl, params);
}

double j_fn(double e_int, const DeviceParams& params) {
    if (e_int == 0.0) return 0.0;
    const double e = std::abs(e_int);
    const double barrier = C::q * params.phi_b_int;  // J
    const double prefactor = C::q * C::q * C::q / (8.0 * kPi * C::h * barrier);
    const double slope = 8.0 * kPi * std::sqrt(2.0 * C::m0 * params.m_eff_int) *
                         std::pow(barrier, 1.5) / (3.0 * C::h * C::q);
    const double magnitude = prefactor * e * e * guarded_exp(-slope / e);
    return std::copysign(magnitude, e_int);
}

double j_pf(double e_leak, const DeviceParams& params) {
    if (e_leak == 0.0) return 0.0;
    const double e = std::abs(e_leak);
    const double kt = C::k_B * params.temperature;
    const double lowering = std::sqrt(C::q * e / (kPi * C::eps0 * params.eps_fe));
    const double magnitude = C::q * params.mu_fe * params.n_fe * e *
                             guarded_exp(-C::q * (params.phi_trap_fe - lowering) / kt);
    return std::copysign(magnitude, e_leak);
}

}  // namespace fecap::physics
