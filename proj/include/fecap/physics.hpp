#pragma once

#include "fecap/device_params.hpp"

/// Constitutive equations of the ferroelectric stack. Every function is pure
/// and works in SI units; quantities "per area" are per square metre.
namespace fecap::physics {

/// Exponents are clamped to this magnitude before std::exp.
inline constexpr double kExponentClamp = 700.0;

/// Magnitude floor of the depletion-capacitance denominator, C/m^2.
inline constexpr double kDepletionDenomMin = 1e-4;

struct TransitionRates {
    double k_down = 0.0;  // drives p towards 1, 1/s
    double k_up = 0.0;    // drives p towards 0, 1/s
};

/// exp(x) with x clamped to +-kExponentClamp.
double guarded_exp(double x);

/// Field-modulation energy q (E_fe - E_off) d_e in joules.
double field_energy(double e_fe, const DeviceParams& params);

/// Barrier-crossing rates k = (kT/h) exp((-W_b +- W_e)/kT).
/// Throws std::invalid_argument for a non-finite field.
TransitionRates transition_rates(double e_fe, const DeviceParams& params);

/// Stationary up-state probability k_down / (k_down + k_up), in log form.
double p_steady_state(double e_fe, const DeviceParams& params);

/// Exact solution of dp/dt = k_down (1 - p) - k_up p over dt with frozen
/// rates. Throws std::invalid_argument when dt < 0.
double p_step(double p, const TransitionRates& rates, double dt);

/// P = P_s (2p - 1), C/m^2.
double polarization(double p, const DeviceParams& params);

/// Parallel-plate capacitance per area eps0 eps_r / t, F/m^2.
double c_layer(double eps_r, double thickness);

struct DepletionBranches {
    double down = 0.0;  // F/m^2, weighted by p
    double up = 0.0;    // F/m^2, weighted by 1 - p
};

/// Per-direction depletion capacitances at field e_fe.
DepletionBranches c_depl_branches(double e_fe, const DeviceParams& params);

/// p-weighted depletion capacitance per area.
double c_depl(double p, double e_fe, const DeviceParams& params);

/// Depletion-layer potential (2 P_s p - P_s + C_fe V_fe) / C_depl, volts.
double phi_depl(double p, double v_fe, const DeviceParams& params, double e_fe_for_cdepl);

/// Fowler-Nordheim tunnelling density through the interface layer, odd in
/// field, A/m^2.
double j_fn(double e_int, const DeviceParams& params);

/// Poole-Frenkel emission density through the ferroelectric, odd in field,
/// A/m^2.
double j_pf(double e_leak, const DeviceParams& params);

}  // namespace fecap::physics
