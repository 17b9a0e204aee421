#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "fecap/constants.hpp"

namespace fecap {

/// Compact-model parameter vector for one HZO capacitor, all fields SI.
///
/// Default construction gives the calibrated woken-up device: 625 um^2,
/// 9.8 nm HZO on a 1 nm interface layer, at 21 degC ambient.
struct DeviceParams {
    double area = 625e-12;           // m^2
    double t_fe = 9.8e-9;            // m
    double t_int = 1.0e-9;           // m
    double eps_fe = 70.0;
    double eps_int = 90.0;
    double eps_depl = 3.6;
    double barrier = 1.05 * PhysicalConstants::q;  // switching barrier, J
    double action_distance = 7.5e-9;               // m
    double offset_field = 0.2e8;                   // V/m
    double p_sat = 0.27;                           // C/m^2
    double n_depl_down = 1.4e28;                   // 1/m^3
    double n_depl_up = 1.4e28;                     // 1/m^3
    double n_fe = 1.0e24;                          // 1/m^3
    double q_fix_depl = 0.0945;                    // C/m^2
    double m_eff_int = 1.0;
    double phi_b_int = 0.65;   // V
    double phi_trap_fe = 0.68; // V
    double mu_fe = 15e-4;      // m^2/(V s)
    double temperature = 294.15;  // K

    /// Throws std::invalid_argument naming the first offending field.
    void validate() const;

    bool operator==(const DeviceParams&) const = default;
};

/// Identifier for every scalar DeviceParams field. `n_depl` addresses both
/// depletion directions at once.
enum class Param {
    area,
    t_fe,
    t_int,
    eps_fe,
    eps_int,
    eps_depl,
    barrier,
    action_distance,
    offset_field,
    p_sat,
    n_depl,
    n_depl_down,
    n_depl_up,
    n_fe,
    q_fix_depl,
    m_eff_int,
    phi_b_int,
    phi_trap_fe,
    mu_fe,
    temperature,
};

inline constexpr std::array kAllParams = {
    Param::area,       Param::t_fe,        Param::t_int,       Param::eps_fe,
    Param::eps_int,    Param::eps_depl,    Param::barrier,     Param::action_distance,
    Param::offset_field, Param::p_sat,     Param::n_depl,      Param::n_depl_down,
    Param::n_depl_up,  Param::n_fe,        Param::q_fix_depl,  Param::m_eff_int,
    Param::phi_b_int,  Param::phi_trap_fe, Param::mu_fe,       Param::temperature,
};

/// Config-file key (e.g. "P_s", "N_depl", "W_b").
std::string_view param_key(Param p);
std::optional<Param> param_from_key(std::string_view key);

double get_param(const DeviceParams& d, Param p);
void set_param(DeviceParams& d, Param p, double value);

/// Checks a single value against the field's domain; throws
/// std::invalid_argument with the config key in the message.
void validate_param(Param p, double value);

}  // namespace fecap
