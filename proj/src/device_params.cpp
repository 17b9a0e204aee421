#include "fecap/device_params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fecap {

namespace {

enum class Domain { positive, non_negative, finite };

Domain domain_of(Param p) {
    switch (p) {
        case Param::offset_field:
            return Domain::finite;
        // Zero polarization and zero PF mobility are the ferro-free and
        // leakage-free limits; both are legitimate model inputs.
        case Param::p_sat:
        case Param::mu_fe:
        case Param::q_fix_depl:
            return Domain::non_negative;
        default:
            return Domain::positive;
    }
}

}  // namespace

std::string_view param_key(Param p) {
    switch (p) {
        case Param::area: return "area";
        case Param::t_fe: return "t_fe";
        case Param::t_int: return "t_int";
        case Param::eps_fe: return "eps_fe";
        case Param::eps_int: return "eps_int";
        case Param::eps_depl: return "eps_depl";
        case Param::barrier: return "W_b";
        case Param::action_distance: return "d_e";
        case Param::offset_field: return "E_off";
        case Param::p_sat: return "P_s";
        case Param::n_depl: return "N_depl";
        case Param::n_depl_down: return "N_depl_dn";
        case Param::n_depl_up: return "N_depl_up";
        case Param::n_fe: return "N_fe";
        case Param::q_fix_depl: return "Q_fix_depl";
        case Param::m_eff_int: return "m_eff_int";
        case Param::phi_b_int: return "phi_b_int";
        case Param::phi_trap_fe: return "phi_tr_fe";
        case Param::mu_fe: return "mu_fe";
        case Param::temperature: return "T";
    }
    return "?";
}

std::optional<Param> param_from_key(std::string_view key) {
    for (Param p : kAllParams) {
        if (param_key(p) == key) return p;
    }
    return std::nullopt;
}

double get_param(const DeviceParams& d, Param p) {
    switch (p) {
        case Param::area: return d.area;
        case Param::t_fe: return d.t_fe;
        case Param::t_int: return d.t_int;
        case Param::eps_fe: return d.eps_fe;
        case Param::eps_int: return d.eps_int;
        case Param::eps_depl: return d.eps_depl;
        case Param::barrier: return d.barrier;
        case Param::action_distance: return d.action_distance;
        case Param::offset_field: return d.offset_field;
        case Param::p_sat: return d.p_sat;
        case Param::n_depl: return d.n_depl_down;
        case Param::n_depl_down: return d.n_depl_down;
        case Param::n_depl_up: return d.n_depl_up;
        case Param::n_fe: return d.n_fe;
        case Param::q_fix_depl: return d.q_fix_depl;
        case Param::m_eff_int: return d.m_eff_int;
        case Param::phi_b_int: return d.phi_b_int;
        case Param::phi_trap_fe: return d.phi_trap_fe;
        case Param::mu_fe: return d.mu_fe;
        case Param::temperature: return d.temperature;
    }
    return 0.0;
}

void set_param(DeviceParams& d, Param p, double value) {
    switch (p) {
        case Param::area: d.area = value; break;
        case Param::t_fe: d.t_fe = value; break;
        case Param::t_int: d.t_int = value; break;
        case Param::eps_fe: d.eps_fe = value; break;
        case Param::eps_int: d.eps_int = value; break;
        case Param::eps_depl: d.eps_depl = value; break;
        case Param::barrier: d.barrier = value; break;
        case Param::action_distance: d.action_distance = value; break;
        case Param::offset_field: d.offset_field = value; break;
        case Param::p_sat: d.p_sat = value; break;
        case Param::n_depl:
            d.n_depl_down = value;
            d.n_depl_up = value;
            break;
        case Param::n_depl_down: d.n_depl_down = value; break;
        case Param::n_depl_up: d.n_depl_up = value; break;
        case Param::n_fe: d.n_fe = value; break;
        case Param::q_fix_depl: d.q_fix_depl = value; break;
        case Param::m_eff_int: d.m_eff_int = value; break;
        case Param::phi_b_int: d.phi_b_int = value; break;
        case Param::phi_trap_fe: d.phi_trap_fe = value; break;
        case Param::mu_fe: d.mu_fe = value; break;
        case Param::temperature: d.temperature = value; break;
    }
}

void validate_param(Param p, double value) {
    const std::string key(param_key(p));
    if (!std::isfinite(value)) {
        throw std::invalid_argument(key + ": value must be finite");
    }
    switch (domain_of(p)) {
        case Domain::positive:
            if (!(value > 0.0)) throw std::invalid_argument(key + ": value must be positive");
            break;
        case Domain::non_negative:
            if (value < 0.0) throw std::invalid_argument(key + ": value must be non-negative");
            break;
        case Domain::finite:
            break;
    }
}

void DeviceParams::validate() const {
    for (Param p : kAllParams) {
        validate_param(p, get_param(*this, p));
    }
}

}  // namespace fecap
