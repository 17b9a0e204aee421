#include "fecap/units.hpp"

#include <array>

#include "fecap/constants.hpp"

namespace fecap::units {

namespace {

using PC = PhysicalConstants;

constexpr std::array kNone{Unit{"", 1.0}, Unit{"1", 1.0}};
constexpr std::array kLength{Unit{"nm", 1e-9}, Unit{"m", 1.0}, Unit{"um", 1e-6},
                             Unit{"A", 1e-10}, Unit{"cm", 1e-2}};
constexpr std::array kArea{Unit{"um2", 1e-12}, Unit{"m2", 1.0}, Unit{"nm2", 1e-18},
                           Unit{"cm2", 1e-4}, Unit{"mm2", 1e-6}};
constexpr std::array kEnergy{Unit{"eV", PC::q}, Unit{"J", 1.0}, Unit{"meV", 1e-3 * PC::q}};
constexpr std::array kField{Unit{"MV/cm", 1e8}, Unit{"V/m", 1.0}, Unit{"kV/cm", 1e5},
                            Unit{"V/cm", 1e2}, Unit{"MV/m", 1e6}};
constexpr std::array kChargeDensity{Unit{"uC/cm2", 1e-2}, Unit{"C/m2", 1.0},
                                    Unit{"C/cm2", 1e4}, Unit{"mC/m2", 1e-3}};
constexpr std::array kNumberDensity{Unit{"cm-3", 1e6}, Unit{"m-3", 1.0}, Unit{"1/cm3", 1e6},
                                    Unit{"1/m3", 1.0}};
constexpr std::array kPotential{Unit{"eV", 1.0}, Unit{"V", 1.0}};
constexpr std::array kMobility{Unit{"cm2/Vs", 1e-4}, Unit{"m2/Vs", 1.0}};
constexpr std::array kTemperature{Unit{"C", 1.0, 273.15}, Unit{"K", 1.0}, Unit{"degC", 1.0, 273.15}};
constexpr std::array kVoltage{Unit{"V", 1.0}, Unit{"mV", 1e-3}, Unit{"kV", 1e3}};
constexpr std::array kCurrent{Unit{"nA", 1e-9}, Unit{"A", 1.0}, Unit{"mA", 1e-3},
                              Unit{"uA", 1e-6}, Unit{"pA", 1e-12}};
constexpr std::array kTime{Unit{"us", 1e-6}, Unit{"s", 1.0}, Unit{"ms", 1e-3},
                           Unit{"ns", 1e-9}, Unit{"ps", 1e-12}};
constexpr std::array kFrequency{Unit{"kHz", 1e3}, Unit{"Hz", 1.0}, Unit{"MHz", 1e6}};

const Unit& find(std::string_view unit, Dimension d) {
    const std::string n = normalize_unit(unit);
    for (const auto& u : units_for(d)) {
        if (u.name == n) return u;
    }
    std::string msg = "unit '" + std::string(unit) + "' is not a " + std::string(to_string(d)) +
                      " unit (expected one of:";
    for (const auto& u : units_for(d)) msg += " " + (u.name.empty() ? std::string("<none>") : std::string(u.name));
    throw UnitError(msg + ")");
}

}  // namespace

std::string_view to_string(Dimension d) {
    switch (d) {
    case Dimension::none: return "dimensionless";
    case Dimension::length: return "length";
    case Dimension::area: return "area";
    case Dimension::energy: return "energy";
    case Dimension::field: return "field";
    case Dimension::charge_density: return "charge density";
    case Dimension::number_density: return "number density";
    case Dimension::potential: return "potential";
    case Dimension::mobility: return "mobility";
    case Dimension::temperature: return "temperature";
    case Dimension::voltage: return "voltage";
    case Dimension::current: return "current";
    case Dimension::time: return "time";
    case Dimension::frequency: return "frequency";
    }
    return "?";
}

std::span<const Unit> units_for(Dimension d) {
    switch (d) {
    case Dimension::none: return kNone;
    case Dimension::length: return kLength;
    case Dimension::area: return kArea;
    case Dimension::energy: return kEnergy;
    case Dimension::field: return kField;
    case Dimension::charge_density: return kChargeDensity;
    case Dimension::number_density: return kNumberDensity;
    case Dimension::potential: return kPotential;
    case Dimension::mobility: return kMobility;
    case Dimension::temperature: return kTemperature;
    case Dimension::voltage: return kVoltage;
    case Dimension::current: return kCurrent;
    case Dimension::time: return kTime;
    case Dimension::frequency: return kFrequency;
    }
    return {};
}

std::string normalize_unit(std::string_view unit) {
    std::string out;
    out.reserve(unit.size());
    for (std::size_t i = 0; i < unit.size(); ++i) {
        const auto rest = unit.substr(i);
        if (rest.starts_with("\xC2\xB5") || rest.starts_with("\xCE\xBC")) {  // micro sign, mu
            out += 'u';
            ++i;
        } else if (rest.starts_with("\xC2\xB0")) {  // degree sign
            ++i;
        } else if (rest.starts_with("\xC3\x85")) {  // angstrom
            out += 'A';
            ++i;
        } else {
            out += unit[i];
        }
    }
    return out;
}

double to_si(double value, std::string_view unit, Dimension d) {
    const Unit& u = find(unit, d);
    return value * u.scale + u.offset;
}

double from_si(double si, std::string_view unit, Dimension d) {
    const Unit& u = find(unit, d);
    return (si - u.offset) / u.scale;
}

std::string_view display_unit(Dimension d) { return units_for(d).front().name; }

std::string_view si_unit(Dimension d) {
    switch (d) {
    case Dimension::none: return "";
    case Dimension::length: return "m";
    case Dimension::area: return "m2";
    case Dimension::energy: return "J";
    case Dimension::field: return "V/m";
    case Dimension::charge_density: return "C/m2";
    case Dimension::number_density: return "m-3";
    case Dimension::potential: return "V";
    case Dimension::mobility: return "m2/Vs";
    case Dimension::temperature: return "K";
    case Dimension::voltage: return "V";
    case Dimension::current: return "A";
    case Dimension::time: return "s";
    case Dimension::frequency: return "Hz";
    }
    return "";
}

Dimension param_dimension(Param p) {
    switch (p) {
    case Param::area: return Dimension::area;
    case Param::t_fe:
    case Param::t_int:
    case Param::action_distance: return Dimension::length;
    case Param::eps_fe:
    case Param::eps_int:
    case Param::eps_depl:
    case Param::m_eff_int: return Dimension::none;
    case Param::barrier: return Dimension::energy;
    case Param::offset_field: return Dimension::field;
    case Param::p_sat:
    case Param::q_fix_depl: return Dimension::charge_density;
    case Param::n_depl:
    case Param::n_depl_down:
    case Param::n_depl_up:
    case Param::n_fe: return Dimension::number_density;
    case Param::phi_b_int:
    case Param::phi_trap_fe: return Dimension::potential;
    case Param::mu_fe: return Dimension::mobility;
    case Param::temperature: return Dimension::temperature;
    }
    return Dimension::none;
}

}  // namespace fecap::units
