#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "fecap/device_params.hpp"

namespace fecap::units {

enum class Dimension {
    none,
    length,
    area,
    energy,
    field,
    charge_density,  // C/m^2
    number_density,  // 1/m^3
    potential,       // barrier heights, V (eV accepted as its equivalent)
    mobility,
    temperature,
    voltage,
    current,
    time,
    frequency,
};

/// si = value * scale + offset
struct Unit {
    std::string_view name;
    double scale;
    double offset = 0.0;
};

class UnitError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

std::string_view to_string(Dimension d);

/// Accepted spellings for a dimension, display unit first. "" means
/// dimensionless.
std::span<const Unit> units_for(Dimension d);

/// Rewrites micro signs to 'u' and the degree sign prefix of degC to nothing.
std::string normalize_unit(std::string_view unit);

/// An empty unit means SI only for dimensionless quantities; otherwise
/// UnitError.
double to_si(double value, std::string_view unit, Dimension d);
double from_si(double si, std::string_view unit, Dimension d);

/// Display unit used in printed tables.
std::string_view display_unit(Dimension d);

/// Unit with scale 1 and no offset ("" for dimensionless).
std::string_view si_unit(Dimension d);

Dimension param_dimension(Param p);

}  // namespace fecap::units
