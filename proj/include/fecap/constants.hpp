#pragma once

namespace fecap {

/// CODATA 2018 exact/recommended values, SI units.
struct PhysicalConstants {
    static constexpr double k_B = 1.380649e-23;       // J/K
    static constexpr double h = 6.62607015e-34;       // J s
    static constexpr double q = 1.602176634e-19;      // C
    static constexpr double eps0 = 8.8541878128e-12;  // F/m
    static constexpr double m0 = 9.1093837015e-31;    // kg
};

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace fecap
