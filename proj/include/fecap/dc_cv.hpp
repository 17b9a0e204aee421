#pragma once

#include <stdexcept>
#include <vector>

#include "fecap/device_params.hpp"
#include "fecap/solver.hpp"
#include "fecap/waveform.hpp"

namespace fecap {

struct DcPoint {
    double v = 0.0;       // applied bias, V
    double i = 0.0;       // terminal current, A
    double v_fe = 0.0;
    double v_int = 0.0;
    double p = 0.0;       // stationary up-state probability at the solution
};

class DcFailure : public std::runtime_error {
public:
    DcFailure(const std::string& what, double bias) : std::runtime_error(what), bias_(bias) {}
    [[nodiscard]] double bias() const { return bias_; }

private:
    double bias_;
};

/// Static series solution at one bias: capacitor currents zero, p at its
/// stationary value, PF current through the ferroelectric equal to the FN
/// current through the interface. Throws DcFailure.
DcPoint dc_operating_point(const DeviceParams& params, double v_bias);

/// n_points evenly spaced biases from v_start to v_stop inclusive.
std::vector<DcPoint> dc_sweep(const DeviceParams& params, double v_start, double v_stop,
                              int n_points);

struct CvPoint {
    double t = 0.0;
    double v_bias = 0.0;
    double c = 0.0;  // F per device
};

/// Small-signal capacitance at a recorded operating point with frozen p:
/// central difference of the interface electrode charge C_int V_int under
/// +-delta_v, the probe splitting by series charge equality. Returns F per
/// device.
double small_signal_capacitance(const DeviceParams& params, const TimeSample& op, double delta_v);

/// Runs the bias waveform through run_transient and probes every recorded
/// row.
std::vector<CvPoint> small_signal_cv(const DeviceParams& params, const Waveform& bias_waveform,
                                     double delta_v, const SolverConfig& config);

/// Analytic series combination of three capacitances (per area).
double series_capacitance(double c1, double c2, double c3);

}  // namespace fecap
