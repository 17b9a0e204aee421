#pragma once

// Small dense damped Newton used by the step solver and the static solves.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace fecap::detail {

template <int N>
using Vec = Eigen::Matrix<double, N, 1>;

template <int N>
struct NewtonResult {
    Vec<N> x;
    Vec<N> residual;  // scaled
    int iterations = 0;
    bool converged = false;
};

inline constexpr double kFdRelativeStep = 1e-7;
inline constexpr int kMaxDampingHalvings = 6;

/// `residual(x)` must return residuals already divided by their tolerances;
/// convergence is max |r_i| < 1.
template <int N, class Residual>
NewtonResult<N> damped_newton(Residual&& residual, Vec<N> x, int max_iters) {
    NewtonResult<N> out;
    Vec<N> r = residual(x);
    for (int it = 0; it <= max_iters; ++it) {
        if (!r.allFinite()) break;
        if (r.cwiseAbs().maxCoeff() < 1.0) {
            out.converged = true;
            out.iterations = it;
            break;
        }
        if (it == max_iters) {
            out.iterations = it;
            break;
        }

        Eigen::Matrix<double, N, N> jac;
        for (int j = 0; j < N; ++j) {
            const double h = kFdRelativeStep * std::max(std::abs(x[j]), 1.0);
            Vec<N> xp = x;
            xp[j] += h;
            jac.col(j) = (residual(xp) - r) / (xp[j] - x[j]);
        }
        const Vec<N> dx = jac.partialPivLu().solve(-r);
        if (!dx.allFinite()) break;

        const double norm0 = r.norm();
        double lambda = 1.0;
        Vec<N> x_try = x + dx;
        Vec<N> r_try = residual(x_try);
        for (int k = 0; k < kMaxDampingHalvings && !(r_try.allFinite() && r_try.norm() < norm0);
             ++k) {
            lambda *= 0.5;
            x_try = x + lambda * dx;
            r_try = residual(x_try);
        }
        x = x_try;
        r = r_try;
        out.iterations = it + 1;
    }
    out.x = x;
    out.residual = r;
    return out;
}

}  // namespace fecap::detail
