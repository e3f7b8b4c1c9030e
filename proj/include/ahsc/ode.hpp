#pragma once

// Adaptive Dormand-Prince 5(4) integrator for a two-component complex state,
// which is all the radial module needs (value and derivative of a mode).

#include <array>
#include <complex>
#include <functional>

#include "ahsc/errors.hpp"

namespace ahsc {

using cplx = std::complex<double>;
using State2 = std::array<cplx, 2>;

struct OdeOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double initial_step = 1e-3;
    double min_step = 1e-14;
    long max_steps = 2000000;
};

/// Integrates y' = f(r, y) from r0 to r1 (r1 > r0) and returns y(r1).
/// Throws convergence_error when the step controller stalls below min_step
/// or the step budget runs out.
State2 integrate_ode(const std::function<State2(double, const State2&)>& f,
                     double r0, double r1, State2 y0,
                     const OdeOptions& opt = {});

} // namespace ahsc
