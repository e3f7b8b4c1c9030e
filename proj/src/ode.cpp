#include "ahsc/ode.hpp"

#include <algorithm>
#include <cmath>

namespace ahsc {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// 4th-order embedded weights
constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                 e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;

State2 axpy(const State2& y, double h, const State2& k) {
    return {y[0] + h * k[0], y[1] + h * k[1]};
}

} // namespace

State2 integrate_ode(const std::function<State2(double, const State2&)>& f,
                     double r0, double r1, State2 y0, const OdeOptions& opt) {
    if (!(r1 > r0)) throw domain_error("integrate_ode: need r1 > r0");
    double r = r0, h = std::min(opt.initial_step, r1 - r0);
    State2 y = y0;
    State2 k1 = f(r, y);
    for (long step = 0; step < opt.max_steps; ++step) {
        if (r >= r1) return y;
        h = std::min(h, r1 - r);
        State2 k2 = f(r + c2 * h, axpy(y, h * a21, k1));
        State2 k3 = f(r + c3 * h, {y[0] + h * (a31 * k1[0] + a32 * k2[0]),
                                   y[1] + h * (a31 * k1[1] + a32 * k2[1])});
        State2 k4 = f(r + c4 * h, {y[0] + h * (a41 * k1[0] + a42 * k2[0] + a43 * k3[0]),
                                   y[1] + h * (a41 * k1[1] + a42 * k2[1] + a43 * k3[1])});
        State2 k5 = f(r + c5 * h,
                      {y[0] + h * (a51 * k1[0] + a52 * k2[0] + a53 * k3[0] + a54 * k4[0]),
                       y[1] + h * (a51 * k1[1] + a52 * k2[1] + a53 * k3[1] + a54 * k4[1])});
        State2 k6 = f(r + h, {y[0] + h * (a61 * k1[0] + a62 * k2[0] + a63 * k3[0] +
                                          a64 * k4[0] + a65 * k5[0]),
                              y[1] + h * (a61 * k1[1] + a62 * k2[1] + a63 * k3[1] +
                                          a64 * k4[1] + a65 * k5[1])});
        State2 y5 = {y[0] + h * (b1 * k1[0] + b3 * k3[0] + b4 * k4[0] + b5 * k5[0] + b6 * k6[0]),
                     y[1] + h * (b1 * k1[1] + b3 * k3[1] + b4 * k4[1] + b5 * k5[1] + b6 * k6[1])};
        State2 k7 = f(r + h, y5);
        double err = 0.0;
        for (int i = 0; i < 2; ++i) {
            cplx y4 = y[i] + h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                  e6 * k6[i] + e7 * k7[i]);
            double sc = opt.abs_tol +
                        opt.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
            err = std::max(err, std::abs(y5[i] - y4) / sc);
        }
        if (err <= 1.0) {
            r += h;
            y = y5;
            k1 = k7; // FSAL
        }
        double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
        h *= std::clamp(fac, 0.2, 5.0);
        if (h < opt.min_step)
            throw convergence_error("integrate_ode: step size underflow at r = " +
                                    std::to_string(r));
    }
    throw convergence_error("integrate_ode: step budget exhausted");
}

} // namespace ahsc
