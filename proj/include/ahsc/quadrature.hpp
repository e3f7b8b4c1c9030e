#pragma once

// Adaptive quadrature helpers shared by the model-kernel checks: a
// Gauss-Kronrod 7-15 rule with interval bisection, a rational map for
// integrals over the whole real line, and a half-period + repeated-averaging
// scheme for slowly decaying oscillatory integrands.

#include <complex>
#include <functional>

#include "ahsc/errors.hpp"

namespace ahsc {

using cplx = std::complex<double>;

struct QuadResult {
    cplx value;
    double err_est = 0.0;
    long evals = 0;
};

/// Adaptive Gauss-Kronrod 7-15 on a finite interval [a, b].  Bisects the
/// worst interval until the summed error estimate falls below
/// max(abs_tol, rel_tol * |value|); throws convergence_error past max_evals.
QuadResult integrate(const std::function<cplx(double)>& f, double a, double b,
                     double rel_tol = 1e-12, double abs_tol = 1e-300,
                     long max_evals = 2000000);

/// Integral over (-inf, inf) via the substitution w = t / (1 - t^2) on
/// (-1, 1), then the finite-interval rule above.
QuadResult integrate_line(const std::function<cplx(double)>& f,
                          double rel_tol = 1e-12, double abs_tol = 1e-300,
                          long max_evals = 2000000);

/// Oscillatory integral  int_0^inf f(w) e^{-i w xi} dw  (plus the mirror
/// leg if two_sided) where |f| decays only algebraically.  Integrates over
/// consecutive half-periods of length pi/|xi| and accelerates the sequence
/// of partial sums by repeated averaging (Euler transformation).
QuadResult integrate_oscillatory(const std::function<cplx(double)>& f,
                                 double xi, bool two_sided,
                                 int half_periods = 60, int averaging = 30,
                                 double rel_tol = 1e-12);

} // namespace ahsc
