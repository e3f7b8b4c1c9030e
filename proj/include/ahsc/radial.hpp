#pragma once

// Mode-decomposed scattering matrix for rotationally symmetric surfaces
// g = dr^2 + phi(r)^2 dtheta^2 asymptotic to the hyperbolic plane: radial
// ODE solves, Frobenius/Jost matching, coefficient extraction from the
// boundary expansion, and deformation-continuity sweeps.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ahsc/ode.hpp"
#include "ahsc/specfun.hpp"

namespace ahsc {

/// Warp profile phi(r).  Exact hyperbolic is phi = sinh r; bump_perturbed is
/// phi = sinh(r) (1 + t psi(r)) with psi(u) = (1-u^2)^4, u = (r-r0)/sigma,
/// supported in [r0-sigma, r0+sigma]; tabulated wraps arbitrary callables.
struct WarpFunction {
    enum class Kind { exact_hyperbolic, bump_perturbed, tabulated };

    Kind kind = Kind::exact_hyperbolic;
    double t = 0.0, r0 = 2.0, sigma = 0.5;
    std::function<double(double)> phi_fn, dphi_fn; // tabulated only

    static WarpFunction hyperbolic();
    static WarpFunction bump(double t, double r0, double sigma);
    static WarpFunction tabulated(std::function<double(double)> phi,
                                  std::function<double(double)> dphi);

    double phi(double r) const;
    double dphi(double r) const;
    /// phi == sinh r exactly on (0, unperturbed_below()) and on
    /// (unperturbed_above(), infinity); +-infinity-like sentinels for
    /// tabulated data (0 and a large radius are reported conservatively).
    double unperturbed_below() const;
    double unperturbed_above() const;
};

/// C such that x = C e^{-r} normalizes the boundary circle to unit length.
double normalize_bdf(const WarpFunction& w);

/// The mode equation u'' + (phi'/phi) u' + (zeta(1-zeta) - k^2/phi^2) u = 0
/// as first-order system plus its raw coefficients.
struct ModeODE {
    WarpFunction w;
    int k = 0;
    SpectralParam p;

    double pcoef(double r) const;  // phi'/phi
    cplx qcoef(double r) const;    // zeta(1-zeta) - k^2/phi^2
    State2 rhs(double r, const State2& y) const;
};

ModeODE mode_ode_rhs(const WarpFunction& w, int k, const SpectralParam& p);

/// Value and r-derivative of a solution at one radius.
struct SolutionGerm {
    cplx u, du;
};

/// The center-regular solution u ~ r^{|k|} (1 + O(r^2)), leading Frobenius
/// coefficient 1, sampled on an increasing grid in (0, R].
std::vector<SolutionGerm> regular_solution(const WarpFunction& w, int k,
                                           const SpectralParam& p,
                                           const std::vector<double>& r_grid,
                                           double rel_tol = 1e-10);

struct JostPair {
    SolutionGerm plus;  // x^{zeta}   (1 + ...)
    SolutionGerm minus; // x^{1-zeta} (1 + ...)
};

/// Asymptotic germs u_± = x^{e}(1 + sum_{j<=m} c_j x^{2j}), x = C e^{-r},
/// evaluated at r = R, which must lie beyond the perturbation.  Throws
/// pole_error when 2 zeta - 1 is an even nonzero integer (resonant
/// recursion) and domain_error when R is inside the perturbed region.
JostPair jost_solutions(const WarpFunction& w, int k, const SpectralParam& p,
                        double R, int m);

/// Mode eigenvalue S_k = B/A from matching the regular solution against
/// A u_- + B u_+ at r = R.  A near zero is reported as a pole.
cplx scattering_mode(const WarpFunction& w, int k, const SpectralParam& p,
                     double R = 12.0, int m = 4, double rel_tol = 1e-10);

struct ModeScatteringData {
    SpectralParam param;
    int K = 0;
    std::map<int, cplx> entries; // k in [-K, K], S_{-k} = S_k
    double bdf_constant = 2.0;
};

/// All modes |k| <= K; modes are independent and may be computed in
/// parallel (AHSC_THREADS), results merged in sorted-k order.  Per-mode
/// failures are aggregated into one error naming the offending modes.
ModeScatteringData scattering_matrix(const WarpFunction& w,
                                     const SpectralParam& p, int K,
                                     double R = 12.0, int m = 4,
                                     double rel_tol = 1e-10);

struct SymbolRatioRow {
    int k = 0;
    cplx ratio;
    bool degenerate = false; // |S_k(g0)| below 1e-250, ratio meaningless
};

struct SymbolRatioReport {
    std::vector<SymbolRatioRow> rows; // k = 0..K
    double sup_upper_half = 0.0;      // sup_{k in [K/2, K]} |ratio - 1|
    double decay_rate = 0.0;          // b in |ratio - 1| ~ C k^{-b} on [K/2, K]
};

SymbolRatioReport symbol_ratio(const ModeScatteringData& d,
                               const ModeScatteringData& d0);

struct ExpansionFit {
    cplx f, fp;                      // coefficients of x^{1-zeta}, x^{zeta}
    double remainder_exponent = 0.0; // slope of log|residual| vs log x
};

/// Least-squares extraction of (f, f') from the regular solution on the
/// window x in [x_lo, x_hi] (inside the unperturbed region).  The window
/// must span one oscillation period pi/|Im zeta| in log x; a Gram-matrix
/// condition number above 1e8 is an error.
ExpansionFit expansion_fit(const WarpFunction& w, int k, const SpectralParam& p,
                           double x_lo = 1e-6, double x_hi = 1e-4,
                           double rel_tol = 1e-10);

struct DeformationSweep {
    std::vector<double> t_values;
    std::vector<double> D;                   // sup_{|k|<=K} |S_k(t) - S_k(0)|
    std::vector<std::vector<cplx>> modes;    // per t, S_k for k = 0..K
    double slope = 0.0;                      // log-log fit over [t_min, 10 t_min]
};

/// Sweeps the bump amplitude over t_values (must contain 0, sorted).
DeformationSweep deform_sweep(double r0, double sigma, const SpectralParam& p,
                              int K, std::vector<double> t_values,
                              double R = 12.0, int m = 4,
                              double rel_tol = 1e-10);

} // namespace ahsc
