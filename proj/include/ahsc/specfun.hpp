#pragma once

// Complex special functions used by every kernel formula: Gamma, the Gauss
// hypergeometric series on [0,1), and the resolvent normalization constant.

#include <complex>

#include "ahsc/errors.hpp"

namespace ahsc {

using cplx = std::complex<double>;

/// Boundary dimension n (dim X = n+1) and complex spectral parameter zeta.
/// The eigenvalue is written zeta*(n - zeta); the critical line is
/// Re zeta = n/2.
struct SpectralParam {
    int n = 1;
    cplx zeta{0.5, 1.0};

    SpectralParam() = default;
    SpectralParam(int n_, cplx zeta_) : n(n_), zeta(zeta_) {
        if (n < 1) throw domain_error("SpectralParam: n must be >= 1");
    }

    cplx eigenvalue() const { return zeta * (cplx(n) - zeta); }

    /// True when zeta lies in (n - N)/2 or equals n/2, the set excluded by
    /// the meromorphic continuation; operations that need a clean spectral
    /// parameter call require_regular().
    bool is_exceptional(double tol = 1e-12) const;
    void require_regular() const;
};

/// Complex Gamma via a Lanczos-type rational approximation, reflection for
/// Re z < 0.5.  Accurate to better than 1e-13 relative on |z| <= 50.
cplx gamma(cplx z);

/// Principal-branch log Gamma (same approximation, kept in log form so that
/// ratios of large Gamma values do not overflow).
cplx log_gamma(cplx z);

/// Digamma psi(z) = Gamma'(z)/Gamma(z): reflection for Re z < 0.5, upward
/// recurrence to Re z >= 10, then the Stirling series.
cplx digamma(cplx z);

/// Result of a hypergeometric evaluation: the value, a conservative bound on
/// the truncation error relative to |value|, and how many terms were summed.
struct Hyp2f1Result {
    cplx value;
    double err_est = 0.0;
    long terms = 0;
};

/// Gauss hypergeometric F(a,b;c;u) for real u in [0,1).
///
/// Direct Kahan-accumulated series; for u > 0.7 the u -> 1-u connection
/// formula is used, in its logarithmic form when c = a + b.  For other
/// integer values of c-a-b the direct series is kept, which is why callers
/// must stay off u = 1 there.  Exceeding max_terms raises convergence_error.
Hyp2f1Result hyp2f1_detail(cplx a, cplx b, cplx c, double u,
                           double tol = 1e-15, long max_terms = 100000);

cplx hyp2f1(cplx a, cplx b, cplx c, double u,
            double tol = 1e-15, long max_terms = 100000);

/// c_zeta = pi^{-n/2} 2^{-2 zeta - 1} Gamma(zeta) / Gamma(zeta - n/2 + 1),
/// the constant in front of the model resolvent kernel.
cplx c_zeta(const SpectralParam& p);

/// True when z is within tol of a nonpositive integer (a Gamma pole).
bool near_nonpositive_integer(cplx z, double tol = 1e-12);

} // namespace ahsc
