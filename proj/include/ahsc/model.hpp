#pragma once

// Exact hyperbolic model on the upper half space H^{n+1}: distance, the
// resolvent Green's function, the generalized eigenfunction, Poisson-type
// solutions with their boundary expansion, the model scattering symbol, and
// residual checks of the defining identities.

#include <functional>
#include <vector>

#include "ahsc/quadrature.hpp"
#include "ahsc/specfun.hpp"

namespace ahsc {

/// Interior point z = (x, y) of H^{n+1}, x > 0, y in R^n.
struct HalfSpacePoint {
    double x;
    std::vector<double> y;

    HalfSpacePoint(double x_, std::vector<double> y_) : x(x_), y(std::move(y_)) {
        if (!(x > 0.0)) throw domain_error("HalfSpacePoint: x must be > 0");
    }
    int n() const { return static_cast<int>(y.size()); }
};

/// Smooth compactly supported boundary datum on R^n: a callable together
/// with the radius outside of which it vanishes.
struct BoundaryFunction {
    std::function<double(const std::vector<double>&)> value;
    double support_radius;
};

/// Interior test function with analytically known derivatives: the value,
/// the flat Laplacian sum_i d^2 f / dz_i^2 over all n+1 coordinates, and
/// df/dx.  Supported in the Euclidean ball of the given radius about center.
struct InteriorTestFunction {
    std::function<double(const HalfSpacePoint&)> value;
    std::function<double(const HalfSpacePoint&)> euclid_lap;
    std::function<double(const HalfSpacePoint&)> dx;
    HalfSpacePoint center;
    double radius;
};

/// Gaussian bump exp(-|z - center|^2 / width^2) with analytic derivatives.
/// Effective support radius 7*width (values < 1e-21 beyond); the caller must
/// keep that ball inside x > 0.
InteriorTestFunction gaussian_bump(const HalfSpacePoint& center, double width);

/// Hyperbolic distance, cosh d = 1 + |z - z'|^2 / (2 x x').
double hyp_distance(const HalfSpacePoint& z, const HalfSpacePoint& zp);

/// Resolvent Green's function as a function of distance:
/// G_zeta(d) = c_zeta (cosh d/2)^{-2 zeta}
///             F(zeta, zeta-(n-1)/2; 2 zeta-n+1; (cosh d/2)^{-2}).
/// Rejects d < 1e-8 (on-diagonal singularity) rather than regularizing.
cplx green(const SpectralParam& p, double d);

/// Generalized eigenfunction E_zeta(z, y') = c_zeta [x / (x^2+|y-y'|^2)]^zeta.
cplx eigenfunction_E(const SpectralParam& p, const HalfSpacePoint& z,
                     const std::vector<double>& yp);

/// (Delta - zeta(n-zeta)) u at z by second-order central differences with
/// step h, where Delta = -x^2 sum_i d^2/dz_i^2 + (n-1) x d/dx.
cplx fd_eigen_residual(const SpectralParam& p,
                       const std::function<cplx(const HalfSpacePoint&)>& u,
                       const HalfSpacePoint& z, double h);

/// u(z) = 2^{2 zeta} (2 zeta - n) int E_zeta(z, y') f(y') dy'.  n = 1 only.
cplx poisson_solution(const SpectralParam& p, const BoundaryFunction& f,
                      const HalfSpacePoint& z, double abs_tol = 1e-10);

/// Model scattering symbol a(|xi|) = 2^{n-2 zeta}
/// Gamma(n/2-zeta)/Gamma(zeta-n/2) |xi|^{2 zeta - n}.
cplx model_symbol(const SpectralParam& p, double xi_norm);

struct WHatResult {
    cplx numeric;
    cplx predicted;
};

/// Fourier transform of W_x(w) = x^zeta / (|w|^2 + x^2)^zeta at radius |xi|
/// (convention f_hat(xi) = int f(w) e^{-i w.xi} dw), against the two-term
/// prediction pi^{n/2} [Gamma(zeta-n/2)/Gamma(zeta)] x^{n-zeta}
/// + pi^{n/2} [Gamma(n/2-zeta)/Gamma(zeta)] x^zeta (|xi|/2)^{2 zeta - n}.
WHatResult w_hat_asymptotics(const SpectralParam& p, double x, double xi_norm);

/// |green(n-zeta, d) - green(zeta, d)
///  - (2 zeta - n) 2^{2n} int E_zeta(z,y) E_{n-zeta}(z',y) dy|.
/// n = 1 or 2.
double resolvent_identity_residual(const SpectralParam& p,
                                   const HalfSpacePoint& z,
                                   const HalfSpacePoint& zp);

/// |int G_zeta(d(z,z')) [(Delta - zeta(n-zeta)) f](z') dg(z') - f(z)| with
/// polar quadrature about z.  n = 1 only.
double green_delta_residual(const SpectralParam& p,
                            const InteriorTestFunction& f,
                            const HalfSpacePoint& z);

} // namespace ahsc
