#include "ahsc/model.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace ahsc {

namespace {

constexpr double kPi = std::numbers::pi;

double euclid_dist2(const HalfSpacePoint& z, const HalfSpacePoint& zp) {
    double s = (z.x - zp.x) * (z.x - zp.x);
    for (size_t i = 0; i < z.y.size(); ++i) {
        double d = z.y[i] - zp.y[i];
        s += d * d;
    }
    return s;
}

} // namespace

double hyp_distance(const HalfSpacePoint& z, const HalfSpacePoint& zp) {
    if (z.y.size() != zp.y.size())
        throw domain_error("hyp_distance: dimension mismatch");
    // sinh(d/2) = sqrt(|z-z'|^2 / (4 x x')); stable for nearby points.
    double s = std::sqrt(euclid_dist2(z, zp) / (4.0 * z.x * zp.x));
    return 2.0 * std::asinh(s);
}

cplx green(const SpectralParam& p, double d) {
    if (!(d > 0.0)) throw domain_error("green: d must be > 0");
    if (d < 1e-8) throw domain_error("green: d below the on-diagonal cutoff 1e-8");
    cplx z = p.zeta;
    cplx c = 2.0 * z - cplx(p.n) + 1.0;
    if (near_nonpositive_integer(c))
        throw pole_error("green: hypergeometric c parameter at a pole");
    double ch = std::cosh(0.5 * d);
    double u = 1.0 / (ch * ch);
    cplx F = hyp2f1(z, z - 0.5 * (p.n - 1), c, u);
    return c_zeta(p) * std::pow(cplx(ch), -2.0 * z) * F;
}

cplx eigenfunction_E(const SpectralParam& p, const HalfSpacePoint& z,
                     const std::vector<double>& yp) {
    if (z.y.size() != yp.size())
        throw domain_error("eigenfunction_E: dimension mismatch");
    double r2 = 0.0;
    for (size_t i = 0; i < yp.size(); ++i) {
        double d = z.y[i] - yp[i];
        r2 += d * d;
    }
    double base = z.x / (z.x * z.x + r2);
    return c_zeta(p) * std::pow(cplx(base), p.zeta);
}

cplx fd_eigen_residual(const SpectralParam& p,
                       const std::function<cplx(const HalfSpacePoint&)>& u,
                       const HalfSpacePoint& z, double h) {
    int n = z.n();
    cplx u0 = u(z);
    HalfSpacePoint zp = z, zm = z;
    zp.x += h;
    zm.x -= h;
    if (!(zm.x > 0.0)) throw domain_error("fd_eigen_residual: step reaches the boundary");
    cplx flat = (u(zp) - 2.0 * u0 + u(zm)) / (h * h);
    cplx dux = (u(zp) - u(zm)) / (2.0 * h);
    for (int i = 0; i < n; ++i) {
        HalfSpacePoint yp = z, ym = z;
        yp.y[i] += h;
        ym.y[i] -= h;
        flat += (u(yp) - 2.0 * u0 + u(ym)) / (h * h);
    }
    cplx lap = -z.x * z.x * flat + cplx(n - 1) * z.x * dux;
    return lap - p.eigenvalue() * u0;
}

cplx poisson_solution(const SpectralParam& p, const BoundaryFunction& f,
                      const HalfSpacePoint& z, double abs_tol) {
    if (p.n != 1 || z.n() != 1)
        throw domain_error("poisson_solution: only n = 1 is implemented");
    double R = f.support_radius;
    auto integrand = [&](double yp) -> cplx {
        double fv = f.value({yp});
        if (fv == 0.0) return 0.0;
        return eigenfunction_E(p, z, {yp}) * fv;
    };
    QuadResult q = integrate(integrand, -R, R, 1e-9, abs_tol, 5000000);
    cplx pref = std::pow(cplx(2.0), 2.0 * p.zeta) * (2.0 * p.zeta - cplx(p.n));
    return pref * q.value;
}

cplx model_symbol(const SpectralParam& p, double xi_norm) {
    if (!(xi_norm > 0.0)) throw domain_error("model_symbol: |xi| must be > 0");
    cplx z = p.zeta;
    cplx half_n = cplx(p.n) / 2.0;
    if (near_nonpositive_integer(half_n - z) || near_nonpositive_integer(z - half_n))
        throw pole_error("model_symbol: Gamma argument at a pole");
    return std::pow(cplx(2.0), cplx(p.n) - 2.0 * z) *
           std::exp(log_gamma(half_n - z) - log_gamma(z - half_n)) *
           std::pow(cplx(xi_norm), 2.0 * z - cplx(p.n));
}

namespace {

// Half-period partial sums accelerated by repeated averaging, for a radial
// integrand oscillating with asymptotic period pi/xi.
cplx averaged_tail(const std::function<cplx(double)>& h, double xi,
                   int half_periods, int averaging) {
    double step = kPi / xi;
    std::vector<cplx> partial;
    partial.reserve(half_periods);
    cplx running = 0.0;
    for (int m = 0; m < half_periods; ++m) {
        QuadResult q = integrate(h, m * step, (m + 1) * step, 1e-12, 1e-300, 200000);
        running += q.value;
        partial.push_back(running);
    }
    for (int pass = 0; pass < averaging && partial.size() > 1; ++pass) {
        for (size_t i = 0; i + 1 < partial.size(); ++i)
            partial[i] = 0.5 * (partial[i] + partial[i + 1]);
        partial.pop_back();
    }
    return partial.back();
}

} // namespace

WHatResult w_hat_asymptotics(const SpectralParam& p, double x, double xi_norm) {
    if (!(x > 0.0) || !(xi_norm > 0.0))
        throw domain_error("w_hat_asymptotics: x and |xi| must be > 0");
    cplx z = p.zeta;
    cplx numeric;
    if (p.n == 1) {
        auto W = [&](double w) -> cplx {
            return std::pow(cplx(x), z) * std::pow(cplx(w * w + x * x), -z);
        };
        numeric = integrate_oscillatory(W, xi_norm, /*two_sided=*/true).value;
    } else {
        // radial transform: (2 pi)^{n/2} xi^{1-n/2} int W(r) J_{n/2-1}(r xi) r^{n/2} dr
        double nu = 0.5 * p.n - 1.0;
        auto h = [&](double r) -> cplx {
            cplx W = std::pow(cplx(x), z) * std::pow(cplx(r * r + x * x), -z);
            return W * std::cyl_bessel_j(nu, r * xi_norm) * std::pow(r, 0.5 * p.n);
        };
        numeric = std::pow(2.0 * kPi, 0.5 * p.n) * std::pow(xi_norm, 1.0 - 0.5 * p.n) *
                  averaged_tail(h, xi_norm, 60, 30);
    }
    cplx half_n = cplx(p.n) / 2.0;
    cplx t1 = std::exp(log_gamma(z - half_n) - log_gamma(z)) * std::pow(cplx(x), cplx(p.n) - z);
    cplx t2 = std::exp(log_gamma(half_n - z) - log_gamma(z)) * std::pow(cplx(x), z) *
              std::pow(cplx(0.5 * xi_norm), 2.0 * z - cplx(p.n));
    cplx predicted = std::pow(kPi, 0.5 * p.n) * (t1 + t2);
    return {numeric, predicted};
}

double resolvent_identity_residual(const SpectralParam& p,
                                   const HalfSpacePoint& z,
                                   const HalfSpacePoint& zp) {
    if (p.n != 1 && p.n != 2)
        throw domain_error("resolvent_identity_residual: n must be 1 or 2");
    SpectralParam q(p.n, cplx(p.n) - p.zeta);
    double d = hyp_distance(z, zp);
    cplx lhs = green(q, d) - green(p, d);
    cplx corr;
    if (p.n == 1) {
        auto integrand = [&](double y) -> cplx {
            return eigenfunction_E(p, z, {y}) * eigenfunction_E(q, zp, {y});
        };
        corr = integrate_line(integrand, 1e-10).value;
    } else {
        auto inner = [&](double y1) -> cplx {
            auto g = [&](double y2) -> cplx {
                return eigenfunction_E(p, z, {y1, y2}) * eigenfunction_E(q, zp, {y1, y2});
            };
            return integrate_line(g, 1e-9).value;
        };
        corr = integrate_line(inner, 1e-8).value;
    }
    cplx factor = (2.0 * p.zeta - cplx(p.n)) * std::pow(2.0, 2 * p.n);
    return std::abs(lhs - factor * corr);
}

InteriorTestFunction gaussian_bump(const HalfSpacePoint& center, double width) {
    if (!(width > 0.0)) throw domain_error("gaussian_bump: width must be > 0");
    double w2 = width * width;
    int dim = center.n() + 1;
    auto val = [center, w2](const HalfSpacePoint& z) -> double {
        return std::exp(-euclid_dist2(z, center) / w2);
    };
    auto lap = [center, w2, dim](const HalfSpacePoint& z) -> double {
        double r2 = euclid_dist2(z, center);
        return (4.0 * r2 / (w2 * w2) - 2.0 * dim / w2) * std::exp(-r2 / w2);
    };
    auto ddx = [center, w2](const HalfSpacePoint& z) -> double {
        return -2.0 * (z.x - center.x) / w2 * std::exp(-euclid_dist2(z, center) / w2);
    };
    return {val, lap, ddx, center, 7.0 * width};
}

double green_delta_residual(const SpectralParam& p,
                            const InteriorTestFunction& f,
                            const HalfSpacePoint& z) {
    if (p.n != 1 || z.n() != 1)
        throw domain_error("green_delta_residual: only n = 1 is implemented");
    cplx s = p.eigenvalue();
    double rho_max = std::sqrt(euclid_dist2(z, f.center)) + f.radius;
    auto point = [&](double rho, double th) -> cplx {
        double xp = z.x + rho * std::cos(th);
        double yp = z.y[0] + rho * std::sin(th);
        if (!(xp > 0.0)) return 0.0;
        HalfSpacePoint w(xp, {yp});
        if (euclid_dist2(w, f.center) > f.radius * f.radius) return 0.0;
        double d = hyp_distance(z, w);
        if (d < 1e-8) return 0.0;
        cplx op_f = -xp * xp * f.euclid_lap(w) - s * f.value(w);
        return green(p, d) * op_f / (xp * xp);
    };
    auto ring = [&](double rho) -> cplx {
        cplx acc = integrate([&](double th) { return point(rho, th); },
                             0.0, 2.0 * kPi, 1e-7, 1e-13, 400000).value;
        return acc * rho;
    };
    QuadResult q = integrate(ring, 1e-9, rho_max, 1e-7, 1e-9, 4000000);
    return std::abs(q.value - f.value(z));
}

} // namespace ahsc
