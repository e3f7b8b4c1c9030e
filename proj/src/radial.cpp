#include "ahsc/radial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

namespace ahsc {

namespace {

double bump_psi(double u) {
    double s = 1.0 - u * u;
    if (s <= 0.0) return 0.0;
    return s * s * s * s;
}

double bump_dpsi(double u) {
    double s = 1.0 - u * u;
    if (s <= 0.0) return 0.0;
    return -8.0 * u * s * s * s;
}

} // namespace

WarpFunction WarpFunction::hyperbolic() {
    WarpFunction w;
    w.kind = Kind::exact_hyperbolic;
    return w;
}

WarpFunction WarpFunction::bump(double t, double r0, double sigma) {
    if (!(sigma > 0.0) || !(r0 - sigma > 0.0))
        throw domain_error("WarpFunction::bump: need sigma > 0 and r0 - sigma > 0");
    if (std::abs(t) >= 1.0)
        throw domain_error("WarpFunction::bump: |t| must be < 1 (positivity of phi)");
    WarpFunction w;
    w.kind = Kind::bump_perturbed;
    w.t = t;
    w.r0 = r0;
    w.sigma = sigma;
    return w;
}

WarpFunction WarpFunction::tabulated(std::function<double(double)> phi,
                                     std::function<double(double)> dphi) {
    WarpFunction w;
    w.kind = Kind::tabulated;
    w.phi_fn = std::move(phi);
    w.dphi_fn = std::move(dphi);
    return w;
}

double WarpFunction::phi(double r) const {
    switch (kind) {
        case Kind::exact_hyperbolic: return std::sinh(r);
        case Kind::bump_perturbed:
            return std::sinh(r) * (1.0 + t * bump_psi((r - r0) / sigma));
        default: return phi_fn(r);
    }
}

double WarpFunction::dphi(double r) const {
    switch (kind) {
        case Kind::exact_hyperbolic: return std::cosh(r);
        case Kind::bump_perturbed: {
            double u = (r - r0) / sigma;
            return std::cosh(r) * (1.0 + t * bump_psi(u)) +
                   std::sinh(r) * t * bump_dpsi(u) / sigma;
        }
        default: return dphi_fn(r);
    }
}

double WarpFunction::unperturbed_below() const {
    switch (kind) {
        case Kind::exact_hyperbolic: return std::numeric_limits<double>::infinity();
        case Kind::bump_perturbed: return t == 0.0 ? std::numeric_limits<double>::infinity()
                                                   : r0 - sigma;
        default: return 0.0;
    }
}

double WarpFunction::unperturbed_above() const {
    switch (kind) {
        case Kind::exact_hyperbolic: return 0.0;
        case Kind::bump_perturbed: return t == 0.0 ? 0.0 : r0 + sigma;
        default: return std::numeric_limits<double>::infinity();
    }
}

double normalize_bdf(const WarpFunction& w) {
    if (w.kind != WarpFunction::Kind::tabulated) return 2.0;
    // C = 2 / lim phi(r) 2 e^{-r}; probe the limit on a fixed window.
    double prev = w.phi(20.0) * 2.0 * std::exp(-20.0);
    for (double r = 24.0; r <= 40.0; r += 4.0) {
        double cur = w.phi(r) * 2.0 * std::exp(-r);
        if (std::abs(cur - prev) <= 1e-10 * std::abs(cur)) return 2.0 / cur;
        prev = cur;
    }
    throw convergence_error("normalize_bdf: phi / sinh r does not stabilize by r = 40");
}

double ModeODE::pcoef(double r) const { return w.dphi(r) / w.phi(r); }

cplx ModeODE::qcoef(double r) const {
    double ph = w.phi(r);
    return p.zeta * (1.0 - p.zeta) - cplx(static_cast<double>(k) * k) / (ph * ph);
}

State2 ModeODE::rhs(double r, const State2& y) const {
    return {y[1], -pcoef(r) * y[1] - qcoef(r) * y[0]};
}

ModeODE mode_ode_rhs(const WarpFunction& w, int k, const SpectralParam& p) {
    if (p.n != 1) throw domain_error("mode_ode_rhs: only n = 1 is supported");
    return ModeODE{w, std::abs(k), p};
}

namespace {

// Frobenius germ of the solution u ~ r^{k}(1 + O(r^2)) of the exact
// hyperbolic equation at a small radius r_s, with the overall factor r_s^{k}
// divided out (the caller multiplies it back where absolute values matter).
// Recursion from sinh^2(r) u'' + sinh(r)cosh(r) u' + (s sinh^2(r) - k^2) u = 0.
SolutionGerm frobenius_germ(int k, const SpectralParam& p, double r_s) {
    cplx s = p.zeta * (1.0 - p.zeta);
    const int max_terms = 80;
    // power-series coefficients of sinh^2 and sinh*cosh
    std::vector<double> alpha(max_terms + 2, 0.0), beta(max_terms + 2, 0.0);
    double fact = 1.0; // (2m)! running
    for (int mm = 1; mm <= max_terms + 1; ++mm) {
        fact *= (2.0 * mm - 1.0) * (2.0 * mm);
        alpha[mm] = std::pow(2.0, 2 * mm - 1) / fact;
        beta[mm - 1] = std::pow(2.0, 2 * (mm - 1)) * (2.0 * mm) / fact;
    }
    std::vector<cplx> b(max_terms + 1);
    b[0] = 1.0;
    cplx u = 0.0, du = 0.0;
    double rpow = 1.0; // r_s^{2j}
    for (int j = 0; j <= max_terms; ++j) {
        if (j > 0) {
            cplx acc = 0.0;
            for (int i = 0; i < j; ++i) {
                double ki = k + 2.0 * i;
                acc += (alpha[j - i + 1] * ki * (ki - 1.0) + beta[j - i] * ki +
                        s * alpha[j - i]) * b[i];
            }
            b[j] = -acc / (4.0 * j * (j + static_cast<double>(k)));
        }
        cplx term = b[j] * rpow;
        u += term;
        du += b[j] * (k + 2.0 * j) * rpow / r_s;
        if (j > 2 && std::abs(term) < 1e-17 * std::abs(u)) return {u, du};
        rpow *= r_s * r_s;
    }
    throw convergence_error("frobenius_germ: series did not settle");
}

double seed_radius(const WarpFunction& w) {
    double rs = 0.1;
    double lim = w.unperturbed_below();
    if (rs >= lim) rs = 0.5 * lim;
    if (!(rs > 0.0))
        throw domain_error("seed radius: perturbation reaches the center");
    return rs;
}

SolutionGerm propagate(const ModeODE& ode, SolutionGerm g, double r_from,
                       double r_to, double rel_tol) {
    if (r_to <= r_from) return g;
    OdeOptions opt;
    opt.rel_tol = rel_tol;
    opt.abs_tol = 0.0; // pure relative control; solution scale varies widely
    State2 y = integrate_ode([&ode](double r, const State2& s) { return ode.rhs(r, s); },
                             r_from, r_to, {g.u, g.du}, opt);
    return {y[0], y[1]};
}

} // namespace

std::vector<SolutionGerm> regular_solution(const WarpFunction& w, int k,
                                           const SpectralParam& p,
                                           const std::vector<double>& r_grid,
                                           double rel_tol) {
    if (!std::is_sorted(r_grid.begin(), r_grid.end()) || r_grid.empty() ||
        !(r_grid.front() > 0.0))
        throw domain_error("regular_solution: grid must be increasing and positive");
    ModeODE ode = mode_ode_rhs(w, k, p);
    double rs = seed_radius(w);
    SolutionGerm g = frobenius_germ(ode.k, p, rs);
    double scale = std::pow(rs, ode.k); // undo the seed normalization
    std::vector<SolutionGerm> out;
    double r_cur = rs;
    for (double r : r_grid) {
        if (r < rs)
            throw domain_error("regular_solution: grid point below the seed radius");
        g = propagate(ode, g, r_cur, r, rel_tol);
        r_cur = r;
        out.push_back({g.u * scale, g.du * scale});
    }
    return out;
}

JostPair jost_solutions(const WarpFunction& w, int k, const SpectralParam& p,
                        double R, int m) {
    if (p.n != 1) throw domain_error("jost_solutions: only n = 1 is supported");
    if (m < 0) throw domain_error("jost_solutions: m must be >= 0");
    if (R <= w.unperturbed_above())
        throw domain_error("jost_solutions: R must lie beyond the perturbation");
    double C = normalize_bdf(w);
    double x = C * std::exp(-R);
    cplx s = p.zeta * (1.0 - p.zeta);
    double k2 = static_cast<double>(std::abs(k)) * std::abs(k);
    auto germ = [&](cplx e) -> SolutionGerm {
        std::vector<cplx> c(m + 1);
        c[0] = 1.0;
        for (int j = 1; j <= m; ++j) {
            cplx mj = e + 2.0 * j;
            cplx den = 16.0 * (mj * mj - mj + s);
            if (std::abs(den) < 1e-10)
                throw pole_error("jost_solutions: resonant recursion (2 zeta - 1 is an "
                                 "even nonzero integer)");
            cplx mj1 = mj - 2.0, mj2 = mj - 4.0;
            cplx num = 8.0 * (mj1 * mj1 + s + 2.0 * k2) * c[j - 1];
            if (j >= 2) num -= (mj2 * mj2 + mj2 + s) * c[j - 2];
            c[j] = num / den;
        }
        cplx u = 0.0, du = 0.0;
        for (int j = 0; j <= m; ++j) {
            cplx mj = e + 2.0 * j;
            cplx xp = std::pow(cplx(x), mj);
            u += c[j] * xp;
            du += -mj * c[j] * xp; // d/dr = -x d/dx
        }
        return {u, du};
    };
    return {germ(p.zeta), germ(1.0 - p.zeta)};
}

namespace {

cplx wronskian(const SolutionGerm& f, const SolutionGerm& g) {
    return f.u * g.du - f.du * g.u;
}

} // namespace

cplx scattering_mode(const WarpFunction& w, int k, const SpectralParam& p,
                     double R, int m, double rel_tol) {
    p.require_regular();
    ModeODE ode = mode_ode_rhs(w, k, p);
    double rs = seed_radius(w);
    SolutionGerm reg = propagate(ode, frobenius_germ(ode.k, p, rs), rs, R, rel_tol);
    JostPair jost = jost_solutions(w, k, p, R, m);
    cplx wmp = wronskian(jost.minus, jost.plus);
    double jscale = std::abs(jost.minus.u) * std::abs(jost.plus.du) +
                    std::abs(jost.minus.du) * std::abs(jost.plus.u);
    if (std::abs(wmp) < 1e-12 * jscale)
        throw convergence_error("scattering_mode: matching Wronskian near singular");
    cplx A = wronskian(reg, jost.plus) / wmp;
    cplx B = wronskian(reg, jost.minus) / -wmp;
    double ascale = (std::abs(reg.u) * std::abs(jost.plus.du) +
                     std::abs(reg.du) * std::abs(jost.plus.u)) / std::abs(wmp);
    if (std::abs(A) < 1e-10 * ascale)
        throw pole_error("scattering_mode: vanishing incoming coefficient (pole at this "
                         "(zeta, k))");
    return B / A;
}

ModeScatteringData scattering_matrix(const WarpFunction& w,
                                     const SpectralParam& p, int K,
                                     double R, int m, double rel_tol) {
    if (K < 0) throw domain_error("scattering_matrix: K must be >= 0");
    std::vector<cplx> vals(K + 1);
    std::vector<std::string> errs(K + 1);
    int threads = 1;
    if (const char* env = std::getenv("AHSC_THREADS")) {
        threads = std::max(1, std::atoi(env));
        threads = std::min(threads, K + 1);
    }
    auto work = [&](int lo, int hi) {
        for (int k = lo; k < hi; ++k) {
            try {
                vals[k] = scattering_mode(w, k, p, R, m, rel_tol);
            } catch (const std::exception& e) {
                errs[k] = e.what();
            }
        }
    };
    if (threads <= 1) {
        work(0, K + 1);
    } else {
        std::vector<std::thread> pool;
        int per = (K + threads) / threads;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back(work, t * per, std::min(K + 1, (t + 1) * per));
        for (auto& th : pool) th.join();
    }
    std::ostringstream bad;
    bool any_err = false, any_pole = false;
    for (int k = 0; k <= K; ++k) {
        if (!errs[k].empty()) {
            if (any_err) bad << "; ";
            bad << "mode " << k << ": " << errs[k];
            any_err = true;
            if (errs[k].find("pole") != std::string::npos) any_pole = true;
        }
    }
    if (any_err) {
        if (any_pole) throw pole_error("scattering_matrix: " + bad.str());
        throw convergence_error("scattering_matrix: " + bad.str());
    }
    ModeScatteringData d{p, K, {}, normalize_bdf(w)};
    for (int k = 0; k <= K; ++k) {
        d.entries[k] = vals[k];
        d.entries[-k] = vals[k];
    }
    return d;
}

namespace {

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    double n = static_cast<double>(xs.size());
    if (xs.size() < 2) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace

SymbolRatioReport symbol_ratio(const ModeScatteringData& d,
                               const ModeScatteringData& d0) {
    if (d.K != d0.K || d.param.n != d0.param.n || d.param.zeta != d0.param.zeta ||
        d.bdf_constant != d0.bdf_constant)
        throw domain_error("symbol_ratio: mismatched (zeta, K, bdf) between the inputs");
    SymbolRatioReport rep;
    std::vector<double> lx, ly;
    for (int k = 0; k <= d.K; ++k) {
        cplx s0 = d0.entries.at(k);
        SymbolRatioRow row{k, 0.0, false};
        if (std::abs(s0) < 1e-250) {
            row.degenerate = true;
        } else {
            row.ratio = d.entries.at(k) / s0;
        }
        if (!row.degenerate && k >= (d.K + 1) / 2) {
            double dev = std::abs(row.ratio - 1.0);
            rep.sup_upper_half = std::max(rep.sup_upper_half, dev);
            if (dev > 0.0 && k >= 1) {
                lx.push_back(std::log(static_cast<double>(k)));
                ly.push_back(std::log(dev));
            }
        }
        rep.rows.push_back(row);
    }
    rep.decay_rate = -fit_slope(lx, ly);
    return rep;
}

ExpansionFit expansion_fit(const WarpFunction& w, int k, const SpectralParam& p,
                           double x_lo, double x_hi, double rel_tol) {
    p.require_regular();
    if (!(0.0 < x_lo && x_lo < x_hi))
        throw domain_error("expansion_fit: need 0 < x_lo < x_hi");
    double im = std::abs(p.zeta.imag());
    if (im > 0.0 && std::log(x_hi / x_lo) * im < M_PI)
        throw domain_error("expansion_fit: window narrower than one oscillation period "
                           "of the critical-line exponents in log x");
    double C = normalize_bdf(w);
    double r_lo = std::log(C / x_hi);
    if (r_lo <= w.unperturbed_above())
        throw domain_error("expansion_fit: window reaches into the perturbed region");
    ModeODE ode = mode_ode_rhs(w, k, p);
    double rs = seed_radius(w);
    const int N = 48;
    std::vector<double> xs(N);
    for (int i = 0; i < N; ++i)
        xs[i] = x_hi * std::pow(x_lo / x_hi, i / double(N - 1)); // descending x
    SolutionGerm g = frobenius_germ(ode.k, p, rs);
    double r_cur = rs;
    std::vector<cplx> us(N);
    for (int i = 0; i < N; ++i) {
        double r = std::log(C / xs[i]);
        g = propagate(ode, g, r_cur, r, rel_tol);
        r_cur = r;
        us[i] = g.u;
    }
    // weighted least squares against x^{1-zeta}, x^{zeta}; rows scaled by
    // x^{-1/2} so both columns have unit-modulus entries on the critical line
    cplx g11 = 0, g12 = 0, g22 = 0, r1 = 0, r2 = 0;
    std::vector<cplx> b1(N), b2(N);
    for (int i = 0; i < N; ++i) {
        double wgt = std::pow(xs[i], -0.5);
        b1[i] = std::pow(cplx(xs[i]), 1.0 - p.zeta) * wgt;
        b2[i] = std::pow(cplx(xs[i]), p.zeta) * wgt;
        cplx ui = us[i] * wgt;
        g11 += std::conj(b1[i]) * b1[i];
        g12 += std::conj(b1[i]) * b2[i];
        g22 += std::conj(b2[i]) * b2[i];
        r1 += std::conj(b1[i]) * ui;
        r2 += std::conj(b2[i]) * ui;
    }
    // eigenvalues of the Hermitian Gram matrix give the squared condition
    double tr = g11.real() + g22.real();
    double det = (g11 * g22 - g12 * std::conj(g12)).real();
    double disc = std::sqrt(std::max(tr * tr - 4.0 * det, 0.0));
    double lmax = 0.5 * (tr + disc), lmin = 0.5 * (tr - disc);
    if (!(lmin > 0.0) || std::sqrt(lmax / lmin) > 1e8)
        throw convergence_error("expansion_fit: fit matrix condition number exceeds 1e8");
    cplx detc = g11 * g22 - g12 * std::conj(g12);
    cplx A = (g22 * r1 - g12 * r2) / detc;
    cplx B = (g11 * r2 - std::conj(g12) * r1) / detc;
    // remainder slope over the upper sub-decade, above the ODE noise floor
    std::vector<double> lx, ly;
    for (int i = 0; i < N; ++i) {
        if (xs[i] < x_hi / 10.0) break;
        cplx res = us[i] - (A * b1[i] + B * b2[i]) * std::pow(xs[i], 0.5);
        if (std::abs(res) > 0.0) {
            lx.push_back(std::log(xs[i]));
            ly.push_back(std::log(std::abs(res)));
        }
    }
    double scale = std::pow(rs, ode.k);
    return {A * scale, B * scale, fit_slope(lx, ly)};
}

DeformationSweep deform_sweep(double r0, double sigma, const SpectralParam& p,
                              int K, std::vector<double> t_values,
                              double R, int m, double rel_tol) {
    std::sort(t_values.begin(), t_values.end());
    if (std::find(t_values.begin(), t_values.end(), 0.0) == t_values.end())
        throw domain_error("deform_sweep: t_values must contain 0");
    DeformationSweep sweep;
    sweep.t_values = t_values;
    ModeScatteringData base = scattering_matrix(
        WarpFunction::hyperbolic(), p, K, R, m, rel_tol);
    for (double t : t_values) {
        ModeScatteringData d;
        try {
            d = t == 0.0 ? base
                         : scattering_matrix(WarpFunction::bump(t, r0, sigma), p, K, R,
                                             m, rel_tol);
        } catch (const pole_error& e) {
            throw pole_error("deform_sweep: pole crossing at t = " + std::to_string(t) +
                             ": " + e.what());
        }
        double D = 0.0;
        std::vector<cplx> row(K + 1);
        for (int k = 0; k <= K; ++k) {
            row[k] = d.entries.at(k);
            D = std::max(D, std::abs(row[k] - base.entries.at(k)));
        }
        sweep.D.push_back(D);
        sweep.modes.push_back(std::move(row));
    }
    // slope over the decade spanning the smallest nonzero t's
    double t_min = 0.0;
    for (double t : t_values)
        if (t > 0.0) {
            t_min = t;
            break;
        }
    std::vector<double> lx, ly;
    for (size_t i = 0; i < t_values.size(); ++i)
        if (t_values[i] > 0.0 && t_values[i] <= 10.0 * t_min && sweep.D[i] > 0.0) {
            lx.push_back(std::log(t_values[i]));
            ly.push_back(std::log(sweep.D[i]));
        }
    sweep.slope = fit_slope(lx, ly);
    return sweep;
}

} // namespace ahsc
