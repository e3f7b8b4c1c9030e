#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ahsc/ode.hpp"
#include "ahsc/radial.hpp"

using namespace ahsc;

namespace {

double rel_err(cplx got, cplx want) {
    return std::abs(got - want) / std::abs(want);
}

// Connection-coefficient closed form for the background mode eigenvalues,
// S_k = 2^{1-2 zeta} [Gamma(1/2-zeta)/Gamma(zeta-1/2)]
//       Gamma(zeta+|k|)/Gamma(1-zeta+|k|), in the x = 2 e^{-r} gauge.
cplx mode_oracle(cplx zeta, int k) {
    double ak = std::abs(k);
    return std::pow(cplx(2.0), 1.0 - 2.0 * zeta) *
           std::exp(log_gamma(0.5 - zeta) - log_gamma(zeta - 0.5) +
                    log_gamma(zeta + ak) - log_gamma(1.0 - zeta + ak));
}

} // namespace

TEST_CASE("warp function shapes") {
    WarpFunction h = WarpFunction::hyperbolic();
    CHECK(h.phi(1.3) == doctest::Approx(std::sinh(1.3)).epsilon(1e-15));
    WarpFunction b = WarpFunction::bump(0.1, 2.0, 0.5);
    CHECK(b.phi(0.7) == doctest::Approx(std::sinh(0.7)).epsilon(1e-15)); // below support
    CHECK(b.phi(3.1) == doctest::Approx(std::sinh(3.1)).epsilon(1e-15)); // above support
    CHECK(b.phi(2.0) == doctest::Approx(1.1 * std::sinh(2.0)).epsilon(1e-15));
    // derivative consistency by central differences
    double fd = (b.phi(2.1 + 1e-6) - b.phi(2.1 - 1e-6)) / 2e-6;
    CHECK(b.dphi(2.1) == doctest::Approx(fd).epsilon(1e-8));
    CHECK_THROWS_AS(WarpFunction::bump(0.1, 0.4, 0.5), domain_error);
    CHECK_THROWS_AS(WarpFunction::bump(1.0, 2.0, 0.5), domain_error);
}

TEST_CASE("bdf normalization") {
    CHECK(normalize_bdf(WarpFunction::hyperbolic()) == 2.0);
    CHECK(normalize_bdf(WarpFunction::bump(0.1, 2.0, 0.5)) == 2.0);
    WarpFunction t3 = WarpFunction::tabulated([](double r) { return 3.0 * std::sinh(r); },
                                              [](double r) { return 3.0 * std::cosh(r); });
    CHECK(normalize_bdf(t3) == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    WarpFunction badw = WarpFunction::tabulated([](double r) { return std::exp(1.5 * r); },
                                                [](double r) { return 1.5 * std::exp(1.5 * r); });
    CHECK_THROWS_AS(normalize_bdf(badw), convergence_error);
}

TEST_CASE("mode equation coefficients") {
    SpectralParam p(1, cplx(0.5, 1.0));
    ModeODE ode = mode_ode_rhs(WarpFunction::hyperbolic(), 0, p);
    CHECK(ode.pcoef(1.7) == doctest::Approx(std::cosh(1.7) / std::sinh(1.7)).epsilon(1e-15));
    CHECK(std::abs(ode.qcoef(2.0) - p.zeta * (1.0 - p.zeta)) < 1e-15);
    // coefficients tend to the constant-coefficient equation at infinity
    CHECK(std::abs(ode.pcoef(30.0) - 1.0) < 1e-12);
    ModeODE ode3 = mode_ode_rhs(WarpFunction::hyperbolic(), 3, p);
    CHECK(std::abs(ode3.qcoef(25.0) - p.zeta * (1.0 - p.zeta)) < 1e-15);
}

TEST_CASE("regular solution near the center") {
    SpectralParam p(1, cplx(0.5, 1.0));
    auto s = regular_solution(WarpFunction::hyperbolic(), 0, p, {0.1});
    CHECK(rel_err(s[0].u, 1.0) < 5e-3);        // 1 + O(r^2)
    CHECK(std::abs(s[0].du) < 0.1);            // O(r) slope
    auto s5 = regular_solution(WarpFunction::hyperbolic(), 5, p, {0.1});
    CHECK(rel_err(s5[0].u, std::pow(0.1, 5)) < 1e-2);
}

TEST_CASE("wronskian constancy along the flow") {
    SpectralParam p(1, cplx(0.5, 2.0));
    WarpFunction w = WarpFunction::bump(0.1, 2.0, 0.5);
    ModeODE ode = mode_ode_rhs(w, 2, p);
    auto rhs = [&ode](double r, const State2& y) { return ode.rhs(r, y); };
    OdeOptions opt;
    opt.rel_tol = 1e-12;
    State2 u = {1.0, 0.0}, v = {0.0, 1.0};
    double r = 1.0;
    cplx w0 = w.phi(r) * (u[0] * v[1] - u[1] * v[0]);
    for (double rn : {2.0, 4.5, 9.0}) {
        u = integrate_ode(rhs, r, rn, u, opt);
        v = integrate_ode(rhs, r, rn, v, opt);
        r = rn;
        cplx wr = w.phi(r) * (u[0] * v[1] - u[1] * v[0]);
        CHECK(std::abs(wr - w0) < 1e-9 * std::abs(w0));
    }
}

TEST_CASE("jost germs against the pure-power asymptotics") {
    SpectralParam p(1, cplx(0.5, 2.0));
    double R = 20.0;
    JostPair j = jost_solutions(WarpFunction::hyperbolic(), 0, p, R, 4);
    double x = 2.0 * std::exp(-R);
    CHECK(rel_err(j.plus.u, std::pow(cplx(x), p.zeta)) < 1e-8);
    CHECK(rel_err(j.minus.u, std::pow(cplx(x), 1.0 - p.zeta)) < 1e-8);
    // Wronskian W(u_-, u_+) = (1 - 2 zeta) x
    cplx W = j.minus.u * j.plus.du - j.minus.du * j.plus.u;
    CHECK(rel_err(W, (1.0 - 2.0 * p.zeta) * x) < 1e-8);
}

TEST_CASE("jost truncation error shrinks with the series order") {
    SpectralParam p(1, cplx(0.5, 1.0));
    WarpFunction w = WarpFunction::hyperbolic();
    // germ truncation defect against a high-order reference at a radius
    // where x is not yet negligible
    JostPair ref = jost_solutions(w, 3, p, 4.0, 10);
    double d2 = std::abs(jost_solutions(w, 3, p, 4.0, 2).plus.u - ref.plus.u);
    double d4 = std::abs(jost_solutions(w, 3, p, 4.0, 4).plus.u - ref.plus.u);
    CHECK(d4 < d2);
    CHECK(d4 < 1e-4 * d2); // two extra orders in x^2 ~ 5e-4
}

TEST_CASE("jost resonance is an explicit error") {
    SpectralParam p(1, cplx(1.5, 0.0)); // 2 zeta - 1 = 2
    CHECK_THROWS_AS(jost_solutions(WarpFunction::hyperbolic(), 0, p, 12.0, 4), pole_error);
}

TEST_CASE("background modes match the connection-coefficient oracle") {
    // frozen values computed independently at high precision
    CHECK(rel_err(mode_oracle(cplx(0.5, 1.0), 0),
                  cplx(0.90107100770345, 0.43367157974242)) < 1e-13);
    CHECK(rel_err(mode_oracle(cplx(0.5, 1.0), 16),
                  cplx(-0.05137671027715, 0.99867934475541)) < 1e-13);
    CHECK(rel_err(mode_oracle(cplx(0.5, 2.0), 0),
                  cplx(0.47541321520457, -0.87976262412588)) < 1e-13);
    CHECK(rel_err(mode_oracle(cplx(0.5, 2.0), 16),
                  cplx(0.21383657610296, -0.97686944814574)) < 1e-13);
    WarpFunction w = WarpFunction::hyperbolic();
    for (cplx zeta : {cplx(0.5, 1.0), cplx(0.5, 2.0)}) {
        SpectralParam p(1, zeta);
        for (int k : {0, 1, 4, 16})
            CHECK(rel_err(scattering_mode(w, k, p), mode_oracle(zeta, k)) < 1e-8);
    }
}

TEST_CASE("zero-amplitude bump reproduces the background bit for bit") {
    SpectralParam p(1, cplx(0.5, 1.0));
    cplx a = scattering_mode(WarpFunction::hyperbolic(), 2, p);
    cplx b = scattering_mode(WarpFunction::bump(0.0, 2.0, 0.5), 2, p);
    CHECK(a == b);
}

TEST_CASE("functional equation per mode on a perturbed metric") {
    WarpFunction w = WarpFunction::bump(0.1, 2.0, 0.5);
    cplx zeta(0.5, 1.0);
    SpectralParam p(1, zeta), q(1, 1.0 - zeta);
    for (int k : {0, 3, 17, 32}) {
        cplx prod = scattering_mode(w, k, p) * scattering_mode(w, k, q);
        CHECK(std::abs(prod - 1.0) < 1e-8);
    }
}

TEST_CASE("mode conjugation symmetry") {
    WarpFunction w = WarpFunction::bump(0.1, 2.0, 0.5);
    SpectralParam p(1, cplx(0.5, 1.3)), pc(1, cplx(0.5, -1.3));
    for (int k : {0, 2, 9}) {
        CHECK(std::abs(scattering_mode(w, k, pc) - std::conj(scattering_mode(w, k, p))) <
              1e-10);
    }
}

TEST_CASE("matching radius independence") {
    WarpFunction w = WarpFunction::bump(0.1, 2.0, 0.5);
    SpectralParam p(1, cplx(0.5, 2.0));
    CHECK(std::abs(scattering_mode(w, 5, p, 12.0, 4) -
                   scattering_mode(w, 5, p, 14.0, 4)) < 1e-8);
}

TEST_CASE("tolerance refinement") {
    WarpFunction w = WarpFunction::bump(0.1, 2.0, 0.5);
    SpectralParam p(1, cplx(0.5, 2.0));
    CHECK(std::abs(scattering_mode(w, 4, p, 12.0, 4, 1e-8) -
                   scattering_mode(w, 4, p, 12.0, 4, 1e-11)) < 1e-6);
}

TEST_CASE("scattering matrix assembly") {
    WarpFunction w = WarpFunction::bump(0.1, 2.0, 0.5);
    SpectralParam p(1, cplx(0.5, 1.0));
    ModeScatteringData d = scattering_matrix(w, p, 6);
    CHECK(d.bdf_constant == 2.0);
    for (int k = 0; k <= 6; ++k) {
        CHECK(d.entries.at(-k) == d.entries.at(k));
        CHECK(std::abs(std::abs(d.entries.at(k)) - 1.0) < 1e-8); // unitarity
    }
    ModeScatteringData d0 = scattering_matrix(w, p, 0);
    CHECK(d0.entries.at(0) == scattering_mode(w, 0, p));
}

TEST_CASE("symbol ratios approach 1 at high modes") {
    SpectralParam p(1, cplx(0.5, 1.0));
    ModeScatteringData bg = scattering_matrix(WarpFunction::hyperbolic(), p, 16);
    SymbolRatioReport self = symbol_ratio(bg, bg);
    for (const auto& row : self.rows) CHECK(std::abs(row.ratio - 1.0) < 1e-15);
    ModeScatteringData d = scattering_matrix(WarpFunction::bump(0.1, 2.0, 0.5), p, 16);
    SymbolRatioReport rep = symbol_ratio(d, bg);
    CHECK(std::abs(rep.rows[16].ratio - 1.0) < std::abs(rep.rows[8].ratio - 1.0));
    CHECK(rep.decay_rate > 0.0);
    // first-order dependence on the bump amplitude at fixed high mode
    ModeScatteringData dh = scattering_matrix(WarpFunction::bump(0.05, 2.0, 0.5), p, 16);
    SymbolRatioReport reph = symbol_ratio(dh, bg);
    double ratio = std::abs(rep.rows[16].ratio - 1.0) / std::abs(reph.rows[16].ratio - 1.0);
    CHECK(ratio > 1.6);
    CHECK(ratio < 2.4);
}

TEST_CASE("expansion fit extracts the two boundary coefficients") {
    SpectralParam p(1, cplx(0.5, 1.0));
    WarpFunction w = WarpFunction::hyperbolic();
    ExpansionFit fit = expansion_fit(w, 0, p);
    // closed-form connection coefficients of the background k = 0 mode
    cplx zt = p.zeta;
    double rp = std::sqrt(std::numbers::pi);
    cplx A = std::exp(log_gamma(zt - 0.5)) * std::pow(cplx(2.0), zt - 1.0) /
             (rp * std::exp(log_gamma(zt)));
    cplx B = std::exp(log_gamma(0.5 - zt)) * std::pow(cplx(2.0), -zt) /
             (rp * std::exp(log_gamma(1.0 - zt)));
    CHECK(rel_err(fit.f, A) < 1e-7);
    CHECK(rel_err(fit.fp, B) < 1e-7);
    CHECK(fit.remainder_exponent >= 1.4);
    // two independent extraction paths agree
    WarpFunction wb = WarpFunction::bump(0.1, 2.0, 0.5);
    for (int k : {0, 3}) {
        ExpansionFit fb = expansion_fit(wb, k, p);
        CHECK(std::abs(fb.fp / fb.f - scattering_mode(wb, k, p)) < 1e-6);
        CHECK(fb.remainder_exponent >= 1.4);
    }
}

TEST_CASE("expansion fit window validation") {
    SpectralParam p(1, cplx(0.5, 1.0));
    WarpFunction w = WarpFunction::hyperbolic();
    CHECK_THROWS_AS(expansion_fit(w, 0, p, 1e-5, 2e-5), domain_error); // sub-period
    CHECK_THROWS_AS(expansion_fit(w, 0, p, 1e-4, 1e-6), domain_error);
}

TEST_CASE("deformation sweep basics") {
    SpectralParam p(1, cplx(0.5, 2.0));
    DeformationSweep s = deform_sweep(1.5, 0.5, p, 8, {0.0, 0.05, 0.1});
    CHECK(s.D[0] == 0.0);
    CHECK(s.D[1] > 0.0);
    CHECK(s.D[1] < s.D[2]);
    CHECK_THROWS_AS(deform_sweep(1.5, 0.5, p, 8, {0.05, 0.1}), domain_error);
}
