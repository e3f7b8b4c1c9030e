#include "ahsc/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ahsc {

namespace {

constexpr double kPi = std::numbers::pi;

// Godfrey's Lanczos coefficients, g = 607/128, 15 terms.  Relative error of
// the approximation is below 1e-15 on the right half plane.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczosCoef[15] = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

// Lanczos sum and log of the remaining factor, valid for Re z >= 0.5.
cplx lanczos_log_gamma(cplx z) {
    // computes log Gamma(z) for Re z >= 0.5
    cplx zm1 = z - 1.0;
    cplx sum = kLanczosCoef[0];
    for (int k = 1; k < 15; ++k) sum += kLanczosCoef[k] / (zm1 + cplx(k));
    cplx t = zm1 + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * kPi) + (zm1 + 0.5) * std::log(t) - t + std::log(sum);
}

} // namespace

bool near_nonpositive_integer(cplx z, double tol) {
    if (std::abs(z.imag()) > tol) return false;
    double r = std::round(z.real());
    return r <= 0.0 && std::abs(z.real() - r) <= tol;
}

bool SpectralParam::is_exceptional(double tol) const {
    // zeta = n/2 or zeta in (n - N)/2 <=> 2*zeta - n a nonpositive integer.
    return near_nonpositive_integer(2.0 * zeta - cplx(n), tol);
}

void SpectralParam::require_regular() const {
    if (is_exceptional())
        throw domain_error("SpectralParam: zeta in (n - N0)/2 is excluded");
}

cplx log_gamma(cplx z) {
    if (near_nonpositive_integer(z))
        throw pole_error("gamma: pole at nonpositive integer z");
    if (z.real() >= 0.5) return lanczos_log_gamma(z);
    // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z), in log form.
    // log sin(pi z) computed from the exponentially dominant part to avoid
    // overflow for large |Im z|.
    cplx lg1mz = lanczos_log_gamma(1.0 - z);
    cplx logsin;
    if (std::abs(z.imag()) < 20.0) {
        logsin = std::log(std::sin(kPi * z));
    } else {
        // sin(pi z) = (e^{i pi z} - e^{-i pi z}) / (2i)
        cplx ipz = cplx(0.0, 1.0) * kPi * z;
        if (z.imag() > 0)
            logsin = -ipz - std::log(cplx(0.0, 2.0)) + std::log(std::exp(2.0 * ipz) - 1.0);
        else
            logsin = ipz - std::log(cplx(0.0, -2.0)) + std::log(1.0 - std::exp(-2.0 * ipz));
    }
    return std::log(cplx(kPi)) - logsin - lg1mz;
}

cplx gamma(cplx z) {
    if (near_nonpositive_integer(z))
        throw pole_error("gamma: pole at nonpositive integer z");
    if (z.real() >= 0.5) {
        cplx zm1 = z - 1.0;
        cplx sum = kLanczosCoef[0];
        for (int k = 1; k < 15; ++k) sum += kLanczosCoef[k] / (zm1 + cplx(k));
        cplx t = zm1 + kLanczosG + 0.5;
        return std::sqrt(2.0 * kPi) * std::pow(t, zm1 + 0.5) * std::exp(-t) * sum;
    }
    return kPi / (std::sin(kPi * z) * gamma(1.0 - z));
}

cplx digamma(cplx z) {
    if (near_nonpositive_integer(z))
        throw pole_error("digamma: pole at nonpositive integer z");
    cplx result = 0.0;
    if (z.real() < 0.5) {
        result -= kPi / std::tan(kPi * z);
        z = 1.0 - z;
    }
    while (z.real() < 10.0) {
        result -= 1.0 / z;
        z += 1.0;
    }
    // Stirling series with Bernoulli-number coefficients
    cplx w = 1.0 / (z * z);
    cplx tail = w * (1.0 / 12.0 - w * (1.0 / 120.0 - w * (1.0 / 252.0 -
                w * (1.0 / 240.0 - w * (1.0 / 132.0 - w * 691.0 / 32760.0)))));
    return result + std::log(z) - 0.5 / z - tail;
}

namespace {

// Plain series with Kahan compensation.  Stops once two consecutive terms
// fall below tol * |sum|.
Hyp2f1Result series_2f1(cplx a, cplx b, cplx c, double u, double tol, long max_terms) {
    cplx sum = 1.0, comp = 0.0, term = 1.0;
    long small_streak = 0;
    for (long k = 0; k < max_terms; ++k) {
        term *= (a + cplx(k)) * (b + cplx(k)) / ((c + cplx(k)) * cplx(k + 1)) * u;
        cplx y = term - comp;
        cplx t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        double rel = std::abs(term) / std::max(std::abs(sum), 1e-300);
        if (rel < tol) {
            if (++small_streak >= 2) {
                // conservative geometric tail bound
                double q = std::min(u * (1.0 + (std::abs(a) + std::abs(b)) / (k + 2.0)), 0.999);
                return {sum, rel / (1.0 - q), k + 1};
            }
        } else {
            small_streak = 0;
        }
        if (term == cplx(0.0)) return {sum, 0.0, k + 1}; // terminating (polynomial) case
    }
    throw convergence_error("hyp2f1: series did not converge within " +
                            std::to_string(max_terms) + " terms");
}

bool near_integer(cplx z, double tol = 1e-10) {
    return std::abs(z.imag()) <= tol && std::abs(z.real() - std::round(z.real())) <= tol;
}

// Logarithmic connection formula for c = a + b:
// F(a,b;a+b;u) = [G(a+b)/(G(a)G(b))] sum_j [(a)_j (b)_j / (j!)^2]
//                (2 psi(j+1) - psi(a+j) - psi(b+j) - log v) v^j,  v = 1 - u.
Hyp2f1Result log_case_2f1(cplx a, cplx b, double u, double tol, long max_terms) {
    double v = 1.0 - u;
    double logv = std::log(v);
    cplx pa = digamma(a), pb = digamma(b), pj = digamma(cplx(1.0));
    cplx poch = 1.0; // (a)_j (b)_j / (j!)^2 * v^j
    cplx sum = 0.0, comp = 0.0;
    long small_streak = 0;
    for (long j = 0; j < max_terms; ++j) {
        cplx term = poch * (2.0 * pj - pa - pb - logv);
        cplx y = term - comp;
        cplx t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        double rel = std::abs(term) / std::max(std::abs(sum), 1e-300);
        if (rel < tol) {
            if (++small_streak >= 2) {
                cplx pref = std::exp(log_gamma(a + b) - log_gamma(a) - log_gamma(b));
                return {pref * sum, rel / (1.0 - v), j + 1};
            }
        } else {
            small_streak = 0;
        }
        double jd = static_cast<double>(j);
        poch *= (a + jd) * (b + jd) / ((jd + 1.0) * (jd + 1.0)) * v;
        pj += 1.0 / (jd + 1.0);
        pa += 1.0 / (a + jd);
        pb += 1.0 / (b + jd);
    }
    throw convergence_error("hyp2f1: logarithmic series did not converge within " +
                            std::to_string(max_terms) + " terms");
}

} // namespace

Hyp2f1Result hyp2f1_detail(cplx a, cplx b, cplx c, double u, double tol, long max_terms) {
    if (near_nonpositive_integer(c))
        throw pole_error("hyp2f1: c is a nonpositive integer");
    if (u < 0.0 || u >= 1.0)
        throw domain_error("hyp2f1: u must lie in [0, 1)");
    if (u == 0.0) return {cplx(1.0), 0.0, 0};

    // Terminating series: a or b a nonpositive integer.
    if (near_nonpositive_integer(a) || near_nonpositive_integer(b))
        return series_2f1(a, b, c, u, tol, max_terms);

    cplx cab = c - a - b;
    if (u > 0.7 && std::abs(cab) < 1e-12) return log_case_2f1(a, b, u, tol, max_terms);
    if (u > 0.7 && !near_integer(cab)) {
        // connection u -> 1-u
        double v = 1.0 - u;
        Hyp2f1Result f1 = series_2f1(a, b, a + b - c + 1.0, v, tol, max_terms);
        Hyp2f1Result f2 = series_2f1(c - a, c - b, cab + 1.0, v, tol, max_terms);
        cplx g1 = std::exp(log_gamma(c) + log_gamma(cab) - log_gamma(c - a) - log_gamma(c - b));
        cplx g2 = std::exp(log_gamma(c) + log_gamma(-cab) - log_gamma(a) - log_gamma(b));
        cplx value = g1 * f1.value + std::pow(cplx(v), cab) * g2 * f2.value;
        double err = (std::abs(g1 * f1.value) * f1.err_est +
                      std::abs(g2 * f2.value) * std::pow(v, cab.real()) * f2.err_est) /
                     std::max(std::abs(value), 1e-300);
        return {value, err, f1.terms + f2.terms};
    }
    return series_2f1(a, b, c, u, tol, max_terms);
}

cplx hyp2f1(cplx a, cplx b, cplx c, double u, double tol, long max_terms) {
    return hyp2f1_detail(a, b, c, u, tol, max_terms).value;
}

cplx c_zeta(const SpectralParam& p) {
    cplx z = p.zeta;
    cplx shift = z - cplx(p.n) / 2.0 + 1.0;
    if (near_nonpositive_integer(z) || near_nonpositive_integer(shift))
        throw pole_error("c_zeta: Gamma argument at a pole");
    return std::pow(kPi, -0.5 * p.n) * std::pow(cplx(2.0), -2.0 * z - 1.0) *
           std::exp(log_gamma(z) - log_gamma(shift));
}

} // namespace ahsc
