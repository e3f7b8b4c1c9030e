#include "ahsc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace ahsc {

namespace {

// Gauss-Kronrod 7-15 nodes/weights on [-1, 1] (positive half; node 0 last).
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
};
// 7-point Gauss weights, matching kXgk[1], kXgk[3], kXgk[5], kXgk[7].
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469,
};

struct Panel {
    double a, b;
    cplx value;
    double err;
    bool operator<(const Panel& o) const { return err < o.err; }
};

Panel eval_panel(const std::function<cplx(double)>& f, double a, double b) {
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    cplx fc = f(c);
    cplx resk = kWgk[7] * fc;
    cplx resg = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        cplx fsum = f(c - h * kXgk[j]) + f(c + h * kXgk[j]);
        resk += kWgk[j] * fsum;
        if (j % 2 == 1) resg += kWg[j / 2] * fsum;
    }
    double err = std::abs(resk - resg) * h;
    return {a, b, resk * h, err};
}

} // namespace

QuadResult integrate(const std::function<cplx(double)>& f, double a, double b,
                     double rel_tol, double abs_tol, long max_evals) {
    if (!(a < b)) throw domain_error("integrate: need a < b");
    std::priority_queue<Panel> heap;
    heap.push(eval_panel(f, a, b));
    long evals = 15;
    cplx total = heap.top().value;
    double toterr = heap.top().err;
    while (toterr > std::max(abs_tol, rel_tol * std::abs(total))) {
        if (evals + 30 > max_evals)
            throw convergence_error("integrate: evaluation budget exhausted");
        Panel worst = heap.top();
        heap.pop();
        double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b)
            throw convergence_error("integrate: interval collapsed below machine precision");
        Panel left = eval_panel(f, worst.a, mid);
        Panel right = eval_panel(f, mid, worst.b);
        evals += 30;
        total += left.value + right.value - worst.value;
        toterr += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
    }
    return {total, toterr, evals};
}

QuadResult integrate_line(const std::function<cplx(double)>& f,
                          double rel_tol, double abs_tol, long max_evals) {
    // w = t / (1 - t^2), dw = (1 + t^2) / (1 - t^2)^2 dt, t in (-1, 1)
    auto g = [&f](double t) -> cplx {
        double s = 1.0 - t * t;
        double w = t / s;
        double jac = (1.0 + t * t) / (s * s);
        return f(w) * jac;
    };
    return integrate(g, -1.0 + 1e-14, 1.0 - 1e-14, rel_tol, abs_tol, max_evals);
}

QuadResult integrate_oscillatory(const std::function<cplx(double)>& f,
                                 double xi, bool two_sided,
                                 int half_periods, int averaging,
                                 double rel_tol) {
    if (xi == 0.0) throw domain_error("integrate_oscillatory: xi must be nonzero");
    double h = M_PI / std::abs(xi);
    long evals = 0;
    std::vector<cplx> partial;
    partial.reserve(half_periods);
    cplx running = 0.0;
    for (int m = 0; m < half_periods; ++m) {
        double a = m * h, b = (m + 1) * h;
        auto g = [&](double w) -> cplx {
            cplx phase = std::exp(cplx(0.0, -w * xi));
            cplx val = f(w) * phase;
            if (two_sided && w > 0.0) val += f(-w) * std::conj(phase);
            return val;
        };
        QuadResult q = integrate(g, a, b, rel_tol, 1e-300, 200000);
        evals += q.evals;
        running += q.value;
        partial.push_back(running);
    }
    // repeated averaging of the alternating-tail partial sums
    std::vector<cplx> row = partial;
    for (int pass = 0; pass < averaging && row.size() > 1; ++pass) {
        for (size_t i = 0; i + 1 < row.size(); ++i)
            row[i] = 0.5 * (row[i] + row[i + 1]);
        row.pop_back();
    }
    cplx value = row.back();
    // error gauge: distance between the last two averaging depths
    std::vector<cplx> row2 = partial;
    for (int pass = 0; pass + 1 < averaging && row2.size() > 1; ++pass) {
        for (size_t i = 0; i + 1 < row2.size(); ++i)
            row2[i] = 0.5 * (row2[i] + row2[i + 1]);
        row2.pop_back();
    }
    double err = std::abs(value - row2.back());
    return {value, err, evals};
}

} // namespace ahsc
