#include "bcast/quadrature.hpp"

#include <cmath>

#include "bcast/errors.hpp"

namespace bcast {

namespace {

struct Simpson {
    const Integrand& f;
    const QuadOptions& opt;
    long evals = 0;

    double eval(double x) {
        if (++evals > opt.max_evals) throw NonConvergence("quadrature: evaluation budget exhausted");
        return f(x);
    }

    double refine(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) {
        double m = 0.5 * (a + b);
        double flm = eval(0.5 * (a + m));
        double frm = eval(0.5 * (m + b));
        double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        double delta = left + right - whole;
        if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
        return refine(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
               refine(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    }

    double panel(double a, double b) {
        double fa = eval(a), fb = eval(b), fm = eval(0.5 * (a + b));
        double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        return refine(a, b, fa, fm, fb, whole, opt.abs_tol, 48);
    }
};

}  // namespace

double integrate(const Integrand& f, double a, double b, const QuadOptions& opt) {
    if (b <= a) return 0.0;
    Simpson s{f, opt};
    // a few fixed panels first so a feature cannot hide between the initial nodes
    constexpr int kPanels = 8;
    double h = (b - a) / kPanels, sum = 0.0;
    for (int i = 0; i < kPanels; ++i) sum += s.panel(a + i * h, i + 1 == kPanels ? b : a + (i + 1) * h);
    return sum;
}

double integrate_to_infinity(const Integrand& f, double a, double scale, const QuadOptions& opt) {
    if (!(scale > 0.0)) scale = 1.0;
    double lo = a, hi = a + scale, total = 0.0;
    for (int grow = 0;; ++grow) {
        total += integrate(f, lo, hi, opt);
        if (std::abs(f(hi)) < opt.cutoff) break;
        if (grow > 200) throw NonConvergence("quadrature: integrand does not decay");
        lo = hi;
        hi = a + 2.0 * (hi - a);
    }
    double h = (hi - lo) / 64.0;
    double f1 = f(hi - h), f2 = f(hi);
    if (f2 > 0.0 && f1 > f2) {
        double slope = (std::log(f2) - std::log(f1)) / h;
        total += f2 / -slope;
    }
    return total;
}

}  // namespace bcast
