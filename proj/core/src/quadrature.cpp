#include "bigjump/quadrature.hpp"

namespace bigjump {

namespace {

double simpson(double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

double recurse(const std::function<double(double)>& f, double a, double b,
               double fa, double fm, double fb, double whole, double tol,
               int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    if (depth <= 0) {
        throw std::runtime_error("adaptive_simpson: recursion budget exhausted");
    }
    return recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
    if (!(b >= a)) throw std::invalid_argument("adaptive_simpson: b < a");
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = simpson(fa, fm, fb, b - a);
    return recurse(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

double adaptive_simpson_to_inf(const std::function<double(double)>& f, double a,
                               double decay_index, double tol, int max_depth) {
    if (!(a > 0.0)) throw std::invalid_argument("adaptive_simpson_to_inf: a <= 0");
    if (!(decay_index > 1.0)) {
        throw std::invalid_argument("adaptive_simpson_to_inf: decay_index <= 1");
    }
    const double power = 1.0 / (decay_index - 1.0);
    auto g = [&](double u) {
        const double x = a * std::pow(u, -power);
        return f(x) * a * power * std::pow(u, -power - 1.0);
    };
    // For f ~ C x^(-decay_index) the transformed integrand is ~ C a^(1-gamma)
    // times a slowly varying factor; clip the endpoint singularity that a
    // residual log factor can leave.
    return adaptive_simpson(g, 1e-14, 1.0, tol, max_depth);
}

}  // namespace bigjump
