#include "quatgro/quadrature.hpp"

#include <array>
#include <cmath>

namespace quatgro {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct GaussRule {
    std::array<double, 15> x;
    std::array<double, 15> w;
};

// Nodes and weights found by Newton iteration on the Legendre recurrence so
// no tabulated constants are needed.
const GaussRule& gauss15() {
    static const GaussRule rule = [] {
        GaussRule g{};
        const int n = 15;
        for (int i = 0; i < n; ++i) {
            double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
            double p1 = 0.0, p0 = 0.0;
            for (int it = 0; it < 100; ++it) {
                p0 = 1.0;
                p1 = x;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) /
                                static_cast<double>(k);
                    p0 = p1;
                    p1 = p2;
                }
                double dp = n * (x * p1 - p0) / (x * x - 1.0);
                double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            g.x[static_cast<std::size_t>(i)] = x;
            g.w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        return g;
    }();
    return rule;
}

double gauss_segment(const std::function<double(double)>& f, double a,
                     double b) {
    const GaussRule& g = gauss15();
    double mid = 0.5 * (a + b);
    double half = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t i = 0; i < g.x.size(); ++i) {
        acc += g.w[i] * f(mid + half * g.x[i]);
    }
    return acc * half;
}

double integrate_rec(const std::function<double(double)>& f, double a,
                     double b, double tol, int depth) {
    double whole = gauss_segment(f, a, b);
    double mid = 0.5 * (a + b);
    double split = gauss_segment(f, a, mid) + gauss_segment(f, mid, b);
    if (std::abs(split - whole) <= tol || depth >= 40) return split;
    return integrate_rec(f, a, mid, 0.5 * tol, depth + 1) +
           integrate_rec(f, mid, b, 0.5 * tol, depth + 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol) {
    if (a == b) return 0.0;
    return integrate_rec(f, a, b, tol, 0);
}

}  // namespace quatgro
