#pragma once

#include <functional>

namespace quatgro {

// Adaptive bisection quadrature built on a 15-point Gauss-Legendre panel.
// The error estimate for a segment is the difference between one panel and
// the sum of its two half panels; segments are split until the estimate is
// below the local tolerance or the depth cap (40 levels) is reached.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol);

}  // namespace quatgro
