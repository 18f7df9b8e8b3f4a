#include "dzk/bump.hpp"

#include <cmath>

namespace dzk {

double smooth_step(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / x);
    const double b = std::exp(-1.0 / (1.0 - x));
    return a / (a + b);
}

double dyadic_cube_cutoff(int k, double k1, double k2, double k3) {
    const double r = std::ldexp(1.0, k + 1); // 2^(k+1)
    return smooth_step(r - std::fabs(k1)) *
           smooth_step(r - std::fabs(k2)) *
           smooth_step(r - std::fabs(k3));
}

double dyadic_annulus_weight(int k, double k1, double k2, double k3) {
    if (k == 0) return dyadic_cube_cutoff(0, k1, k2, k3);
    const double hi = dyadic_cube_cutoff(k, k1, k2, k3);
    const double lo = dyadic_cube_cutoff(k - 1, k1, k2, k3);
    const double w = hi - lo;
    return w > 0.0 ? w : 0.0;
}

} // namespace dzk
