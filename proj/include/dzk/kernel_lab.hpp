#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "dzk/reports.hpp"

namespace dzk {

// One factor of the product kernel: integral over xi of
// exp(i(x*xi - t*xi^2)) * smooth_step(2^(k+1) - |xi|) d xi.
// Adaptive panel doubling until two refinements agree to rel_tol.
std::complex<double> kernel_factor(double x, double t, int k, double rel_tol = 1e-6);

struct KernelReport {
    int k = 0;
    double T = 0.0;
    RatioReport pointwise;  // lhs = sup_t |J|, rhs = 2^(3k) min(1, x1^-2)
    SlopeFit tail_fit;      // log2 x1 vs log2 sup_t |J|
    double c_fit = 0.0;     // single envelope constant per (k, T)
};

// Evaluate J(x1, 0, z=t, t) = J1(x1,t) J2(0,t) J3(0) on the sample sets and
// fit the tail. The default horizon scales dyadically, T = 14 * 2^-k, which
// keeps the stationary-phase boundary (|x1| ~ 2^(k+2) T) inside the fit
// window; the |x1|^-2 envelope law is tight exactly at that boundary.
KernelReport kernel_envelope(int k, double T, const std::vector<double>& x1_list,
                             const std::vector<double>& t_list, double rel_tol = 1e-6);

std::vector<double> default_kernel_x1_list();
std::vector<double> default_kernel_t_list(double T);
inline double default_kernel_horizon(int k) { return 14.0 * std::ldexp(1.0, -k); }

} // namespace dzk
