#include "dzk/kernel_lab.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include "dzk/bump.hpp"
#include "dzk/quadrature.hpp"

namespace dzk {

namespace {

using cd = std::complex<double>;

// trapezoid over [-R, R] with n+1 nodes
cd trapezoid_pass(double x, double t, int k, int n) {
    const double R = std::ldexp(1.0, k + 1);
    const double h = 2.0 * R / n;
    KahanSum re, im;
    for (int i = 0; i <= n; ++i) {
        const double xi = -R + i * h;
        const double w = (i == 0 || i == n) ? 0.5 : 1.0;
        const double amp = smooth_step(R - std::fabs(xi));
        if (amp == 0.0) continue;
        const double ph = x * xi - t * xi * xi;
        re.add(w * amp * std::cos(ph));
        im.add(w * amp * std::sin(ph));
    }
    return cd(re.value(), im.value()) * h;
}

} // namespace

cd kernel_factor(double x, double t, int k, double rel_tol) {
    // start resolved: a few nodes per unit of phase and per cutoff transition
    const double R = std::ldexp(1.0, k + 1);
    const double phase_span = std::fabs(x) * 2.0 * R + std::fabs(t) * R * R + 8.0;
    int n = 256;
    while (n < phase_span * 4.0 && n < (1 << 22)) n *= 2;
    cd prev = trapezoid_pass(x, t, k, n);
    for (int it = 0; it < 12; ++it) {
        n *= 2;
        const cd cur = trapezoid_pass(x, t, k, n);
        const double scale = std::max({std::abs(cur), std::abs(prev), 1e-12 * 2.0 * R});
        if (std::abs(cur - prev) <= rel_tol * scale) return cur;
        prev = cur;
    }
    throw std::runtime_error("kernel_factor: quadrature did not converge");
}

std::vector<double> default_kernel_x1_list() {
    std::vector<double> xs;
    for (int i = 0; i < 33; ++i) xs.push_back(std::pow(10.0, 2.0 * i / 32.0));
    return xs;
}

std::vector<double> default_kernel_t_list(double T) {
    std::vector<double> ts;
    for (int i = 0; i < 33; ++i) ts.push_back(T * i / 32.0);
    return ts;
}

KernelReport kernel_envelope(int k, double T, const std::vector<double>& x1_list,
                             const std::vector<double>& t_list, double rel_tol) {
    if (k < 0) throw std::invalid_argument("kernel_envelope: k must be >= 0");
    KernelReport rep;
    rep.k = k;
    rep.T = T;
    rep.pointwise.case_id = "kernel-envelope";
    {
        std::ostringstream os;
        os << "kernel(k=" << k << ",T=" << T << ")";
        rep.pointwise.family = os.str();
    }

    // J2 at y = 0 and J3 at z = t depend only on t; precompute per node.
    std::vector<double> j2(t_list.size());
    for (std::size_t i = 0; i < t_list.size(); ++i)
        j2[i] = std::abs(kernel_factor(0.0, t_list[i], k, rel_tol));
    const double j3 = std::abs(kernel_factor(0.0, 0.0, k, rel_tol));

    const double scale = std::ldexp(1.0, 3 * k); // 2^(3k)
    std::vector<double> la, lo;
    for (std::size_t xi = 0; xi < x1_list.size(); ++xi) {
        const double x1 = x1_list[xi];
        double sup = 0.0;
        for (std::size_t ti = 0; ti < t_list.size(); ++ti) {
            const double v = std::abs(kernel_factor(x1, t_list[ti], k, rel_tol)) * j2[ti] * j3;
            sup = std::max(sup, v);
        }
        const double envelope = scale * std::min(1.0, 1.0 / (x1 * x1));
        std::ostringstream os;
        os.precision(12);
        os << "{\"x1\":" << x1 << ",\"k\":" << k << ",\"T\":" << T << '}';
        rep.pointwise.rows.push_back(RatioRow{int(xi), os.str(), sup, envelope,
                                              sup / envelope, false});
        if (x1 >= 1.0) {
            la.push_back(std::log2(x1));
            lo.push_back(std::log2(sup));
        }
    }
    rep.pointwise.finalize();
    rep.c_fit = rep.pointwise.max_ratio;
    rep.tail_fit = fit_line("kernel-tail", la, lo);
    return rep;
}

} // namespace dzk
