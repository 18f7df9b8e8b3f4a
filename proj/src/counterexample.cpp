#include "dzk/counterexample.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "dzk/bump.hpp"
#include "dzk/quadrature.hpp"

namespace dzk {

namespace {

using cd = std::complex<double>;

double theta_hat(double r) {
    return smooth_step((r - 0.5) / 0.5) * smooth_step((4.0 - r) / 2.0);
}

// midpoint nodes on [-R, R]
std::vector<double> midpoints(double R, int n) {
    std::vector<double> u(n);
    const double h = 2.0 * R / n;
    for (int i = 0; i < n; ++i) u[i] = -R + (i + 0.5) * h;
    return u;
}

struct ThetaQuad {
    int k;
    int n;
    double h;                   // node spacing
    std::vector<double> u;      // per-axis nodes
    std::vector<double> th;     // theta weights, u-major (i*n+j)*n+l

    ThetaQuad(int k_, int n_) : k(k_), n(n_) {
        const double R = 4.0 * std::ldexp(1.0, k);
        u = midpoints(R, n);
        h = 2.0 * R / n;
        th.assign(std::size_t(n) * n * n, 0.0);
        const double scale = std::ldexp(1.0, k);
        std::size_t q = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int l = 0; l < n; ++l, ++q) {
                    const double r = std::sqrt(u[i] * u[i] + u[j] * u[j] + u[l] * u[l]);
                    th[q] = theta_hat(r / scale);
                }
    }

    // |integral of exp(i(x xi1 + y xi2 + (z - t) xi3 - t(xi1^2 + xi2^2))) theta|
    double evolution_abs(double x, double y, double z, double t) const {
        std::vector<cd> px(n), py(n), pz(n);
        for (int i = 0; i < n; ++i) {
            px[i] = std::polar(1.0, x * u[i] - t * u[i] * u[i]);
            py[i] = std::polar(1.0, y * u[i] - t * u[i] * u[i]);
            pz[i] = std::polar(1.0, (z - t) * u[i]);
        }
        KahanSum re, im;
        std::size_t q = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const cd pij = px[i] * py[j];
                for (int l = 0; l < n; ++l, ++q) {
                    if (th[q] == 0.0) continue;
                    const cd v = pij * pz[l] * th[q];
                    re.add(v.real());
                    im.add(v.imag());
                }
            }
        const double cell = h * h * h;
        return std::abs(cd(re.value(), im.value())) * cell;
    }

    double sobolev(double s) const {
        KahanSum acc;
        std::size_t q = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int l = 0; l < n; ++l, ++q) {
                    if (th[q] == 0.0) continue;
                    const double k2 = u[i] * u[i] + u[j] * u[j] + u[l] * u[l];
                    acc.add(std::pow(1.0 + k2, s) * th[q] * th[q]);
                }
        const double cell = h * h * h;
        const double inv = 1.0 / std::pow(2.0 * M_PI, 3.0);
        return std::sqrt(acc.value() * cell * inv);
    }
};

std::vector<double> window(double lo, double hi, int n) {
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = lo + (hi - lo) * i / double(n - 1);
    return w;
}

} // namespace

double theta_sobolev_norm(int k, double s, int points_per_axis) {
    return ThetaQuad(k, points_per_axis).sobolev(s);
}

CounterexampleReport counterexample_growth(double s, const std::vector<int>& k_list,
                                           const CounterexampleConfig& cfg) {
    if (k_list.size() < 3)
        throw std::invalid_argument("counterexample_growth: need >= 3 levels for a fit");
    CounterexampleReport rep;
    rep.s = s;

    for (int k : k_list) {
        if (k < 1) throw std::invalid_argument("counterexample_growth: level must be >= 1");
        ThetaQuad quad(k, cfg.points_per_axis);
        {
            // the annulus transition width is 2^(k-1); require the quadrature
            // to resolve it and confirm by one refinement of the H^0 integral
            ThetaQuad fine(k, 2 * cfg.points_per_axis);
            const double a = quad.sobolev(0.0), b = fine.sobolev(0.0);
            if (std::fabs(a - b) > cfg.quad_tol * b)
                throw std::runtime_error(
                    "counterexample_growth: frequency quadrature cannot resolve level " +
                    std::to_string(k));
        }
        const double twoK = std::ldexp(1.0, k);
        const double dx = cfg.delta / twoK;
        const auto xs = window(-dx, dx, cfg.x_samples);
        const auto ys = window(0.5 * dx, 2.0 * dx, cfg.window_samples);
        const auto ts = window(0.5 * cfg.delta / (twoK * twoK),
                               2.0 * cfg.delta / (twoK * twoK), cfg.window_samples);

        KahanSum xint;
        const double hx = xs[1] - xs[0];
        for (std::size_t ix = 0; ix < xs.size(); ++ix) {
            double sup = 0.0;
            for (double t : ts)
                for (double y : ys)
                    for (double z : ys)
                        sup = std::max(sup, quad.evolution_abs(xs[ix], y, z, t));
            const double w = (ix == 0 || ix + 1 == xs.size()) ? 0.5 : 1.0;
            xint.add(w * sup * sup * hx);
        }

        CounterexampleLevel lvl;
        lvl.k = k;
        lvl.lhs = std::sqrt(xint.value());
        lvl.h0 = quad.sobolev(0.0);
        lvl.hs = quad.sobolev(s);
        rep.levels.push_back(lvl);
    }

    std::vector<double> ks, lhs_log, ratio_log;
    for (const auto& lvl : rep.levels) {
        ks.push_back(double(lvl.k));
        lhs_log.push_back(std::log2(lvl.lhs));
        ratio_log.push_back(std::log2(lvl.lhs / lvl.hs));
    }
    rep.lhs_fit = fit_line("counterexample-lhs", ks, lhs_log);
    rep.ratio_fit = fit_line("counterexample-ratio", ks, ratio_log);
    return rep;
}

} // namespace dzk
