#pragma once

#include <stdexcept>
#include <vector>

namespace dzk {

// Kahan compensated accumulator. Summation order is fixed by the caller
// (z-fastest for grid sums) so results are reproducible.
struct KahanSum {
    double s = 0.0, c = 0.0;
    void add(double x) {
        const double y = x - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    double value() const { return s; }
};

// Composite Simpson weights for the first `segments` intervals of a uniform
// grid with spacing dt (segments+1 nodes). Odd segment counts >= 3 use
// Simpson + 3/8 on the last three intervals; a single interval falls back
// to the trapezoid rule. segments == 0 gives the empty integral.
inline std::vector<double> simpson_weights(int segments, double dt) {
    if (segments < 0) throw std::invalid_argument("simpson_weights: negative segment count");
    std::vector<double> w(segments + 1, 0.0);
    if (segments == 0) return w;
    if (segments == 1) {
        w[0] = w[1] = 0.5 * dt;
        return w;
    }
    int even_part = (segments % 2 == 0) ? segments : segments - 3;
    for (int i = 0; i + 2 <= even_part; i += 2) {
        w[i] += dt / 3.0;
        w[i + 1] += 4.0 * dt / 3.0;
        w[i + 2] += dt / 3.0;
    }
    if (segments % 2 != 0) {
        const int b = even_part; // 3/8 rule on the last three intervals
        w[b] += 3.0 * dt / 8.0;
        w[b + 1] += 9.0 * dt / 8.0;
        w[b + 2] += 9.0 * dt / 8.0;
        w[b + 3] += 3.0 * dt / 8.0;
    }
    return w;
}

inline std::vector<double> trapezoid_weights(int nt, double dt) {
    if (nt < 2) throw std::invalid_argument("trapezoid_weights: need >= 2 nodes");
    std::vector<double> w(nt, dt);
    w.front() = 0.5 * dt;
    w.back() = 0.5 * dt;
    return w;
}

} // namespace dzk
