#pragma once

#include <vector>

#include "dzk/reports.hpp"

namespace dzk {

// Direct frequency-space evaluation of the annulus datum at level k and of
// its free evolution, independent of the grid transforms. The datum has
// hat(theta)(|xi| / 2^k) with hat(theta) = 1 on [1,2], 0 off [1/2,4].
struct CounterexampleConfig {
    double delta = 0.1;   // window parameter: |x| <= d 2^-k, y,z,t windows below
    int points_per_axis = 64;  // frequency quadrature per axis
    int x_samples = 9;
    int window_samples = 4;    // per y, z, t window
    double quad_tol = 1e-3;    // relative agreement required under refinement
};

struct CounterexampleLevel {
    int k = 0;
    double lhs = 0.0;       // windowed L2_x sup_(y,z,t) norm of the evolution
    double h0 = 0.0;        // H^0 norm of the datum
    double hs = 0.0;        // H^s norm of the datum
};

struct CounterexampleReport {
    double s = 0.0;
    std::vector<CounterexampleLevel> levels;
    SlopeFit lhs_fit;    // log2 LHS vs k
    SlopeFit ratio_fit;  // log2 (LHS / H^s) vs k
};

// Sup over the sampled windows |x| <= d 2^-k, y,z in [d 2^-k / 2, 2 d 2^-k],
// t in [d 2^-2k / 2, 2 d 2^-2k], then the x-windowed L2. Throws when the
// frequency quadrature cannot resolve the level to quad_tol.
CounterexampleReport counterexample_growth(double s, const std::vector<int>& k_list,
                                           const CounterexampleConfig& cfg = {});

// H^s norm of the level-k datum by direct frequency quadrature.
double theta_sobolev_norm(int k, double s, int points_per_axis);

} // namespace dzk
