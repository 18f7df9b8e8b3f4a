#pragma once

namespace dzk {

// Smooth monotone step: 0 for x <= 0, 1 for x >= 1, C-infinity throughout.
// Built from sigma(x) = exp(-1/x) as sigma(x) / (sigma(x) + sigma(1-x)),
// which also satisfies smooth_step(x) + smooth_step(1-x) == 1.
double smooth_step(double x);

struct BumpFunction {
    double operator()(double x) const { return smooth_step(x); }
};

// Cube cutoff at dyadic scale 2^k: product over the three axes of
// smooth_step(2^(k+1) - |k_i|); equals 1 when every |k_i| <= 2^(k+1)-1
// and 0 when any |k_i| >= 2^(k+1).
double dyadic_cube_cutoff(int k, double k1, double k2, double k3);

// Annulus weight of the dyadic partition of unity: level 0 is the cube
// cutoff itself; for k >= 1 it is the difference of consecutive cube
// cutoffs, so the partial sums telescope to the cube cutoff at the top
// level and sum_{k>=0} equals 1 on every bounded frequency set.
double dyadic_annulus_weight(int k, double k1, double k2, double k3);

} // namespace dzk
