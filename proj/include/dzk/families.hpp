#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dzk/field.hpp"

namespace dzk {

// Counter-based generator: mode coefficients are pure functions of
// (seed, input index, mode triple), so a family member is the same
// continuum function on every grid resolving its band. That is what makes
// the grid-refinement stability checks compare like with like.
std::uint64_t mix64(std::uint64_t x);
double uniform01(std::uint64_t h);
// standard normal pair from two hashes (Box-Muller)
void gauss_pair(std::uint64_t h1, std::uint64_t h2, double& g1, double& g2);

enum class FamilyKind { RandomBandlimited, Gaussian, DyadicTheta, Rescaled };

struct FamilySpec {
    FamilyKind kind = FamilyKind::RandomBandlimited;
    int count = 20;
    std::uint64_t seed = 1;

    // random-bandlimited: modes with |m| <= band per axis, coefficient
    // variance proportional to (1 + |k|^2)^(-spectral_slope); band_z < 0
    // means band (the rescaled family keeps band_z small so that the
    // lambda^2 remap in z stays on the grid)
    int band = 6;
    int band_z = -1;
    double spectral_slope = 0.0;

    // x <-> y relabeling applied after generation (symmetry probes)
    bool swapped = false;

    // gaussian: exp(-x^2/2sx^2 - ...) * exp(i k0.x); sigma <= 0 means the
    // axis profile is constant
    double sigma_x = 1.0, sigma_y = 1.0, sigma_z = 1.0;
    double amplitude = 1.0;
    int mod_kx = 0, mod_ky = 0, mod_kz = 0;

    // dyadic-theta: annulus datum at level `level` built from the smooth step
    int level = 2;

    // rescaled: lambda values applied to a band-limited base (member 0)
    std::vector<double> scales{1.0, 2.0, 4.0};

    std::string describe() const;
};

// Generate family member `index` on `g`. Deterministic in (spec, index).
ScalarField make_family_member(const Grid3& g, const FamilySpec& spec, int index);

// Individual constructions (also used directly by tests):
ScalarField random_bandlimited(const Grid3& g, std::uint64_t seed, int index, int band,
                               double spectral_slope, int band_z = -1);
ScalarField gaussian_field(const Grid3& g, const FamilySpec& spec);
// real annulus datum with hat(theta)(|k| / 2^level): 1 on [1,2], 0 off [1/2,4]
ScalarField dyadic_theta_field(const Grid3& g, int level);
// f(lambda x, lambda y, lambda^2 z) by exact mode remapping (lambda integer)
ScalarField parabolic_rescale(const Grid3& g, const ScalarField& f, int lambda);

// Smooth random time profile c0 + sum_m c_m exp(2 pi i m t / (2T)), m <= 2.
std::vector<cd> smooth_time_profile(std::uint64_t seed, int index, const TimeGrid& tg);

} // namespace dzk
