#pragma once

#include <array>
#include <functional>
#include <string>

#include "dzk/field.hpp"

namespace dzk {

enum class NormAxis { X = 0, Y = 1, Z = 2, T = 3 };

// One stage of an iterated Lebesgue norm: exponent p over a group of axes.
// p == infinity() means the maximum over samples (no quadrature weight).
struct NormStage {
    std::vector<NormAxis> axes;
    double p = 2.0;
};

// Ordered outer-to-inner, e.g. "Linf:x | L2:y,z,t" is sup_x of the joint
// L2 over (y,z,t). Fractional exponents parse as "L8/3:...".
struct MixedNormSpec {
    std::vector<NormStage> stages;

    static MixedNormSpec parse(const std::string& text);
    std::string str() const;
};

struct NormValue {
    double value = 0.0;
    std::string spec;
    double horizon = 0.0;
};

// Iterated quadrature/maximum, evaluated inner stage first. Space axes use
// the rectangle rule, the time axis the trapezoid rule, sup stages the plain
// maximum over samples. The spec must cover x, y, z exactly once, and t
// exactly once iff the series has more than one frame.
NormValue mixed_norm(const FieldSeries& series, const MixedNormSpec& spec);
NormValue mixed_norm(const ScalarField& f, const MixedNormSpec& spec);

// H^s via the spectral side of the Parseval identity.
NormValue sobolev_norm(const ScalarField& f, double s);

// H^2 plus the half-derivative terms D^1/2_x d^a f, D^1/2_y d^a f over all
// |a| = 2, combined in quadrature.
NormValue tilde_h2_norm(const ScalarField& f);

// The Strichartz-norm bundle: first-derivative families with J_z weights
// 1/4+eps, 3/8+eps, 1/2+eps, plus the d_x, d_y families over |a| <= 1.
NormValue x_T_norm(const FieldSeries& series, double eps = 0.05);

// The fixed-point norm: sup-in-time H^2 and half-derivative terms, the
// Strichartz bundle, the two maximal norms and the two smoothing families.
NormValue contraction_norm(const FieldSeries& series, double eps = 0.05);

// --- building blocks shared with the estimate bench ----------------------

using FrameFn = std::function<ScalarField(int)>;

// Evaluate a mixed norm over frames produced on demand (index 0..nt-1),
// without materializing the whole series.
double mixed_norm_streaming(const Grid3& g, const TimeGrid& tg,
                            const FrameFn& frame, const MixedNormSpec& spec);

double sobolev_norm_value(const SpectralField& F, double s);

using Alpha = std::array<int, 3>;
inline constexpr std::array<Alpha, 3> kAlphaOrder1{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
inline constexpr std::array<Alpha, 4> kAlphaUpTo1{{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
inline constexpr std::array<Alpha, 6> kAlphaOrder2{
    {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}}};

} // namespace dzk
