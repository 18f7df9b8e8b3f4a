#pragma once

#include "dzk/multiplier.hpp"

namespace dzk {

enum class Axis3 { X, Y, Z };

// sin(u)/u with the removable singularity in closed form.
inline double sinc(double u) {
    if (std::abs(u) < 1e-8) return 1.0 - u * u / 6.0;
    return std::sin(u) / u;
}

// --- symbols ------------------------------------------------------------

// exp(-i t (k1^2 + k2^2 + k3)): the group solving the linear equation
// with transverse dispersion and pure transport in z.
inline cd schrodinger_symbol(double t, double k1, double k2, double k3) {
    return std::polar(1.0, -t * (k1 * k1 + k2 * k2 + k3));
}

// t*sinc(t*r), r = sqrt(k1^2+k2^2): symbol of (-Lap_perp)^(-1/2) sin((-Lap_perp)^(1/2) t).
inline double wave_sine_symbol(double t, double k1, double k2) {
    return t * sinc(t * std::hypot(k1, k2));
}

inline double wave_cosine_symbol(double t, double k1, double k2) {
    return std::cos(t * std::hypot(k1, k2));
}

inline double perp_sqrt_symbol(double k1, double k2) { return std::hypot(k1, k2); }

// |k_axis|^s; the zero mode maps to 0 for s > 0.
inline double riesz_symbol(double kaxis, double s) {
    if (s == 0.0) return 1.0;
    return std::pow(std::fabs(kaxis), s);
}

// (1 + |k_axes|^2)^(s/2)
inline double bessel_symbol(double k2sum, double s) {
    if (s == 0.0) return 1.0;
    return std::pow(1.0 + k2sum, 0.5 * s);
}

inline cd derivative_symbol(int a1, int a2, int a3, double k1, double k2, double k3) {
    cd s(1.0, 0.0);
    const cd i1(0.0, k1), i2(0.0, k2), i3(0.0, k3);
    for (int q = 0; q < a1; ++q) s *= i1;
    for (int q = 0; q < a2; ++q) s *= i2;
    for (int q = 0; q < a3; ++q) s *= i3;
    return s;
}

// --- field-level operators ----------------------------------------------

// Unitary group E(t). Exact discrete L2 isometry; group law E(t)E(s) = E(t+s).
ScalarField schrodinger_group(const ScalarField& f, double t);
void schrodinger_group_inplace(SpectralField& F, double t);

// Wave propagators N(t), N'(t) (transverse Laplacian only).
ScalarField wave_sine(const ScalarField& f, double t);
ScalarField wave_cosine(const ScalarField& f, double t);
void wave_sine_inplace(SpectralField& F, double t);
void wave_cosine_inplace(SpectralField& F, double t);

// D^s along one axis; rejects s < 0 (|k|^s singular at 0).
ScalarField riesz_derivative(const ScalarField& f, double s, Axis3 axis);

// J^s over a subset of axes (any real s).
ScalarField bessel_potential(const ScalarField& f, double s, bool ax, bool ay, bool az);

// (-Lap_perp)^(1/2)
ScalarField perp_sqrt_laplacian(const ScalarField& f);

// Frequency localization B_k: multiplier dyadic_annulus_weight^(1/2),
// so B_k^2 realizes the annulus weight itself.
ScalarField dyadic_projection(const ScalarField& f, int k);
void dyadic_projection_inplace(SpectralField& F, int k);

// acc += w * E(dt) G, mode-wise (separable phase tables, no exp per mode
// beyond the three axis passes). The weight may be complex: the Duhamel
// term of the reduced equation enters with a factor -i.
void axpy_schrodinger(SpectralField& acc, const SpectralField& G, double dt, cd w);

// acc += w * N(dt) G, mode-wise.
void axpy_wave_sine(SpectralField& acc, const SpectralField& G, double dt, double w);

// I(t_j) = integral over [0, t_j] of E(t_j - t') G(t') dt', composite
// Simpson on the time nodes, evaluated on spectral frames.
std::vector<SpectralField> duhamel_series(const std::vector<SpectralField>& Ghat,
                                          const TimeGrid& tg);

} // namespace dzk
