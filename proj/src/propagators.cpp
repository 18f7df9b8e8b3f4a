#include "dzk/propagators.hpp"

#include <cmath>

#include "dzk/bump.hpp"
#include "dzk/quadrature.hpp"

namespace dzk {

void schrodinger_group_inplace(SpectralField& F, double t) {
    const Grid3& g = F.grid;
    // separable phase: per-axis tables instead of n^3 exp calls
    std::vector<cd> px(g.nx), py(g.ny), pz(g.nz);
    for (int i = 0; i < g.nx; ++i) px[i] = std::polar(1.0, -t * g.kx[i] * g.kx[i]);
    for (int j = 0; j < g.ny; ++j) py[j] = std::polar(1.0, -t * g.ky[j] * g.ky[j]);
    for (int l = 0; l < g.nz; ++l) pz[l] = std::polar(1.0, -t * g.kz[l]);
    std::size_t idx = 0;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const cd pij = px[i] * py[j];
            for (int l = 0; l < g.nz; ++l, ++idx) F.m[idx] *= pij * pz[l];
        }
}

ScalarField schrodinger_group(const ScalarField& f, double t) {
    SpectralField F = to_spectral(f);
    schrodinger_group_inplace(F, t);
    return from_spectral(F);
}

namespace {

template <class PerpSymbol>
void apply_perp_symbol(SpectralField& F, PerpSymbol&& sym) {
    const Grid3& g = F.grid;
    std::size_t idx = 0;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const double s = sym(g.kx[i], g.ky[j]);
            for (int l = 0; l < g.nz; ++l, ++idx) F.m[idx] *= s;
        }
}

} // namespace

void wave_sine_inplace(SpectralField& F, double t) {
    apply_perp_symbol(F, [t](double k1, double k2) { return wave_sine_symbol(t, k1, k2); });
}

void wave_cosine_inplace(SpectralField& F, double t) {
    apply_perp_symbol(F, [t](double k1, double k2) { return wave_cosine_symbol(t, k1, k2); });
}

ScalarField wave_sine(const ScalarField& f, double t) {
    SpectralField F = to_spectral(f);
    wave_sine_inplace(F, t);
    return from_spectral(F);
}

ScalarField wave_cosine(const ScalarField& f, double t) {
    SpectralField F = to_spectral(f);
    wave_cosine_inplace(F, t);
    return from_spectral(F);
}

ScalarField riesz_derivative(const ScalarField& f, double s, Axis3 axis) {
    if (s < 0.0) throw std::invalid_argument("riesz_derivative: negative order rejected");
    SpectralField F = to_spectral(f);
    switch (axis) {
        case Axis3::X: transform_modes(F, [s](double k1, double, double) { return riesz_symbol(k1, s); }); break;
        case Axis3::Y: transform_modes(F, [s](double, double k2, double) { return riesz_symbol(k2, s); }); break;
        case Axis3::Z: transform_modes(F, [s](double, double, double k3) { return riesz_symbol(k3, s); }); break;
    }
    return from_spectral(F);
}

ScalarField bessel_potential(const ScalarField& f, double s, bool ax, bool ay, bool az) {
    SpectralField F = to_spectral(f);
    transform_modes(F, [=](double k1, double k2, double k3) {
        double k2sum = 0.0;
        if (ax) k2sum += k1 * k1;
        if (ay) k2sum += k2 * k2;
        if (az) k2sum += k3 * k3;
        return bessel_symbol(k2sum, s);
    });
    return from_spectral(F);
}

ScalarField perp_sqrt_laplacian(const ScalarField& f) {
    SpectralField F = to_spectral(f);
    apply_perp_symbol(F, [](double k1, double k2) { return perp_sqrt_symbol(k1, k2); });
    return from_spectral(F);
}

void dyadic_projection_inplace(SpectralField& F, int k) {
    if (k < 0) throw std::invalid_argument("dyadic_projection: k must be >= 0");
    transform_modes(F, [k](double k1, double k2, double k3) {
        return std::sqrt(dyadic_annulus_weight(k, k1, k2, k3));
    });
}

ScalarField dyadic_projection(const ScalarField& f, int k) {
    SpectralField F = to_spectral(f);
    dyadic_projection_inplace(F, k);
    return from_spectral(F);
}

void axpy_schrodinger(SpectralField& acc, const SpectralField& G, double dt, cd w) {
    const Grid3& g = acc.grid;
    std::vector<cd> px(g.nx), py(g.ny), pz(g.nz);
    for (int i = 0; i < g.nx; ++i) px[i] = std::polar(1.0, -dt * g.kx[i] * g.kx[i]);
    for (int j = 0; j < g.ny; ++j) py[j] = std::polar(1.0, -dt * g.ky[j] * g.ky[j]);
    for (int l = 0; l < g.nz; ++l) pz[l] = w * std::polar(1.0, -dt * g.kz[l]);
    std::size_t idx = 0;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const cd pij = px[i] * py[j];
            for (int l = 0; l < g.nz; ++l, ++idx) acc.m[idx] += pij * pz[l] * G.m[idx];
        }
}

void axpy_wave_sine(SpectralField& acc, const SpectralField& G, double dt, double w) {
    const Grid3& g = acc.grid;
    // symbol depends on the transverse modes only; tabulate per (kx, ky)
    std::size_t idx = 0;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const double s = w * wave_sine_symbol(dt, g.kx[i], g.ky[j]);
            for (int l = 0; l < g.nz; ++l, ++idx) acc.m[idx] += s * G.m[idx];
        }
}

std::vector<SpectralField> duhamel_series(const std::vector<SpectralField>& Ghat,
                                          const TimeGrid& tg) {
    if (int(Ghat.size()) != tg.nt)
        throw std::invalid_argument("duhamel_series: frame count != nt");
    const Grid3& g = Ghat.front().grid;
    std::vector<SpectralField> out;
    out.reserve(tg.nt);
    for (int j = 0; j < tg.nt; ++j) {
        SpectralField acc(g);
        const auto w = simpson_weights(j, tg.dt());
        for (int i = 0; i <= j; ++i) {
            if (w[i] == 0.0) continue;
            axpy_schrodinger(acc, Ghat[i], tg.nodes[j] - tg.nodes[i], w[i]);
        }
        out.push_back(std::move(acc));
    }
    return out;
}

} // namespace dzk
