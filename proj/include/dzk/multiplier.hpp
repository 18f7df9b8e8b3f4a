#pragma once

#include <functional>

#include "dzk/fft.hpp"

namespace dzk {

// Fourier multiplier sigma(k1,k2,k3). Removable singularities must already
// be handled in closed form by the symbol (no division by zero at k=0).
struct MultiplierSpec {
    std::function<cd(double, double, double)> symbol;
};

// Mode-wise product sigma(k) * Fhat(k). Throws if the symbol is non-finite
// at any grid mode.
SpectralField apply_multiplier(const SpectralField& F, const MultiplierSpec& m);

// Convenience: transform, multiply, transform back.
ScalarField apply_multiplier(const ScalarField& f, const MultiplierSpec& m);

// Internal hot path: apply a callable symbol in place without the
// per-mode finite check (symbols of the named operators are finite by
// construction; they are still covered by the checked path in tests).
template <class Symbol>
void transform_modes(SpectralField& F, Symbol&& sym) {
    const Grid3& g = F.grid;
    std::size_t idx = 0;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            for (int l = 0; l < g.nz; ++l, ++idx)
                F.m[idx] *= sym(g.kx[i], g.ky[j], g.kz[l]);
}

} // namespace dzk
