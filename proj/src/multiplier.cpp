#include "dzk/multiplier.hpp"

#include <cmath>

namespace dzk {

SpectralField apply_multiplier(const SpectralField& F, const MultiplierSpec& m) {
    if (!m.symbol) throw std::invalid_argument("apply_multiplier: empty symbol");
    SpectralField out(F.grid);
    const Grid3& g = F.grid;
    std::size_t idx = 0;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            for (int l = 0; l < g.nz; ++l, ++idx) {
                const cd s = m.symbol(g.kx[i], g.ky[j], g.kz[l]);
                if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
                    throw std::invalid_argument("apply_multiplier: non-finite symbol at a grid mode");
                out.m[idx] = s * F.m[idx];
            }
    return out;
}

ScalarField apply_multiplier(const ScalarField& f, const MultiplierSpec& m) {
    return from_spectral(apply_multiplier(to_spectral(f), m));
}

} // namespace dzk
