#include "dzk/dealias.hpp"

namespace dzk {

namespace {
inline int mode_of(int m, int n) { return (m < n / 2) ? m : m - n; }
}

void truncate_two_thirds(SpectralField& F) {
    const Grid3& g = F.grid;
    const int bx = dealias_limit(g.nx);
    const int by = dealias_limit(g.ny);
    const int bz = dealias_limit(g.nz);
    std::size_t idx = 0;
    for (int i = 0; i < g.nx; ++i) {
        const bool ki = std::abs(mode_of(i, g.nx)) > bx;
        for (int j = 0; j < g.ny; ++j) {
            const bool kj = ki || std::abs(mode_of(j, g.ny)) > by;
            for (int l = 0; l < g.nz; ++l, ++idx) {
                if (kj || std::abs(mode_of(l, g.nz)) > bz) F.m[idx] = cd(0, 0);
            }
        }
    }
}

ScalarField dealiased_product(const ScalarField& f, const ScalarField& g) {
    if (!f.grid.same_shape(g.grid))
        throw std::invalid_argument("dealiased_product: grid mismatch");
    SpectralField Fa = to_spectral(f);
    SpectralField Fb = to_spectral(g);
    truncate_two_thirds(Fa);
    truncate_two_thirds(Fb);
    ScalarField a = from_spectral(Fa);
    ScalarField b = from_spectral(Fb);
    for (std::size_t q = 0; q < a.v.size(); ++q) a.v[q] *= b.v[q];
    SpectralField P = to_spectral(a);
    truncate_two_thirds(P);
    return from_spectral(P);
}

} // namespace dzk
