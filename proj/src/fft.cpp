#include "dzk/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <tuple>

#include "dzk/quadrature.hpp"

namespace dzk {

namespace {

// One in-place c2c plan pair per grid shape, with an owned aligned buffer.
// Fields are copied through the buffer so caller storage needs no special
// alignment. Plans use FFTW_ESTIMATE (deterministic, cheap to create).
struct PlanPair {
    fftw_complex* buf = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    std::size_t n = 0;

    PlanPair(int nx, int ny, int nz) {
        n = std::size_t(nx) * ny * nz;
        buf = fftw_alloc_complex(n);
        fwd = fftw_plan_dft_3d(nx, ny, nz, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_3d(nx, ny, nz, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~PlanPair() {
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
        fftw_free(buf);
    }
    PlanPair(const PlanPair&) = delete;
    PlanPair& operator=(const PlanPair&) = delete;
};

PlanPair& plans_for(const Grid3& g) {
    static std::map<std::tuple<int, int, int>, std::unique_ptr<PlanPair>> cache;
    auto key = std::make_tuple(g.nx, g.ny, g.nz);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<PlanPair>(g.nx, g.ny, g.nz)).first;
    return *it->second;
}

// Samples live at x_j = -l/2 + j*h, so the DFT picks up a (-1)^(mx+my+mz)
// phase relative to the box-centered transform.
inline double center_sign(int i, int j, int l) {
    return ((i + j + l) & 1) ? -1.0 : 1.0;
}

} // namespace

SpectralField to_spectral(const ScalarField& f) {
    const Grid3& g = f.grid;
    PlanPair& p = plans_for(g);
    std::memcpy(p.buf, f.v.data(), p.n * sizeof(fftw_complex));
    fftw_execute(p.fwd);

    SpectralField F(g);
    const double h = g.cell();
    std::size_t idx = 0;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            for (int l = 0; l < g.nz; ++l, ++idx) {
                const double s = h * center_sign(i, j, l);
                F.m[idx] = cd(p.buf[idx][0] * s, p.buf[idx][1] * s);
                if (!std::isfinite(p.buf[idx][0]) || !std::isfinite(p.buf[idx][1]))
                    throw std::invalid_argument("to_spectral: non-finite input");
            }
    return F;
}

ScalarField from_spectral(const SpectralField& F) {
    const Grid3& g = F.grid;
    PlanPair& p = plans_for(g);
    std::size_t idx = 0;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            for (int l = 0; l < g.nz; ++l, ++idx) {
                const double s = center_sign(i, j, l);
                p.buf[idx][0] = F.m[idx].real() * s;
                p.buf[idx][1] = F.m[idx].imag() * s;
            }
    fftw_execute(p.bwd);

    ScalarField f(g);
    const double scale = 1.0 / (double(g.size()) * g.cell());
    for (std::size_t q = 0; q < p.n; ++q)
        f.v[q] = cd(p.buf[q][0] * scale, p.buf[q][1] * scale);
    return f;
}

double l2_norm(const ScalarField& f) {
    KahanSum acc;
    for (const cd& v : f.v) acc.add(std::norm(v));
    return std::sqrt(acc.value() * f.grid.cell());
}

double l2_norm(const SpectralField& F) {
    KahanSum acc;
    for (const cd& v : F.m) acc.add(std::norm(v));
    return std::sqrt(acc.value() / F.grid.volume());
}

} // namespace dzk
