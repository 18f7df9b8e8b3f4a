#include "dzk/families.hpp"

#include <cmath>
#include <sstream>

#include "dzk/bump.hpp"
#include "dzk/fft.hpp"

namespace dzk {

std::uint64_t mix64(std::uint64_t x) {
    // splitmix64 finalizer
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

double uniform01(std::uint64_t h) {
    return (double(h >> 11) + 0.5) * 0x1.0p-53;
}

void gauss_pair(std::uint64_t h1, std::uint64_t h2, double& g1, double& g2) {
    const double u1 = uniform01(h1);
    const double u2 = uniform01(h2);
    const double r = std::sqrt(-2.0 * std::log(u1));
    g1 = r * std::cos(2.0 * M_PI * u2);
    g2 = r * std::sin(2.0 * M_PI * u2);
}

namespace {

std::uint64_t mode_key(std::uint64_t seed, int index, int mx, int my, int mz, int salt) {
    std::uint64_t h = mix64(seed ^ 0x5a5a5a5a5a5a5a5aull);
    h = mix64(h ^ std::uint64_t(std::uint32_t(index)));
    h = mix64(h ^ (std::uint64_t(std::uint32_t(mx)) << 32 | std::uint32_t(my)));
    h = mix64(h ^ (std::uint64_t(std::uint32_t(mz)) << 32 | std::uint32_t(salt)));
    return h;
}

int mode_slot(int m, int n) { return m >= 0 ? m : m + n; }

} // namespace

ScalarField random_bandlimited(const Grid3& g, std::uint64_t seed, int index, int band,
                               double spectral_slope, int band_z) {
    if (band_z < 0) band_z = band;
    if (band < 1 || band_z < 1)
        throw std::invalid_argument("random_bandlimited: band must be >= 1");
    if (band >= g.nx / 2 || band >= g.ny / 2 || band_z >= g.nz / 2)
        throw std::invalid_argument("random_bandlimited: band not resolved by grid");
    SpectralField F(g);
    const double dkx = 2.0 * M_PI / g.lx;
    const double dky = 2.0 * M_PI / g.ly;
    const double dkz = 2.0 * M_PI / g.lz;
    for (int mx = -band; mx <= band; ++mx)
        for (int my = -band; my <= band; ++my)
            for (int mz = -band_z; mz <= band_z; ++mz) {
                double g1, g2;
                gauss_pair(mode_key(seed, index, mx, my, mz, 0),
                           mode_key(seed, index, mx, my, mz, 1), g1, g2);
                const double k2 = dkx * mx * dkx * mx + dky * my * dky * my + dkz * mz * dkz * mz;
                const double amp = std::pow(1.0 + k2, -0.5 * spectral_slope);
                F.at(mode_slot(mx, g.nx), mode_slot(my, g.ny), mode_slot(mz, g.nz)) =
                    amp * cd(g1, g2);
            }
    return from_spectral(F);
}

ScalarField gaussian_field(const Grid3& g, const FamilySpec& spec) {
    ScalarField f(g);
    const double kx = 2.0 * M_PI / g.lx * spec.mod_kx;
    const double ky = 2.0 * M_PI / g.ly * spec.mod_ky;
    const double kz = 2.0 * M_PI / g.lz * spec.mod_kz;
    std::size_t q = 0;
    for (int i = 0; i < g.nx; ++i) {
        const double x = g.x(i);
        const double ex = spec.sigma_x > 0 ? x * x / (2.0 * spec.sigma_x * spec.sigma_x) : 0.0;
        for (int j = 0; j < g.ny; ++j) {
            const double y = g.y(j);
            const double ey = spec.sigma_y > 0 ? y * y / (2.0 * spec.sigma_y * spec.sigma_y) : 0.0;
            for (int l = 0; l < g.nz; ++l, ++q) {
                const double z = g.z(l);
                const double ez =
                    spec.sigma_z > 0 ? z * z / (2.0 * spec.sigma_z * spec.sigma_z) : 0.0;
                f.v[q] = spec.amplitude * std::exp(-(ex + ey + ez)) *
                         std::polar(1.0, kx * x + ky * y + kz * z);
            }
        }
    }
    return f;
}

ScalarField dyadic_theta_field(const Grid3& g, int level) {
    if (level < 0) throw std::invalid_argument("dyadic_theta_field: level must be >= 0");
    const double scale = std::ldexp(1.0, level);
    SpectralField F(g);
    std::size_t idx = 0;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            for (int l = 0; l < g.nz; ++l, ++idx) {
                const double r = std::sqrt(g.kx[i] * g.kx[i] + g.ky[j] * g.ky[j] +
                                           g.kz[l] * g.kz[l]) / scale;
                F.m[idx] = smooth_step((r - 0.5) / 0.5) * smooth_step((4.0 - r) / 2.0);
            }
    return from_spectral(F);
}

ScalarField parabolic_rescale(const Grid3& g, const ScalarField& f, int lambda) {
    if (lambda < 1) throw std::invalid_argument("parabolic_rescale: lambda must be >= 1");
    const SpectralField F = to_spectral(f);
    double peak = 0.0;
    for (const cd& v : F.m) peak = std::max(peak, std::abs(v));
    const double floor = 1e-12 * peak; // transform roundoff is not content
    SpectralField out(g);
    for (int i = 0; i < g.nx; ++i) {
        const int mx = (i < g.nx / 2) ? i : i - g.nx;
        for (int j = 0; j < g.ny; ++j) {
            const int my = (j < g.ny / 2) ? j : j - g.ny;
            for (int l = 0; l < g.nz; ++l) {
                const int mz = (l < g.nz / 2) ? l : l - g.nz;
                const cd v = F.at(i, j, l);
                if (std::abs(v) <= floor) continue;
                const int tx = lambda * mx, ty = lambda * my, tz = lambda * lambda * mz;
                if (std::abs(tx) >= g.nx / 2 || std::abs(ty) >= g.ny / 2 ||
                    std::abs(tz) >= g.nz / 2)
                    throw std::invalid_argument("parabolic_rescale: scaled mode off grid");
                out.at(mode_slot(tx, g.nx), mode_slot(ty, g.ny), mode_slot(tz, g.nz)) = v;
            }
        }
    }
    return from_spectral(out);
}

ScalarField make_family_member(const Grid3& g, const FamilySpec& spec, int index) {
    ScalarField f;
    switch (spec.kind) {
        case FamilyKind::RandomBandlimited:
            f = random_bandlimited(g, spec.seed, index, spec.band, spec.spectral_slope,
                                   spec.band_z);
            break;
        case FamilyKind::Gaussian: {
            // jitter widths deterministically so members differ
            FamilySpec s = spec;
            if (index > 0) {
                const double j1 = 0.75 + 0.5 * uniform01(mode_key(spec.seed, index, 0, 0, 0, 7));
                const double j2 = 0.75 + 0.5 * uniform01(mode_key(spec.seed, index, 0, 0, 0, 8));
                if (s.sigma_x > 0) s.sigma_x *= j1;
                if (s.sigma_y > 0) s.sigma_y *= j2;
            }
            f = gaussian_field(g, s);
            break;
        }
        case FamilyKind::DyadicTheta:
            f = dyadic_theta_field(g, spec.level + index);
            break;
        case FamilyKind::Rescaled: {
            const int bz = spec.band_z < 0 ? 1 : spec.band_z;
            const ScalarField base =
                random_bandlimited(g, spec.seed, 0, spec.band, spec.spectral_slope, bz);
            const int lambda = int(std::lround(spec.scales.at(index)));
            f = parabolic_rescale(g, base, lambda);
            break;
        }
    }
    if (spec.swapped) {
        ScalarField sw(f.grid); // relabel samples; grid must be x/y symmetric
        if (f.grid.nx != f.grid.ny || f.grid.lx != f.grid.ly)
            throw std::invalid_argument("FamilySpec.swapped needs nx == ny and lx == ly");
        for (int i = 0; i < f.grid.nx; ++i)
            for (int j = 0; j < f.grid.ny; ++j)
                for (int l = 0; l < f.grid.nz; ++l) sw.at(j, i, l) = f.at(i, j, l);
        return sw;
    }
    return f;
}

std::vector<cd> smooth_time_profile(std::uint64_t seed, int index, const TimeGrid& tg) {
    double c[6];
    gauss_pair(mode_key(seed, index, 1, 0, 0, 11), mode_key(seed, index, 1, 0, 0, 12), c[0], c[1]);
    gauss_pair(mode_key(seed, index, 2, 0, 0, 13), mode_key(seed, index, 2, 0, 0, 14), c[2], c[3]);
    gauss_pair(mode_key(seed, index, 3, 0, 0, 15), mode_key(seed, index, 3, 0, 0, 16), c[4], c[5]);
    std::vector<cd> prof(tg.nt);
    for (int j = 0; j < tg.nt; ++j) {
        const double u = tg.nodes[j] / (2.0 * tg.t_end);
        prof[j] = cd(c[0], 0.3 * c[1]) + cd(c[2], c[3]) * std::polar(1.0, 2.0 * M_PI * u) +
                  cd(c[4], c[5]) * std::polar(0.5, 4.0 * M_PI * u);
    }
    return prof;
}

std::string FamilySpec::describe() const {
    std::ostringstream os;
    switch (kind) {
        case FamilyKind::RandomBandlimited:
            os << "random-bandlimited(band=" << band << ",slope=" << spectral_slope << ")";
            break;
        case FamilyKind::Gaussian:
            os << "gaussian(sx=" << sigma_x << ",sy=" << sigma_y << ",sz=" << sigma_z << ")";
            break;
        case FamilyKind::DyadicTheta:
            os << "dyadic-theta(level=" << level << ")";
            break;
        case FamilyKind::Rescaled:
            os << "rescaled(band=" << band << ",n=" << scales.size() << ")";
            break;
    }
    os << " count=" << count << " seed=" << seed;
    return os.str();
}

} // namespace dzk
