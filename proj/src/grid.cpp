#include "dzk/grid.hpp"

#include <cmath>

namespace dzk {

namespace {

std::vector<double> wavenumbers(int n, double l) {
    std::vector<double> k(n);
    const double dk = 2.0 * M_PI / l;
    for (int m = 0; m < n; ++m) {
        const int mm = (m < n / 2) ? m : m - n;
        k[m] = dk * mm;
    }
    return k;
}

} // namespace

Grid3 make_grid(int nx, int ny, int nz, double lx, double ly, double lz) {
    for (int n : {nx, ny, nz}) {
        if (n < 4) throw std::invalid_argument("make_grid: resolution must be >= 4");
        if (n % 2 != 0) throw std::invalid_argument("make_grid: odd resolution");
    }
    for (double l : {lx, ly, lz}) {
        if (!(l > 0)) throw std::invalid_argument("make_grid: nonpositive box length");
    }
    Grid3 g;
    g.nx = nx; g.ny = ny; g.nz = nz;
    g.lx = lx; g.ly = ly; g.lz = lz;
    g.kx = wavenumbers(nx, lx);
    g.ky = wavenumbers(ny, ly);
    g.kz = wavenumbers(nz, lz);
    return g;
}

TimeGrid make_time_grid(double t_end, int nt) {
    if (!(t_end > 0)) throw std::invalid_argument("make_time_grid: t_end must be positive");
    if (nt < 2) throw std::invalid_argument("make_time_grid: need at least 2 nodes");
    TimeGrid tg;
    tg.t_end = t_end;
    tg.nt = nt;
    tg.nodes.resize(nt);
    for (int j = 0; j < nt; ++j) tg.nodes[j] = t_end * double(j) / double(nt - 1);
    tg.nodes.back() = t_end;
    return tg;
}

} // namespace dzk
