#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace dzk {

// Periodic computational box [-l/2, l/2)^3 with per-axis resolution.
// Wavenumbers follow transform order: 0, 1, ..., n/2-1, -n/2, ..., -1
// (in units of 2*pi/l), so each axis is symmetric about 0 except for
// the single unpaired most-negative mode.
struct Grid3 {
    int nx = 0, ny = 0, nz = 0;
    double lx = 0, ly = 0, lz = 0;
    std::vector<double> kx, ky, kz;

    std::size_t size() const { return std::size_t(nx) * ny * nz; }
    std::size_t index(int i, int j, int l) const {
        return (std::size_t(i) * ny + j) * nz + l;
    }

    double hx() const { return lx / nx; }
    double hy() const { return ly / ny; }
    double hz() const { return lz / nz; }
    // cell volume of the rectangle quadrature rule
    double cell() const { return hx() * hy() * hz(); }
    double volume() const { return lx * ly * lz; }

    double x(int i) const { return -0.5 * lx + i * hx(); }
    double y(int j) const { return -0.5 * ly + j * hy(); }
    double z(int l) const { return -0.5 * lz + l * hz(); }

    bool same_shape(const Grid3& o) const {
        return nx == o.nx && ny == o.ny && nz == o.nz &&
               lx == o.lx && ly == o.ly && lz == o.lz;
    }
};

Grid3 make_grid(int nx, int ny, int nz, double lx, double ly, double lz);

// Uniform nodes t_j = j*T/(nt-1) on [0, T].
struct TimeGrid {
    double t_end = 0;
    int nt = 0;
    std::vector<double> nodes;

    double dt() const { return t_end / (nt - 1); }
};

TimeGrid make_time_grid(double t_end, int nt);

} // namespace dzk
