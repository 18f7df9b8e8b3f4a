#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "dzk/grid.hpp"

namespace dzk {

using cd = std::complex<double>;

// Complex samples on the grid, z-fastest row-major.
struct ScalarField {
    Grid3 grid;
    std::vector<cd> v;

    ScalarField() = default;
    explicit ScalarField(const Grid3& g) : grid(g), v(g.size(), cd(0, 0)) {}

    cd& at(int i, int j, int l) { return v[grid.index(i, j, l)]; }
    const cd& at(int i, int j, int l) const { return v[grid.index(i, j, l)]; }
};

// Fourier coefficients under the convention
//   fhat(k) = integral over the box of exp(-i x.k) f(x) dx,
// stored in transform mode order (same layout as ScalarField).
struct SpectralField {
    Grid3 grid;
    std::vector<cd> m;

    SpectralField() = default;
    explicit SpectralField(const Grid3& g) : grid(g), m(g.size(), cd(0, 0)) {}

    cd& at(int i, int j, int l) { return m[grid.index(i, j, l)]; }
    const cd& at(int i, int j, int l) const { return m[grid.index(i, j, l)]; }
};

// Time-indexed frames on a shared grid.
struct FieldSeries {
    TimeGrid time;
    std::vector<ScalarField> frames;

    FieldSeries() = default;
    FieldSeries(const TimeGrid& tg, const Grid3& g)
        : time(tg), frames(tg.nt, ScalarField(g)) {}

    const Grid3& grid() const {
        if (frames.empty()) throw std::logic_error("FieldSeries: empty");
        return frames.front().grid;
    }
    int nt() const { return int(frames.size()); }

    void validate() const {
        if (int(frames.size()) != time.nt)
            throw std::invalid_argument("FieldSeries: frame count != nt");
        for (const auto& f : frames)
            if (!f.grid.same_shape(frames.front().grid))
                throw std::invalid_argument("FieldSeries: frames on different grids");
    }
};

} // namespace dzk
