#include "dzk/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace dzk {

namespace {

static_assert(std::endian::native == std::endian::little,
              "field dumps assume a little-endian host");

void put_u64(std::ostream& os, std::uint64_t v) {
    os.write(reinterpret_cast<const char*>(&v), 8);
}
void put_f64(std::ostream& os, double v) {
    os.write(reinterpret_cast<const char*>(&v), 8);
}
std::uint64_t get_u64(std::istream& is) {
    std::uint64_t v = 0;
    is.read(reinterpret_cast<char*>(&v), 8);
    return v;
}
double get_f64(std::istream& is) {
    double v = 0;
    is.read(reinterpret_cast<char*>(&v), 8);
    return v;
}

} // namespace

void dump_field(const ScalarField& f, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("dump_field: cannot open " + path);
    os.write("DZK1", 4);
    put_u64(os, std::uint64_t(f.grid.nx));
    put_u64(os, std::uint64_t(f.grid.ny));
    put_u64(os, std::uint64_t(f.grid.nz));
    put_f64(os, f.grid.lx);
    put_f64(os, f.grid.ly);
    put_f64(os, f.grid.lz);
    os.write(reinterpret_cast<const char*>(f.v.data()),
             std::streamsize(f.v.size() * sizeof(cd)));
    if (!os) throw std::runtime_error("dump_field: write failed for " + path);
}

ScalarField load_field(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("load_field: cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "DZK1", 4) != 0)
        throw std::runtime_error("load_field: bad magic in " + path);
    const auto nx = get_u64(is), ny = get_u64(is), nz = get_u64(is);
    const double lx = get_f64(is), ly = get_f64(is), lz = get_f64(is);
    ScalarField f(make_grid(int(nx), int(ny), int(nz), lx, ly, lz));
    is.read(reinterpret_cast<char*>(f.v.data()),
            std::streamsize(f.v.size() * sizeof(cd)));
    if (!is) throw std::runtime_error("load_field: truncated file " + path);
    return f;
}

} // namespace dzk
