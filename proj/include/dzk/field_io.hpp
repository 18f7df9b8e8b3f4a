#pragma once

#include <string>

#include "dzk/field.hpp"

namespace dzk {

// Binary field dump, bit-exact round trip:
//   magic "DZK1"
//   nx, ny, nz            little-endian uint64
//   lx, ly, lz            little-endian binary64
//   (re, im) sample pairs binary64, z-fastest row-major
void dump_field(const ScalarField& f, const std::string& path);
ScalarField load_field(const std::string& path);

} // namespace dzk
