#pragma once

#include "dzk/fft.hpp"

namespace dzk {

// Largest retained mode index under the 2/3 rule. Chosen so that aliased
// images of products of retained modes always land outside the retained
// band, including when n is divisible by 3.
inline int dealias_limit(int n) { return (n - 1) / 3; }

// Zero every mode with |m| > dealias_limit on any axis.
void truncate_two_thirds(SpectralField& F);

// Product computed as the exact spectral convolution of the 2/3-truncated
// inputs, truncated again. Bilinear and commutative.
ScalarField dealiased_product(const ScalarField& f, const ScalarField& g);

} // namespace dzk
