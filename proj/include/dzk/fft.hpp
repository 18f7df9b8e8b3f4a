#pragma once

#include "dzk/field.hpp"

namespace dzk {

// Forward/backward transforms between physical samples and Fourier
// coefficients. Convention (fixed artifact-wide):
//   fhat(k) = h * sum_j exp(-i x_j.k) f(x_j)        (h = cell volume)
//   f(x_j)  = (2*pi)^-3 * dk^3 * sum_k exp(i x_j.k) fhat(k)
// so from_spectral(to_spectral(f)) == f up to roundoff and the discrete
// Parseval identity holds exactly in exact arithmetic.
SpectralField to_spectral(const ScalarField& f);
ScalarField from_spectral(const SpectralField& F);

// L2 norm by grid quadrature (compensated sum, z-fastest order).
double l2_norm(const ScalarField& f);
// L2 norm from coefficients via Parseval.
double l2_norm(const SpectralField& F);

} // namespace dzk
