#pragma once

#include <vector>

#include "charsum/errors.hpp"
#include "charsum/numeric.hpp"

namespace charsum {

/// Forward DFT, X[j] = sum_k x[k] e^{-2 pi i jk/M}, for any length M >= 0.
/// Dispatches to the quadratic reference transform for M <= 64 and to a
/// Bluestein chirp-z transform (exact for prime and arbitrary composite M)
/// above that. Plans and twiddle tables are cached per length behind a mutex.
std::vector<cplx> dft(const std::vector<cplx>& x);

/// Inverse DFT with 1/M normalization: idft(dft(x)) == x up to rounding.
std::vector<cplx> idft(const std::vector<cplx>& x);

/// Quadratic-time reference transform, same convention as dft.
std::vector<cplx> dft_naive(const std::vector<cplx>& x);

/// Cyclic convolution c[t] = sum_s a[s] b[(t-s) mod M] of equal-length
/// sequences. Throws LengthMismatch when the lengths differ. Direct quadratic
/// evaluation for M <= 64, transform-based above.
std::vector<cplx> cyclic_convolve(const std::vector<cplx>& a, const std::vector<cplx>& b);

} // namespace charsum
