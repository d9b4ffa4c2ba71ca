#pragma once
#include <complex>
#include <vector>

namespace swt::dft {

// In-place multidimensional DFT of a row-major complex array.  forward() is the
// unnormalized transform (negative exponent); inverse() applies the 1/N factor,
// so inverse(forward(x)) == x and the pair is a scaled isometry:
// sum |X|^2 = N * sum |x|^2.
//
// Plans are cached per shape behind a mutex; execution itself is reentrant, so
// concurrent transforms on distinct buffers are safe.
void forward(const std::vector<int>& shape, std::complex<double>* data);
void inverse(const std::vector<int>& shape, std::complex<double>* data);

}  // namespace swt::dft
