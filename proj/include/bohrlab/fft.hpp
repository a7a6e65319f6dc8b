#ifndef BOHRLAB_FFT_HPP
#define BOHRLAB_FFT_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace bohrlab {

// In-place radix-2 FFT; size must be a power of two.
// Forward transform computes X[k] = sum_n x[n] e(-nk/N); inverse divides by N.
void fft(std::vector<std::complex<double>>& a, bool inverse);

std::size_t next_pow2(std::size_t n);

} // namespace bohrlab

#endif
