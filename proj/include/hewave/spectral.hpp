#pragma once
#include <complex>
#include <vector>

namespace hew {

using rvec = std::vector<double>;
using cvec = std::vector<std::complex<double>>;

// Discrete Fourier coefficients of a real nodal field, normalized so that
// f(alpha_j) = sum_k c_k exp(i k alpha_j).  Bins are in FFT order:
// c[j] holds wavenumber k = j for j < n/2 and k = j - n for j >= n/2.
cvec to_modes(const rvec& f);
rvec to_nodes(const cvec& c);

// signed wavenumber of bin j
inline int bin_wavenumber(int j, int n) { return j < n / 2 ? j : j - n; }

double mean(const rvec& f);

// exact Fourier multipliers; all zero the Nyquist bin for odd symbols
rvec deriv(const rvec& f, int order = 1);
rvec hilbert(const rvec& f);          // symbol -i sgn(k), mean -> 0
rvec inv_deriv4(const rvec& f);       // symbol k^-4, mean projected out first
rvec project_zero_mean(const rvec& f);

// periodic antiderivative of the zero-mean part, itself zero-mean
rvec antideriv_zero_mean(const rvec& f);

// trigonometric series access: f = mean + sum_k (cos_k cos(k a) + sin_k sin(k a))
rvec sine_coeffs(const rvec& f, int kmax);
rvec cosine_coeffs(const rvec& f, int kmax);
rvec synth_sine(const rvec& a, int n_nodes);   // sum_k a[k-1] sin(k alpha)
rvec synth_cosine(const rvec& b, int n_nodes);

} // namespace hew
