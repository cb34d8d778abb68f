#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace gowerslab {

// Unnormalized forward DFT: out[k] = sum_x in[x] e(-xk/M). Thread-safe;
// plans are cached per size and executed on per-call buffers.
std::vector<std::complex<double>> dft_forward(const std::vector<std::complex<double>>& in);

// Cyclic autocorrelation c[t] = sum_x f((x+t) mod M) conj(f(x)), t = 0..M-1.
std::vector<std::complex<double>> cyclic_autocorr(const std::vector<std::complex<double>>& f);

// Linear (aperiodic) autocorrelation of a finite window w of length W:
// returns c[t] for t = -(W-1)..(W-1) as a vector of length 2W-1 with
// c[t] at index t + (W-1), where c[t] = sum_x w[x+t] conj(w[x]).
std::vector<std::complex<double>> linear_autocorr(const std::vector<std::complex<double>>& w);

}  // namespace gowerslab
