#pragma once

// Thin wrapper over FFTW real-to-complex transforms on n x n grids.
// Plans are cached per grid size and created with FFTW_ESTIMATE so the
// algorithm choice (and hence bitwise output) is reproducible run to run.

#include <complex>
#include <vector>

#include "qnlab/grid.hpp"

namespace qnlab {

/// Half-spectrum of an n x n real field: n rows, n/2+1 columns, row-major.
/// Row ix carries k1 = ix for ix <= n/2, else ix - n; column iy carries k2 = iy.
using Spectrum = std::vector<std::complex<double>>;

std::size_t spectrum_size(int n);

/// Unnormalized forward DFT (plain sum convention).
Spectrum fft_forward(const ScalarField& f);

/// Inverse of fft_forward, including the 1/n^2 normalization.
ScalarField fft_inverse(const Spectrum& s, const TorusGrid& grid);

/// Signed wavenumber of row ix.
inline int fft_k1(int ix, int n) { return ix <= n / 2 ? ix : ix - n; }

}  // namespace qnlab
