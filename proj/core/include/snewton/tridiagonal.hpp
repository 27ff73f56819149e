#pragma once

#include <complex>
#include <span>
#include <vector>

namespace snewton {

/// Thomas algorithm for a complex tridiagonal system A x = rhs.
///
/// `lower[i]` multiplies x[i-1] in row i (lower[0] is ignored), `upper[i]`
/// multiplies x[i+1] (the last entry is ignored). No pivoting is performed;
/// a vanishing pivot raises NumericalFailure. `scratch` must hold n values
/// and is overwritten.
void solve_tridiagonal(std::span<const std::complex<double>> lower,
                       std::span<const std::complex<double>> diag,
                       std::span<const std::complex<double>> upper,
                       std::span<const std::complex<double>> rhs,
                       std::span<std::complex<double>> solution,
                       std::span<std::complex<double>> scratch);

std::vector<std::complex<double>> solve_tridiagonal(
    std::span<const std::complex<double>> lower,
    std::span<const std::complex<double>> diag,
    std::span<const std::complex<double>> upper,
    std::span<const std::complex<double>> rhs);

}  // namespace snewton
