#include "snewton/tridiagonal.hpp"

#include <cmath>
#include <string>

#include "snewton/error.hpp"

namespace snewton {

using Complex = std::complex<double>;

void solve_tridiagonal(std::span<const Complex> lower, std::span<const Complex> diag,
                       std::span<const Complex> upper, std::span<const Complex> rhs,
                       std::span<Complex> solution, std::span<Complex> scratch) {
  const std::size_t n = diag.size();
  if (n == 0) return;
  if (lower.size() != n || upper.size() != n || rhs.size() != n ||
      solution.size() != n || scratch.size() < n) {
    throw InvalidParameter("tridiagonal system: inconsistent vector lengths");
  }

  // Forward sweep: scratch holds the modified super-diagonal c'_i, solution
  // holds d'_i until the back substitution overwrites it in place.
  Complex pivot = diag[0];
  if (std::abs(pivot) == 0.0) throw NumericalFailure("tridiagonal solve: zero pivot in row 0");
  scratch[0] = upper[0] / pivot;
  solution[0] = rhs[0] / pivot;
  for (std::size_t i = 1; i < n; ++i) {
    pivot = diag[i] - lower[i] * scratch[i - 1];
    if (std::abs(pivot) == 0.0 || !std::isfinite(std::abs(pivot))) {
      throw NumericalFailure("tridiagonal solve: singular pivot in row " + std::to_string(i));
    }
    scratch[i] = upper[i] / pivot;
    solution[i] = (rhs[i] - lower[i] * solution[i - 1]) / pivot;
  }
  for (std::size_t i = n - 1; i-- > 0;) {
    solution[i] -= scratch[i] * solution[i + 1];
  }
}

std::vector<Complex> solve_tridiagonal(std::span<const Complex> lower,
                                       std::span<const Complex> diag,
                                       std::span<const Complex> upper,
                                       std::span<const Complex> rhs) {
  std::vector<Complex> solution(diag.size());
  std::vector<Complex> scratch(diag.size());
  solve_tridiagonal(lower, diag, upper, rhs, solution, scratch);
  return solution;
}

}  // namespace snewton
