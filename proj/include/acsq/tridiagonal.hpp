#pragma once

#include <span>
#include <vector>

namespace acsq {

/// Eigenpairs of a symmetric tridiagonal matrix, ascending.
struct EigenPairs {
  int n = 0;
  std::vector<double> values;
  std::vector<double> vectors;  // column-major n x values.size(), unit 2-norm

  std::span<const double> vector(int j) const {
    return {vectors.data() + static_cast<std::size_t>(j) * n, static_cast<std::size_t>(n)};
  }
};

/// The k lowest eigenpairs of tridiag(off, diag, off) via LAPACK dstevr.
/// Throws ConvergenceError if LAPACK reports failure.
EigenPairs lowest_eigenpairs(std::span<const double> diag, std::span<const double> off, int k);

}  // namespace acsq
