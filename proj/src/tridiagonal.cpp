#include "acsq/tridiagonal.hpp"

#include <lapacke.h>

#include <cmath>
#include <string>

#include "acsq/error.hpp"

namespace acsq {

EigenPairs lowest_eigenpairs(std::span<const double> diag, std::span<const double> off, int k) {
  const auto n = static_cast<lapack_int>(diag.size());
  if (n < 1 || off.size() + 1 != diag.size())
    throw Error(ErrorKind::InvalidArgument, "tridiagonal: off-diagonal must have n - 1 entries");
  if (k < 1 || k > n) throw Error(ErrorKind::InvalidArgument, "tridiagonal: need 1 <= k <= n");

  std::vector<double> d(diag.begin(), diag.end());
  std::vector<double> e(off.begin(), off.end());
  e.push_back(0.0);  // dstevr uses e as workspace of length n

  EigenPairs out;
  out.n = static_cast<int>(n);
  out.values.resize(static_cast<std::size_t>(n));
  out.vectors.resize(static_cast<std::size_t>(n) * k);
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(k));
  lapack_int found = 0;

  // Geometric radial grids give strongly graded matrices (entries near r_min
  // exceed the low eigenvalues by ~1e12). An absolute tolerance at the
  // underflow threshold keeps bisection accurate relative to each eigenvalue.
  const double abstol = 2.0 * LAPACKE_dlamch('S');
  const lapack_int info =
      LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', n, d.data(), e.data(), 0.0, 0.0, 1, k, abstol, &found,
                     out.values.data(), out.vectors.data(), n, support.data());
  if (info != 0 || found != k)
    throw Error(ErrorKind::ConvergenceError,
                "LAPACK dstevr failed (info=" + std::to_string(info) + ", found " +
                    std::to_string(found) + " of " + std::to_string(k) + ")");
  out.values.resize(static_cast<std::size_t>(k));

  // Fix the sign so results do not depend on LAPACK internals.
  for (int j = 0; j < k; ++j) {
    double* v = out.vectors.data() + static_cast<std::size_t>(j) * n;
    double big = 0.0;
    for (lapack_int i = 0; i < n; ++i)
      if (std::abs(v[i]) > std::abs(big)) big = v[i];
    if (big < 0.0)
      for (lapack_int i = 0; i < n; ++i) v[i] = -v[i];
  }
  return out;
}

}  // namespace acsq
