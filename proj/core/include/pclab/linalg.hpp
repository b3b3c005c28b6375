#ifndef PCLAB_LINALG_HPP
#define PCLAB_LINALG_HPP

#include <optional>
#include <vector>

#include "pclab/cyclotomic.hpp"

namespace pclab {

using Vec = std::vector<CycloElement>;
using Mat = std::vector<Vec>;

/// In-place reduced row echelon form (exact field arithmetic, rational pivots
/// preferred). Returns the rank; pivot_cols receives the pivot column of each
/// nonzero row.
int rref(Mat& a, std::vector<int>& pivot_cols);

/// Basis of the null space {x : A x = 0}.
std::vector<Vec> kernel_basis(Mat a);

/// One solution of A x = b with free variables set to zero, or nullopt.
std::optional<Vec> solve(Mat a, const Vec& b);

/// Exact determinant of a square matrix.
CycloElement determinant(Mat a);

}  // namespace pclab

#endif
