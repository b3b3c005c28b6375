#include "pclab/linalg.hpp"

#include <utility>

namespace pclab {

namespace {

// Pivot choice: a rational entry when one exists (cheapest to invert and it
// keeps later fractions inside the smaller field), otherwise the first nonzero.
int pick_pivot(const Mat& a, int col, int from_row) {
    int first_nonzero = -1;
    for (int r = from_row; r < static_cast<int>(a.size()); ++r) {
        if (a[r][col].is_zero()) continue;
        if (a[r][col].is_rational()) return r;
        if (first_nonzero < 0) first_nonzero = r;
    }
    return first_nonzero;
}

}  // namespace

int rref(Mat& a, std::vector<int>& pivot_cols) {
    pivot_cols.clear();
    if (a.empty()) return 0;
    const int rows = static_cast<int>(a.size());
    const int cols = static_cast<int>(a[0].size());
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int p = pick_pivot(a, col, rank);
        if (p < 0) continue;
        std::swap(a[rank], a[p]);
        const CycloElement inv = a[rank][col].inverse();
        for (int j = col; j < cols; ++j)
            if (!a[rank][j].is_zero()) a[rank][j] = a[rank][j] * inv;
        for (int r = 0; r < rows; ++r) {
            if (r == rank || a[r][col].is_zero()) continue;
            const CycloElement f = a[r][col];
            for (int j = col; j < cols; ++j)
                if (!a[rank][j].is_zero()) a[r][j] -= f * a[rank][j];
        }
        pivot_cols.push_back(col);
        ++rank;
    }
    return rank;
}

std::vector<Vec> kernel_basis(Mat a) {
    if (a.empty()) return {};
    const int cols = static_cast<int>(a[0].size());
    std::vector<int> pivot_cols;
    const int rank = rref(a, pivot_cols);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_cols) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (int free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        Vec v(cols);
        v[free_col] = CycloElement(1L);
        for (int r = 0; r < rank; ++r)
            if (!a[r][free_col].is_zero()) v[pivot_cols[r]] = -a[r][free_col];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vec> solve(Mat a, const Vec& b) {
    if (a.empty()) return Vec{};
    const int cols = static_cast<int>(a[0].size());
    for (size_t r = 0; r < a.size(); ++r) a[r].push_back(b[r]);
    std::vector<int> pivot_cols;
    const int rank = rref(a, pivot_cols);
    // inconsistent iff a pivot landed in the augmented column
    if (rank > 0 && pivot_cols.back() == cols) return std::nullopt;
    Vec x(cols);
    for (int r = 0; r < rank; ++r) x[pivot_cols[r]] = a[r][cols];
    return x;
}

CycloElement determinant(Mat a) {
    const int n = static_cast<int>(a.size());
    CycloElement det(1L);
    for (int col = 0; col < n; ++col) {
        int p = pick_pivot(a, col, col);
        if (p < 0) return CycloElement();
        if (p != col) {
            std::swap(a[col], a[p]);
            det = -det;
        }
        det = det * a[col][col];
        const CycloElement inv = a[col][col].inverse();
        for (int r = col + 1; r < n; ++r) {
            if (a[r][col].is_zero()) continue;
            const CycloElement f = a[r][col] * inv;
            for (int j = col; j < n; ++j)
                if (!a[col][j].is_zero()) a[r][j] -= f * a[col][j];
        }
    }
    return det;
}

}  // namespace pclab
