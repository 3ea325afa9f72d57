#ifndef ENRIQUES_LINALG_HPP
#define ENRIQUES_LINALG_HPP

#include <vector>

#include "enriques/rational.hpp"

namespace enriques {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;  // row major, rectangular

// In-place reduced row echelon form.  Returns the pivot column of each
// surviving row, in order.
inline std::vector<int> rref(RatMat& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    const size_t cols = m[0].size();
    size_t row = 0;
    for (size_t col = 0; col < cols && row < m.size(); ++col) {
        size_t sel = row;
        while (sel < m.size() && m[sel][col] == 0) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[row], m[sel]);
        Rat inv = 1 / m[row][col];
        for (size_t j = col; j < cols; ++j) m[row][j] *= inv;
        for (size_t i = 0; i < m.size(); ++i) {
            if (i == row || m[i][col] == 0) continue;
            Rat f = m[i][col];
            for (size_t j = col; j < cols; ++j) m[i][j] -= f * m[row][j];
        }
        pivots.push_back(static_cast<int>(col));
        ++row;
    }
    m.resize(row);  // drop zero rows
    return pivots;
}

inline Rat det(RatMat m) {
    const size_t n = m.size();
    for (const auto& r : m)
        if (r.size() != n) throw internal_error("det of non-square matrix");
    Rat d = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t sel = col;
        while (sel < n && m[sel][col] == 0) ++sel;
        if (sel == n) return Rat(0);
        if (sel != col) {
            std::swap(m[col], m[sel]);
            d = -d;
        }
        d *= m[col][col];
        Rat inv = 1 / m[col][col];
        for (size_t i = col + 1; i < n; ++i) {
            if (m[i][col] == 0) continue;
            Rat f = m[i][col] * inv;
            for (size_t j = col; j < n; ++j) m[i][j] -= f * m[col][j];
        }
    }
    return d;
}

// Solves A x = b exactly.  A must be square and invertible (callers pass
// negative definite intersection matrices, so this never fails for them).
inline RatVec solve_linear(RatMat a, RatVec b) {
    const size_t n = a.size();
    if (b.size() != n) throw internal_error("solve_linear: size mismatch");
    for (size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
    std::vector<int> piv = rref(a);
    if (piv.size() != n || (n > 0 && piv.back() >= static_cast<int>(n)))
        throw internal_error("solve_linear: singular system");
    RatVec x(n);
    for (size_t i = 0; i < n; ++i) x[piv[i]] = a[i][n];
    return x;
}

// Basis of the right nullspace of A (rows = equations).  Columns of A are
// the unknowns; each basis vector is returned in full coordinates.
inline RatMat nullspace(RatMat a, size_t ncols) {
    for (auto& r : a)
        if (r.size() != ncols) throw internal_error("nullspace: ragged matrix");
    std::vector<int> piv = rref(a);
    std::vector<bool> is_pivot(ncols, false);
    for (int p : piv) is_pivot[p] = true;
    RatMat basis;
    for (size_t freec = 0; freec < ncols; ++freec) {
        if (is_pivot[freec]) continue;
        RatVec v(ncols, Rat(0));
        v[freec] = 1;
        for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a[r][freec];
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace enriques

#endif
