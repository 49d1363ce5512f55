#pragma once

#include <optional>
#include <vector>

#include "dunkl/cyclotomic.hpp"

namespace dunkl {

using Vec = std::vector<Cyc>;
using Mat = std::vector<Vec>;

inline Mat identity_matrix(const CycCtxPtr& ctx, int n) {
    Mat m(static_cast<size_t>(n), Vec(static_cast<size_t>(n), Cyc::zero(ctx)));
    for (int i = 0; i < n; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i)] = Cyc::from_int(ctx, 1);
    return m;
}

inline Mat mat_mul(const Mat& a, const Mat& b) {
    size_t n = a.size(), k = b.size(), m = b[0].size();
    const CycCtxPtr& ctx = a[0][0].context();
    Mat out(n, Vec(m, Cyc::zero(ctx)));
    for (size_t i = 0; i < n; ++i)
        for (size_t t = 0; t < k; ++t) {
            if (a[i][t].is_zero()) continue;
            for (size_t j = 0; j < m; ++j) {
                if (b[t][j].is_zero()) continue;
                out[i][j] += a[i][t] * b[t][j];
            }
        }
    return out;
}

inline Vec mat_vec(const Mat& a, const Vec& x) {
    const CycCtxPtr& ctx = a[0][0].context();
    Vec out(a.size(), Cyc::zero(ctx));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < x.size(); ++j) {
            if (a[i][j].is_zero() || x[j].is_zero()) continue;
            out[i] += a[i][j] * x[j];
        }
    return out;
}

inline Mat mat_add(const Mat& a, const Mat& b) {
    Mat out = a;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j) out[i][j] += b[i][j];
    return out;
}

inline Mat mat_scale(const Mat& a, const Cyc& c) {
    Mat out = a;
    for (auto& row : out)
        for (auto& x : row) x *= c;
    return out;
}

inline bool mat_eq(const Mat& a, const Mat& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != b[i].size()) return false;
        for (size_t j = 0; j < a[i].size(); ++j)
            if (!(a[i][j] == b[i][j])) return false;
    }
    return true;
}

inline Mat conj_transpose(const Mat& a) {
    size_t n = a.size(), m = a[0].size();
    Mat out(m, Vec(n, Cyc::zero(a[0][0].context())));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j) out[j][i] = a[i][j].conj();
    return out;
}

// Row echelon reduction in place; returns pivot columns. Pivot order is
// deterministic: leftmost nonzero column, topmost available row.
inline std::vector<int> row_reduce(Mat& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    size_t rows = m.size(), cols = m[0].size();
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t pr = row;
        while (pr < rows && m[pr][col].is_zero()) ++pr;
        if (pr == rows) continue;
        std::swap(m[row], m[pr]);
        Cyc inv = m[row][col].inverse();
        for (size_t c = col; c < cols; ++c) m[row][c] *= inv;
        for (size_t r = 0; r < rows; ++r) {
            if (r == row || m[r][col].is_zero()) continue;
            Cyc f = m[r][col];
            for (size_t c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
        }
        pivots.push_back(static_cast<int>(col));
        ++row;
    }
    return pivots;
}

inline int mat_rank(Mat m) { return static_cast<int>(row_reduce(m).size()); }

// Basis of {x : M x = 0}, deterministic (free columns in increasing order).
inline std::vector<Vec> kernel_basis(Mat m, int ncols, const CycCtxPtr& ctx) {
    if (m.empty()) m.push_back(Vec(static_cast<size_t>(ncols), Cyc::zero(ctx)));
    auto pivots = row_reduce(m);
    std::vector<bool> is_pivot(static_cast<size_t>(ncols), false);
    for (int p : pivots) is_pivot[static_cast<size_t>(p)] = true;
    std::vector<Vec> basis;
    for (int free = 0; free < ncols; ++free) {
        if (is_pivot[static_cast<size_t>(free)]) continue;
        Vec v(static_cast<size_t>(ncols), Cyc::zero(ctx));
        v[static_cast<size_t>(free)] = Cyc::from_int(ctx, 1);
        for (size_t r = 0; r < pivots.size(); ++r)
            v[static_cast<size_t>(pivots[r])] = -m[r][static_cast<size_t>(free)];
        basis.push_back(std::move(v));
    }
    return basis;
}

// Solves M x = rhs; returns nullopt if inconsistent. When the solution is
// required to be unique the caller checks rank == ncols.
inline std::optional<Vec> solve_linear(Mat m, Vec rhs, const CycCtxPtr& ctx) {
    size_t rows = m.size(), cols = m.empty() ? 0 : m[0].size();
    for (size_t r = 0; r < rows; ++r) m[r].push_back(rhs[r]);
    auto pivots = row_reduce(m);
    // Inconsistent iff a pivot lands in the augmented column.
    if (!pivots.empty() && pivots.back() == static_cast<int>(cols)) return std::nullopt;
    Vec x(cols, Cyc::zero(ctx));
    for (size_t r = 0; r < pivots.size(); ++r) x[static_cast<size_t>(pivots[r])] = m[r][cols];
    return x;
}

inline Cyc mat_det(Mat m) {
    const CycCtxPtr& ctx = m[0][0].context();
    size_t n = m.size();
    Cyc det = Cyc::from_int(ctx, 1);
    for (size_t col = 0; col < n; ++col) {
        size_t pr = col;
        while (pr < n && m[pr][col].is_zero()) ++pr;
        if (pr == n) return Cyc::zero(ctx);
        if (pr != col) {
            std::swap(m[pr], m[col]);
            det = -det;
        }
        det *= m[col][col];
        Cyc inv = m[col][col].inverse();
        for (size_t r = col + 1; r < n; ++r) {
            if (m[r][col].is_zero()) continue;
            Cyc f = m[r][col] * inv;
            for (size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

inline std::optional<Mat> mat_inverse(const Mat& a) {
    const CycCtxPtr& ctx = a[0][0].context();
    size_t n = a.size();
    Mat m = a;
    for (size_t i = 0; i < n; ++i) {
        Mat id = identity_matrix(ctx, static_cast<int>(n));
        for (size_t j = 0; j < n; ++j) m[i].push_back(id[i][j]);
    }
    auto pivots = row_reduce(m);
    if (pivots.size() != n) return std::nullopt;
    Mat out(n, Vec(n, Cyc::zero(ctx)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) out[i][j] = m[i][n + j];
    return out;
}

}  // namespace dunkl
