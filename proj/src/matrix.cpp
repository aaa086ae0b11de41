#include "mpd/matrix.hpp"

#include <algorithm>

namespace mpd {

Mat Mat::identity(std::int64_t n) {
    Mat I(n, n);
    for (std::int64_t i = 0; i < n; ++i) I.at(i, i) = 1;
    return I;
}

Mat mat_mul(const Zq& R, const Mat& A, const Mat& B) {
    if (A.cols != B.rows) throw PreconditionViolation("matrix shape mismatch in product");
    Mat C(A.rows, B.cols);
    for (std::int64_t i = 0; i < A.rows; ++i)
        for (std::int64_t k = 0; k < A.cols; ++k) {
            const std::uint64_t aik = A.at(i, k);
            if (aik == 0) continue;
            for (std::int64_t j = 0; j < B.cols; ++j) {
                const std::uint64_t b = B.at(k, j);
                if (b) C.at(i, j) = R.add(C.at(i, j), R.mul(aik, b));
            }
        }
    return C;
}

Mat mat_add(const Zq& R, const Mat& A, const Mat& B) {
    if (A.rows != B.rows || A.cols != B.cols)
        throw PreconditionViolation("matrix shape mismatch in sum");
    Mat C(A.rows, A.cols);
    for (std::size_t t = 0; t < A.a.size(); ++t) C.a[t] = R.add(A.a[t], B.a[t]);
    return C;
}

Mat mat_neg(const Zq& R, const Mat& A) {
    Mat C(A.rows, A.cols);
    for (std::size_t t = 0; t < A.a.size(); ++t) C.a[t] = R.neg(A.a[t]);
    return C;
}

Mat mat_scale(const Zq& R, std::uint64_t c, const Mat& A) {
    Mat C(A.rows, A.cols);
    for (std::size_t t = 0; t < A.a.size(); ++t) C.a[t] = R.mul(c, A.a[t]);
    return C;
}

bool is_zero_mat(const Mat& A) {
    return std::all_of(A.a.begin(), A.a.end(), [](std::uint64_t v) { return v == 0; });
}

namespace {

void swap_rows(Mat& M, std::int64_t i, std::int64_t j) {
    if (i == j) return;
    for (std::int64_t c = 0; c < M.cols; ++c) std::swap(M.at(i, c), M.at(j, c));
}

void swap_cols(Mat& M, std::int64_t i, std::int64_t j) {
    if (i == j) return;
    for (std::int64_t r = 0; r < M.rows; ++r) std::swap(M.at(r, i), M.at(r, j));
}

void scale_row(const Zq& R, Mat& M, std::int64_t i, std::uint64_t c) {
    for (std::int64_t j = 0; j < M.cols; ++j) M.at(i, j) = R.mul(c, M.at(i, j));
}

// row_i -= f * row_t
void addmul_row(const Zq& R, Mat& M, std::int64_t i, std::int64_t t, std::uint64_t f) {
    if (f == 0) return;
    for (std::int64_t j = 0; j < M.cols; ++j)
        M.at(i, j) = R.sub(M.at(i, j), R.mul(f, M.at(t, j)));
}

// col_j -= f * col_t
void addmul_col(const Zq& R, Mat& M, std::int64_t j, std::int64_t t, std::uint64_t f) {
    if (f == 0) return;
    for (std::int64_t r = 0; r < M.rows; ++r)
        M.at(r, j) = R.sub(M.at(r, j), R.mul(f, M.at(r, t)));
}

}  // namespace

SnfResult snf_local(const Mat& M, const Zq& R) {
    const std::int64_t k = std::min(M.rows, M.cols);
    SnfResult res;
    res.exponents.assign(static_cast<std::size_t>(k), R.big_n);
    res.transform = Mat::identity(M.rows);
    res.cotransform = Mat::identity(M.cols);
    Mat D = M;

    for (std::int64_t t = 0; t < k; ++t) {
        // Pivot: minimal valuation in the trailing submatrix, row-major ties.
        std::int64_t best_i = -1, best_j = -1, best_v = R.big_n;
        for (std::int64_t i = t; i < D.rows && best_v > 0; ++i)
            for (std::int64_t j = t; j < D.cols; ++j) {
                const std::int64_t v = R.val(D.at(i, j));
                if (v < best_v) {
                    best_v = v;
                    best_i = i;
                    best_j = j;
                    if (v == 0) break;
                }
            }
        if (best_i < 0) break;  // trailing submatrix vanishes mod p^N

        swap_rows(D, t, best_i);
        swap_rows(res.transform, t, best_i);
        swap_cols(D, t, best_j);
        swap_cols(res.cotransform, t, best_j);

        // Normalize the pivot to exactly p^v.
        std::uint64_t piv = D.at(t, t);
        std::uint64_t pv = 1;
        for (std::int64_t i = 0; i < best_v; ++i) pv *= R.p;
        const std::uint64_t u_inv = R.inv(piv / pv);
        scale_row(R, D, t, u_inv);
        scale_row(R, res.transform, t, u_inv);
        piv = D.at(t, t);

        // The pivot has minimal valuation, so every quotient below is exact.
        for (std::int64_t i = t + 1; i < D.rows; ++i) {
            const std::uint64_t f = D.at(i, t) == 0 ? 0 : R.div_exact(D.at(i, t), piv);
            addmul_row(R, D, i, t, f);
            addmul_row(R, res.transform, i, t, f);
        }
        for (std::int64_t j = t + 1; j < D.cols; ++j) {
            const std::uint64_t f = D.at(t, j) == 0 ? 0 : R.div_exact(D.at(t, j), piv);
            addmul_col(R, D, j, t, f);
            addmul_col(R, res.cotransform, j, t, f);
        }
        res.exponents[static_cast<std::size_t>(t)] = best_v;
    }
    return res;
}

Mat mat_inverse(const Zq& R, const Mat& M) {
    if (M.rows != M.cols) throw PreconditionViolation("inverse of a non-square matrix");
    const std::int64_t n = M.rows;
    Mat D = M, inv = Mat::identity(n);
    for (std::int64_t t = 0; t < n; ++t) {
        std::int64_t piv = -1;
        for (std::int64_t i = t; i < n; ++i)
            if (R.is_unit(D.at(i, t))) {
                piv = i;
                break;
            }
        if (piv < 0)
            throw PreconditionViolation("matrix is not invertible over Z/p^N");
        swap_rows(D, t, piv);
        swap_rows(inv, t, piv);
        const std::uint64_t c = R.inv(D.at(t, t));
        scale_row(R, D, t, c);
        scale_row(R, inv, t, c);
        for (std::int64_t i = 0; i < n; ++i) {
            if (i == t) continue;
            const std::uint64_t f = D.at(i, t);
            addmul_row(R, D, i, t, f);
            addmul_row(R, inv, i, t, f);
        }
    }
    return inv;
}

}  // namespace mpd
