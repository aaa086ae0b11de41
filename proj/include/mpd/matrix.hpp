// Dense matrices over Z/p^N and the local Smith normal form.  The pivot rule
// (minimal p-adic valuation, ties broken row-major) keeps every elimination
// step an exact division, which is what makes Smith reduction work over a
// chain ring rather than a field.
#pragma once

#include <cstdint>
#include <vector>

#include "mpd/ring.hpp"

namespace mpd {

struct Mat {
    std::int64_t rows = 0;
    std::int64_t cols = 0;
    std::vector<std::uint64_t> a;  // row-major

    Mat() = default;
    Mat(std::int64_t r, std::int64_t c)
        : rows(r), cols(c), a(static_cast<std::size_t>(r * c), 0) {}

    std::uint64_t& at(std::int64_t i, std::int64_t j) {
        return a[static_cast<std::size_t>(i * cols + j)];
    }
    std::uint64_t at(std::int64_t i, std::int64_t j) const {
        return a[static_cast<std::size_t>(i * cols + j)];
    }
    static Mat identity(std::int64_t n);
    bool operator==(const Mat& o) const {
        return rows == o.rows && cols == o.cols && a == o.a;
    }
};

Mat mat_mul(const Zq& R, const Mat& A, const Mat& B);
Mat mat_add(const Zq& R, const Mat& A, const Mat& B);
Mat mat_neg(const Zq& R, const Mat& A);
Mat mat_scale(const Zq& R, std::uint64_t c, const Mat& A);
bool is_zero_mat(const Mat& A);

// Smith normal form over Z/p^N:  transform * M * cotransform = diag(p^e_1,
// ..., p^e_k) with e_1 <= ... <= e_k <= N, k = min(rows, cols); exponents of
// vanished diagonal positions are reported as N.  Both transforms are
// invertible over Z/p^N.
struct SnfResult {
    std::vector<std::int64_t> exponents;
    Mat transform;    // left factor, rows x rows
    Mat cotransform;  // right factor, cols x cols
};

SnfResult snf_local(const Mat& M, const Zq& R);

// Inverse of a matrix that is invertible over Z/p^N (all Smith exponents 0);
// throws PreconditionViolation otherwise.
Mat mat_inverse(const Zq& R, const Mat& M);

}  // namespace mpd
