#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace locspec {

using Vector = std::vector<double>;

/// Dense row-major matrix of doubles. The only matrix type in the
/// library; everything (data, kernels, eigenvector blocks) is one of
/// these.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {
        if (rows == 0 || cols == 0)
            throw std::invalid_argument("DenseMatrix: dimensions must be >= 1");
    }

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    double* row_ptr(std::size_t i) { return data_.data() + i * cols_; }
    const double* row_ptr(std::size_t i) const { return data_.data() + i * cols_; }

    bool all_finite() const;
    double max_abs() const;

    bool operator==(const DenseMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix transpose(const DenseMatrix& m);
Vector matvec(const DenseMatrix& a, const Vector& v);

double norm2(const Vector& v);
double dot(const Vector& a, const Vector& b);

struct QrResult {
    DenseMatrix q;  // m x l, orthonormal columns
    DenseMatrix r;  // l x l, upper triangular
};

/// Thin QR of an m x l matrix (m >= l) via Householder reflections.
/// Columns whose remaining norm falls below 1e-12 * max|M| get no
/// reflector; the corresponding Q column is the image of the unit
/// vector under the preceding reflectors, so Q stays orthonormal even
/// for rank-deficient input.
QrResult qr_thin(const DenseMatrix& m);

struct SymmetricEvd {
    Vector values;        // descending
    DenseMatrix vectors;  // columns orthonormal, sign-fixed
};

/// Full eigendecomposition of a small dense symmetric matrix by cyclic
/// Jacobi rotations. Converges when off(S) <= 1e-12 * ||S||_F.
/// Throws if ||S - S^T||_max > 1e-10 * ||S||_max.
SymmetricEvd symmetric_evd_dense(const DenseMatrix& s);

/// Flip each column so its largest-magnitude entry (lowest index on
/// ties) is positive.
void fix_column_signs(DenseMatrix& u);

}  // namespace locspec
