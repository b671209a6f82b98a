#include "locspec/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace locspec {

bool DenseMatrix::all_finite() const {
    for (double v : data_)
        if (!std::isfinite(v)) return false;
    return true;
}

double DenseMatrix::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("matmul: inner dimensions do not match");
    DenseMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* arow = a.row_ptr(i);
        double* crow = c.row_ptr(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = arow[k];
            if (aik == 0.0) continue;
            const double* brow = b.row_ptr(k);
            for (std::size_t j = 0; j < b.cols(); ++j) crow[j] += aik * brow[j];
        }
    }
    return c;
}

DenseMatrix transpose(const DenseMatrix& m) {
    DenseMatrix t(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
    return t;
}

Vector matvec(const DenseMatrix& a, const Vector& v) {
    if (a.cols() != v.size())
        throw std::invalid_argument("matvec: dimension mismatch");
    Vector y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* row = a.row_ptr(i);
        double acc = 0.0;
        for (std::size_t j = 0; j < v.size(); ++j) acc += row[j] * v[j];
        y[i] = acc;
    }
    return y;
}

double norm2(const Vector& v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc);
}

double dot(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

QrResult qr_thin(const DenseMatrix& m) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    if (rows < cols)
        throw std::invalid_argument("qr_thin: need rows >= cols");

    DenseMatrix a = m;
    const double drop_tol = 1e-12 * m.max_abs();

    // Householder vectors; empty vector means step j was skipped.
    std::vector<Vector> reflectors(cols);

    for (std::size_t j = 0; j < cols; ++j) {
        double nrm = 0.0;
        for (std::size_t i = j; i < rows; ++i) nrm += a(i, j) * a(i, j);
        nrm = std::sqrt(nrm);
        if (nrm <= drop_tol) continue;  // near-zero column, leave direction to e_j

        const double alpha = a(j, j) >= 0.0 ? -nrm : nrm;
        Vector v(rows - j);
        v[0] = a(j, j) - alpha;
        for (std::size_t i = j + 1; i < rows; ++i) v[i - j] = a(i, j);
        const double vnorm = norm2(v);
        if (vnorm == 0.0) continue;
        for (double& x : v) x /= vnorm;

        // apply I - 2vv^T to trailing columns
        for (std::size_t c = j; c < cols; ++c) {
            double proj = 0.0;
            for (std::size_t i = j; i < rows; ++i) proj += v[i - j] * a(i, c);
            proj *= 2.0;
            for (std::size_t i = j; i < rows; ++i) a(i, c) -= proj * v[i - j];
        }
        reflectors[j] = std::move(v);
    }

    QrResult out{DenseMatrix(rows, cols), DenseMatrix(cols, cols)};
    for (std::size_t i = 0; i < cols; ++i)
        for (std::size_t j = i; j < cols; ++j) out.r(i, j) = a(i, j);

    // Q = H_0 ... H_{l-1} applied to the first l identity columns
    for (std::size_t j = 0; j < cols; ++j) out.q(j, j) = 1.0;
    for (std::size_t j = cols; j-- > 0;) {
        if (reflectors[j].empty()) continue;
        const Vector& v = reflectors[j];
        for (std::size_t c = 0; c < cols; ++c) {
            double proj = 0.0;
            for (std::size_t i = j; i < rows; ++i) proj += v[i - j] * out.q(i, c);
            proj *= 2.0;
            for (std::size_t i = j; i < rows; ++i) out.q(i, c) -= proj * v[i - j];
        }
    }

    // positive-diagonal convention for R
    for (std::size_t j = 0; j < cols; ++j) {
        if (out.r(j, j) >= 0.0) continue;
        for (std::size_t c = j; c < cols; ++c) out.r(j, c) = -out.r(j, c);
        for (std::size_t i = 0; i < rows; ++i) out.q(i, j) = -out.q(i, j);
    }
    return out;
}

void fix_column_signs(DenseMatrix& u) {
    for (std::size_t j = 0; j < u.cols(); ++j) {
        std::size_t arg = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < u.rows(); ++i) {
            const double mag = std::abs(u(i, j));
            if (mag > best) {
                best = mag;
                arg = i;
            }
        }
        if (u(arg, j) < 0.0)
            for (std::size_t i = 0; i < u.rows(); ++i) u(i, j) = -u(i, j);
    }
}

namespace {

double off_diagonal_frobenius(const DenseMatrix& s) {
    double acc = 0.0;
    for (std::size_t i = 0; i < s.rows(); ++i)
        for (std::size_t j = 0; j < s.cols(); ++j)
            if (i != j) acc += s(i, j) * s(i, j);
    return std::sqrt(acc);
}

double frobenius(const DenseMatrix& s) {
    double acc = 0.0;
    for (std::size_t i = 0; i < s.rows(); ++i)
        for (std::size_t j = 0; j < s.cols(); ++j) acc += s(i, j) * s(i, j);
    return std::sqrt(acc);
}

}  // namespace

SymmetricEvd symmetric_evd_dense(const DenseMatrix& s) {
    const std::size_t n = s.rows();
    if (n != s.cols())
        throw std::invalid_argument("symmetric_evd_dense: matrix not square");

    double asym = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            asym = std::max(asym, std::abs(s(i, j) - s(j, i)));
    if (asym > 1e-10 * std::max(s.max_abs(), 1e-300))
        throw std::invalid_argument("symmetric_evd_dense: input is not symmetric");

    DenseMatrix a = s;
    DenseMatrix v = DenseMatrix::identity(n);

    const double stop = 1e-12 * frobenius(s);
    const int max_sweeps = 64;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_frobenius(a) <= stop) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double app = a(p, p);
                const double aqq = a(q, q);
                const double tau = (aqq - app) / (2.0 * apq);
                double t;
                if (tau >= 0.0)
                    t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
                else
                    t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = t * c;

                for (std::size_t i = 0; i < n; ++i) {
                    const double aip = a(i, p);
                    const double aiq = a(i, q);
                    a(i, p) = c * aip - sn * aiq;
                    a(i, q) = sn * aip + c * aiq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double api = a(p, i);
                    const double aqi = a(q, i);
                    a(p, i) = c * api - sn * aqi;
                    a(q, i) = sn * api + c * aqi;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vip = v(i, p);
                    const double viq = v(i, q);
                    v(i, p) = c * vip - sn * viq;
                    v(i, q) = sn * vip + c * viq;
                }
            }
        }
    }

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

    SymmetricEvd out{Vector(n), DenseMatrix(n, n)};
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = a(idx[j], idx[j]);
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, idx[j]);
    }
    fix_column_signs(out.vectors);
    return out;
}

}  // namespace locspec
