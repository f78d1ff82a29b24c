#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace maya::num {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(size_t rows, size_t cols, T init = T(0))
        : rows_(rows), cols_(cols), a_(rows * cols, init) {}

    static Matrix identity(size_t n) {
        Matrix m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    T& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols_ != y.rows_) throw std::invalid_argument("Matrix: shape mismatch");
        Matrix r(x.rows_, y.cols_);
        for (size_t i = 0; i < x.rows_; ++i)
            for (size_t k = 0; k < x.cols_; ++k) {
                const T& xv = x(i, k);
                for (size_t j = 0; j < y.cols_; ++j) r(i, j) += xv * y(k, j);
            }
        return r;
    }

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<T> a_;
};

inline double abs_value(double x) { return std::abs(x); }
inline double abs_value(const std::complex<double>& x) { return std::abs(x); }

// LU with partial pivoting; Scalar is double or complex<double>.
template <class Scalar>
struct LU {
    Matrix<Scalar> lu;
    std::vector<size_t> perm;
    int perm_sign = 1;
    bool singular = false;

    explicit LU(Matrix<Scalar> m, double pivot_tol = 0.0) : lu(std::move(m)) {
        size_t n = lu.rows();
        if (lu.cols() != n) throw std::invalid_argument("LU: square matrix required");
        perm.resize(n);
        for (size_t i = 0; i < n; ++i) perm[i] = i;
        for (size_t k = 0; k < n; ++k) {
            size_t p = k;
            double best = abs_value(lu(k, k));
            for (size_t i = k + 1; i < n; ++i) {
                double v = abs_value(lu(i, k));
                if (v > best) { best = v; p = i; }
            }
            if (best <= pivot_tol) { singular = true; return; }
            if (p != k) {
                for (size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(p, j));
                std::swap(perm[k], perm[p]);
                perm_sign = -perm_sign;
            }
            for (size_t i = k + 1; i < n; ++i) {
                Scalar f = lu(i, k) / lu(k, k);
                lu(i, k) = f;
                for (size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
            }
        }
    }

    Scalar det() const {
        if (singular) return Scalar(0);
        Scalar d = static_cast<double>(perm_sign);
        for (size_t i = 0; i < lu.rows(); ++i) d *= lu(i, i);
        return d;
    }

    std::vector<Scalar> solve(const std::vector<Scalar>& b) const {
        if (singular) throw std::runtime_error("LU: singular matrix");
        size_t n = lu.rows();
        std::vector<Scalar> x(n);
        for (size_t i = 0; i < n; ++i) x[i] = b[perm[i]];
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < i; ++j) x[i] -= lu(i, j) * x[j];
        for (size_t i = n; i-- > 0;) {
            for (size_t j = i + 1; j < n; ++j) x[i] -= lu(i, j) * x[j];
            x[i] /= lu(i, i);
        }
        return x;
    }

    Matrix<Scalar> inverse() const {
        size_t n = lu.rows();
        Matrix<Scalar> inv(n, n);
        std::vector<Scalar> e(n, Scalar(0));
        for (size_t j = 0; j < n; ++j) {
            e.assign(n, Scalar(0));
            e[j] = Scalar(1);
            auto col = solve(e);
            for (size_t i = 0; i < n; ++i) inv(i, j) = col[i];
        }
        return inv;
    }
};

// Fraction-free-style elimination over an exact field (Rational): plain
// Gaussian elimination with exact arithmetic, first-nonzero pivoting.
template <class F>
F exact_det(Matrix<F> m) {
    size_t n = m.rows();
    if (m.cols() != n) throw std::invalid_argument("exact_det: square matrix required");
    F det(1);
    int sign = 1;
    for (size_t k = 0; k < n; ++k) {
        size_t p = k;
        while (p < n && m(p, k) == F(0)) ++p;
        if (p == n) return F(0);
        if (p != k) {
            for (size_t j = k; j < n; ++j) std::swap(m(k, j), m(p, j));
            sign = -sign;
        }
        det *= m(k, k);
        for (size_t i = k + 1; i < n; ++i) {
            if (m(i, k) == F(0)) continue;
            F f = m(i, k) / m(k, k);
            for (size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return sign < 0 ? -det : det;
}

template <class F>
Matrix<F> exact_inverse(Matrix<F> m) {
    size_t n = m.rows();
    if (m.cols() != n) throw std::invalid_argument("exact_inverse: square matrix required");
    Matrix<F> inv = Matrix<F>::identity(n);
    for (size_t k = 0; k < n; ++k) {
        size_t p = k;
        while (p < n && m(p, k) == F(0)) ++p;
        if (p == n) throw std::runtime_error("exact_inverse: singular matrix");
        if (p != k)
            for (size_t j = 0; j < n; ++j) {
                std::swap(m(k, j), m(p, j));
                std::swap(inv(k, j), inv(p, j));
            }
        F piv = m(k, k);
        for (size_t j = 0; j < n; ++j) {
            m(k, j) /= piv;
            inv(k, j) /= piv;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == k || m(i, k) == F(0)) continue;
            F f = m(i, k);
            for (size_t j = 0; j < n; ++j) {
                m(i, j) -= f * m(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

}  // namespace maya::num
