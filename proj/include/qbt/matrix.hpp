#ifndef QBT_MATRIX_HPP
#define QBT_MATRIX_HPP

#include <cmath>
#include <cstddef>
#include <vector>

#include "qbt/types.hpp"

namespace qbt {

/// Dense complex matrix, row-major.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : r_(rows), c_(cols), a_(rows * cols, cx(0.0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
    static Matrix diag(const std::vector<double>& d) {
        Matrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }
    static Matrix diag_cx(const std::vector<cx>& d) {
        Matrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }

    cx& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const cx& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    cx* data() { return a_.data(); }
    const cx* data() const { return a_.data(); }

    Matrix& operator+=(const Matrix& o) {
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    Matrix& operator*=(cx s) {
        for (auto& v : a_) v *= s;
        return *this;
    }

  private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<cx> a_;
};

inline Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
inline Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
inline Matrix operator*(cx s, Matrix a) { return a *= s; }

inline Matrix mul(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cx aik = a(i, k);
            if (aik == cx(0.0)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

inline Matrix adjoint(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
    return t;
}

inline Matrix transpose(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

inline Matrix conj(const Matrix& a) {
    Matrix t(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(i, j) = std::conj(a(i, j));
    return t;
}

inline double norm_max(const Matrix& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j)));
    return m;
}

inline double norm_fro(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

inline double norm_1(const Matrix& a) {
    double m = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i) s += std::abs(a(i, j));
        m = std::max(m, s);
    }
    return m;
}

inline cx trace(const Matrix& a) {
    cx t = 0.0;
    for (std::size_t i = 0; i < a.rows() && i < a.cols(); ++i) t += a(i, i);
    return t;
}

inline bool all_finite(const Matrix& a) {
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag()))
                return false;
    return true;
}

/// Hermitian within the fixed relative tolerance used throughout: the flag is
/// legitimate only when ||A - A*||_max <= 1e-13 * ||A||_max (or A == 0).
inline bool is_hermitian(const Matrix& a, double rel_tol = 1e-13) {
    if (a.rows() != a.cols()) return false;
    double defect = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j <= i; ++j)
            defect = std::max(defect, std::abs(a(i, j) - std::conj(a(j, i))));
    return defect <= rel_tol * std::max(norm_max(a), 1e-300);
}

/// (A + A*)/2.
inline Matrix hermitian_part(const Matrix& a) {
    Matrix h(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    return h;
}

/// (A - A*)/(2i).
inline Matrix skew_part(const Matrix& a) {
    Matrix h(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            h(i, j) = (a(i, j) - std::conj(a(j, i))) / cx(0.0, 2.0);
    return h;
}

inline Matrix hcat(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
    }
    return c;
}

inline Matrix vcat(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows() + b.rows(), a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        for (std::size_t i = 0; i < a.rows(); ++i) c(i, j) = a(i, j);
        for (std::size_t i = 0; i < b.rows(); ++i) c(a.rows() + i, j) = b(i, j);
    }
    return c;
}

} // namespace qbt

#endif
