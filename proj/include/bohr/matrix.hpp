#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "bohr/errors.hpp"

namespace bohr {

using cplx = std::complex<double>;

// Dense complex matrix, row-major. The single carrier type for every operator
// in the library; real symmetric coefficient matrices use it with zero
// imaginary parts. Values are immutable in spirit: all operations below
// return fresh matrices.
class ComplexMatrix {
public:
    ComplexMatrix() : rows_(1), cols_(1), data_(1, cplx{0.0, 0.0}) {}

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0}) {
        if (rows == 0 || cols == 0) throw ShapeError("ComplexMatrix: rows and cols must be >= 1");
    }

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (rows == 0 || cols == 0) throw ShapeError("ComplexMatrix: rows and cols must be >= 1");
        if (data_.size() != rows * cols)
            throw ShapeError("ComplexMatrix: entries length != rows*cols");
        for (const cplx& z : data_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw BadParam("ComplexMatrix: non-finite entry");
    }

    // 2D initializer list, e.g. ComplexMatrix{{1, 2}, {3, 4}}.
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        if (rows_ == 0 || cols_ == 0) throw ShapeError("ComplexMatrix: empty initializer");
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw ShapeError("ComplexMatrix: ragged initializer");
            for (const cplx& z : row) data_.push_back(z);
        }
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix I(n, n);
        for (std::size_t i = 0; i < n; ++i) I(i, i) = 1.0;
        return I;
    }

    static ComplexMatrix diagonal(const std::vector<double>& d) {
        ComplexMatrix D(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) D(i, i) = d[i];
        return D;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<cplx>& entries() const { return data_; }

    bool is_finite() const {
        for (const cplx& z : data_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        return true;
    }

    ComplexMatrix adjoint() const {
        ComplexMatrix R(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) R(j, i) = std::conj((*this)(i, j));
        return R;
    }

    ComplexMatrix transpose() const {
        ComplexMatrix R(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) R(j, i) = (*this)(i, j);
        return R;
    }

    friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
        require_same_shape(a, b, "operator+");
        ComplexMatrix r = a;
        for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] += b.data_[k];
        return r;
    }

    friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
        require_same_shape(a, b, "operator-");
        ComplexMatrix r = a;
        for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] -= b.data_[k];
        return r;
    }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        if (a.cols_ != b.rows_)
            throw ShapeError("operator*: inner dimensions differ (" + shape_str(a) + " vs " +
                             shape_str(b) + ")");
        ComplexMatrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx{0.0, 0.0}) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
            }
        }
        return r;
    }

    friend ComplexMatrix operator*(cplx s, const ComplexMatrix& a) {
        ComplexMatrix r = a;
        for (cplx& z : r.data_) z *= s;
        return r;
    }

    friend ComplexMatrix operator*(double s, const ComplexMatrix& a) { return cplx{s, 0.0} * a; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, double s) { return cplx{s, 0.0} * a; }
    friend ComplexMatrix operator-(const ComplexMatrix& a) { return -1.0 * a; }

private:
    static void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b,
                                   const char* op) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw ShapeError(std::string(op) + ": shape mismatch (" + shape_str(a) + " vs " +
                             shape_str(b) + ")");
    }

    static std::string shape_str(const ComplexMatrix& m) {
        return std::to_string(m.rows_) + "x" + std::to_string(m.cols_);
    }

    std::size_t rows_, cols_;
    std::vector<cplx> data_;
};

inline double max_abs_norm(const ComplexMatrix& m) {
    double v = 0.0;
    for (const cplx& z : m.entries()) v = std::max(v, std::abs(z));
    return v;
}

inline double frobenius_norm(const ComplexMatrix& m) {
    double s = 0.0;
    for (const cplx& z : m.entries()) s += std::norm(z);
    return std::sqrt(s);
}

inline ComplexMatrix hermitian_part(const ComplexMatrix& m) {
    if (!m.square()) throw ShapeError("hermitian_part: matrix must be square");
    ComplexMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    return r;
}

// Hermitian asymmetry residual ||M - M*||_max; 0 for exactly Hermitian input.
inline double hermitian_defect(const ComplexMatrix& m) {
    if (!m.square()) throw ShapeError("hermitian_defect: matrix must be square");
    double d = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j <= i; ++j)
            d = std::max(d, std::abs(m(i, j) - std::conj(m(j, i))));
    return d;
}

// |C|^2 = C*C, exact arithmetic (no eigendecomposition). The building block of
// every squared-absolute-value identity.
inline ComplexMatrix abs_squared(const ComplexMatrix& c) { return c.adjoint() * c; }

// <Ax, x> = x* A x for a column vector x given as a flat list.
inline cplx quadratic_form(const ComplexMatrix& a, const std::vector<cplx>& x) {
    if (!a.square() || a.rows() != x.size())
        throw ShapeError("quadratic_form: dimension mismatch");
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < x.size(); ++i) {
        cplx row{0.0, 0.0};
        for (std::size_t j = 0; j < x.size(); ++j) row += a(i, j) * x[j];
        s += std::conj(x[i]) * row;
    }
    return s;
}

} // namespace bohr
