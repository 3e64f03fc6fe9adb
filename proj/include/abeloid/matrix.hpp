#pragma once

#include <cstddef>
#include <vector>

#include "errors.hpp"

namespace abeloid {

/**
 * Dense matrix over an arbitrary commutative ring T.
 *
 * Each matrix carries a prototype zero element: scalar types like
 * PadicNumber are not default-constructible into the right field (they
 * need a prime and a precision), so sums and fresh entries start from the
 * prototype instead of T().
 */
template <class T>
class Matrix {
public:
    Matrix() : r_(0), c_(0) {}
    Matrix(std::size_t r, std::size_t c, const T &zero = T())
        : r_(r), c_(c), d_(r * c, zero), zero_(zero) {}

    static Matrix identity(std::size_t n, const T &one, const T &zero = T()) {
        Matrix m(n, n, zero);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = one;
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    const T &zero() const { return zero_; }

    T &at(std::size_t i, std::size_t j) {
        bound(i, j);
        return d_[i * c_ + j];
    }
    const T &at(std::size_t i, std::size_t j) const {
        bound(i, j);
        return d_[i * c_ + j];
    }

    Matrix transpose() const {
        Matrix m(c_, r_, zero_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
        return m;
    }

    friend Matrix operator+(const Matrix &a, const Matrix &b) {
        a.same_shape(b);
        Matrix m(a.r_, a.c_, a.zero_);
        for (std::size_t k = 0; k < a.d_.size(); ++k) m.d_[k] = a.d_[k] + b.d_[k];
        return m;
    }

    friend Matrix operator-(const Matrix &a, const Matrix &b) {
        a.same_shape(b);
        Matrix m(a.r_, a.c_, a.zero_);
        for (std::size_t k = 0; k < a.d_.size(); ++k) m.d_[k] = a.d_[k] - b.d_[k];
        return m;
    }

    friend Matrix operator*(const Matrix &a, const Matrix &b) {
        if (a.c_ != b.r_) fail(errc::dimension_mismatch, "matrix product shape");
        Matrix m(a.r_, b.c_, a.zero_);
        for (std::size_t i = 0; i < a.r_; ++i)
            for (std::size_t j = 0; j < b.c_; ++j) {
                T s = a.zero_;
                for (std::size_t k = 0; k < a.c_; ++k) s = s + a.at(i, k) * b.at(k, j);
                m.at(i, j) = s;
            }
        return m;
    }

    friend Matrix operator*(const T &c, const Matrix &a) {
        Matrix m(a.r_, a.c_, a.zero_);
        for (std::size_t k = 0; k < a.d_.size(); ++k) m.d_[k] = c * a.d_[k];
        return m;
    }

    friend bool operator==(const Matrix &a, const Matrix &b) {
        if (a.r_ != b.r_ || a.c_ != b.c_) return false;
        for (std::size_t k = 0; k < a.d_.size(); ++k)
            if (!(a.d_[k] == b.d_[k])) return false;
        return true;
    }
    friend bool operator!=(const Matrix &a, const Matrix &b) { return !(a == b); }

private:
    void bound(std::size_t i, std::size_t j) const {
        if (i >= r_ || j >= c_) fail(errc::dimension_mismatch, "matrix index out of range");
    }
    void same_shape(const Matrix &o) const {
        if (r_ != o.r_ || c_ != o.c_) fail(errc::dimension_mismatch, "matrix shapes differ");
    }

    std::size_t r_, c_;
    std::vector<T> d_;
    T zero_;
};

} // namespace abeloid
