#pragma once

#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <vector>

#include "cmh/rational.hpp"

namespace cmh {

// Dense row-major matrix over an arbitrary ring-like value type.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T())
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init)
    {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            assert(row.size() == cols_);
            for (const auto& v : row)
                data_.push_back(v);
        }
    }

    static Matrix identity(std::size_t n, const T& zero = T(0), const T& one = T(1))
    {
        Matrix m(n, n, zero);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = one;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<T> row(std::size_t i) const
    {
        return {data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_};
    }
    void set_row(std::size_t i, const std::vector<T>& values)
    {
        assert(values.size() == cols_);
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(i, j) = values[j];
    }
    void append_row(const std::vector<T>& values)
    {
        if (rows_ == 0 && cols_ == 0)
            cols_ = values.size();
        assert(values.size() == cols_);
        data_.insert(data_.end(), values.begin(), values.end());
        ++rows_;
    }
    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
    {
        Matrix b(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j)
                b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }
    void set_block(std::size_t r0, std::size_t c0, const Matrix& b)
    {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j)
                (*this)(r0 + i, c0 + j) = b(i, j);
    }

    template <class F>
    auto map(F f) const -> Matrix<decltype(f(std::declval<const T&>()))>
    {
        Matrix<decltype(f(std::declval<const T&>()))> out(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                out(i, j) = f((*this)(i, j));
        return out;
    }

    bool operator==(const Matrix& o) const
    {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix& operator+=(const Matrix& o)
    {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        for (std::size_t k = 0; k < data_.size(); ++k)
            data_[k] += o.data_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o)
    {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        for (std::size_t k = 0; k < data_.size(); ++k)
            data_[k] -= o.data_[k];
        return *this;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator-(Matrix a)
    {
        for (auto& v : a.data_)
            v = -v;
        return a;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        assert(a.cols_ == b.rows_);
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) {
                T acc = a(i, 0) * b(0, j);
                for (std::size_t k = 1; k < a.cols_; ++k)
                    acc += a(i, k) * b(k, j);
                c(i, j) = acc;
            }
        return c;
    }

    const std::vector<T>& data() const { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

template <class T>
std::ostream& operator<<(std::ostream& os, const Matrix<T>& m)
{
    os << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j)
            os << (j ? ", " : "") << m(i, j);
        os << "]";
    }
    return os << "]";
}

using RationalMatrix = Matrix<Rational>;
using IntegerMatrix = Matrix<Integer>;

RationalMatrix to_rational(const IntegerMatrix& m);
// Throws Error(InvalidArgument) when some entry is not an integer.
IntegerMatrix to_integer(const RationalMatrix& m);
bool is_integral(const RationalMatrix& m);
Integer common_denominator(const RationalMatrix& m);

Rational determinant(const RationalMatrix& m);
Integer determinant(const IntegerMatrix& m);
std::size_t rank(const RationalMatrix& m);
// Throws Error(InvalidArgument) on singular input.
RationalMatrix inverse(const RationalMatrix& m);
// Solves x * m = b for the row vector x (m square, invertible).
std::vector<Rational> solve_left(const RationalMatrix& m, const std::vector<Rational>& b);
// Basis (rows) of { x : x * m = 0 } over the rationals.
RationalMatrix left_kernel(const RationalMatrix& m);

std::vector<Rational> row_times(const std::vector<Rational>& x, const RationalMatrix& m);

struct HermiteResult {
    IntegerMatrix hnf;        // U * input, echelon form, zero rows last
    IntegerMatrix transform;  // unimodular U
    std::size_t rank = 0;
};
// Row-style Hermite normal form with unimodular transform.
HermiteResult hermite_normal_form(const IntegerMatrix& m);
// Z-basis (rows) of the integer left kernel { x in Z^r : x * m = 0 }.
IntegerMatrix integer_left_kernel(const RationalMatrix& m);

}  // namespace cmh
