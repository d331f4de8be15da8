#ifndef HODGEKIT_MATRIX_HPP
#define HODGEKIT_MATRIX_HPP

#include <hodgekit/numeric.hpp>

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hodgekit {

/**
 * Dense row-major matrix over an exact scalar type (Int or Rat).
 *
 * Sized for desk-scale complexes; multiplication skips zero entries of the
 * left factor, which makes products with incidence matrices cheap without a
 * separate sparse type.
 */
template <typename T>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    T* row_ptr(std::size_t i) { return data_.data() + i * cols_; }
    const T* row_ptr(std::size_t i) const { return data_.data() + i * cols_; }

    bool operator==(const Matrix& other) const
    {
        return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
    }

    bool is_zero() const
    {
        for (const T& v : data_)
            if (v != 0)
                return false;
        return true;
    }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    void swap_rows(std::size_t i, std::size_t j)
    {
        if (i == j)
            return;
        for (std::size_t c = 0; c < cols_; ++c)
            std::swap((*this)(i, c), (*this)(j, c));
    }

    Matrix operator*(const Matrix& rhs) const
    {
        if (cols_ != rhs.rows_)
            throw std::invalid_argument("Matrix multiply: inner dimensions differ");
        Matrix out(rows_, rhs.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t k = 0; k < cols_; ++k) {
                const T& a = (*this)(i, k);
                if (a == 0)
                    continue;
                const T* rrow = rhs.row_ptr(k);
                T* orow = out.row_ptr(i);
                for (std::size_t j = 0; j < rhs.cols_; ++j) {
                    if (rrow[j] != 0)
                        orow[j] += a * rrow[j];
                }
            }
        }
        return out;
    }

    Matrix operator+(const Matrix& rhs) const
    {
        if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
            throw std::invalid_argument("Matrix add: shapes differ");
        Matrix out(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i)
            out.data_[i] = data_[i] + rhs.data_[i];
        return out;
    }

    Matrix operator-(const Matrix& rhs) const
    {
        if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
            throw std::invalid_argument("Matrix subtract: shapes differ");
        Matrix out(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i)
            out.data_[i] = data_[i] - rhs.data_[i];
        return out;
    }

    std::vector<T> apply(const std::vector<T>& v) const
    {
        if (v.size() != cols_)
            throw std::invalid_argument("Matrix apply: vector length differs from cols");
        std::vector<T> out(rows_, T(0));
        for (std::size_t i = 0; i < rows_; ++i) {
            const T* row = row_ptr(i);
            T acc(0);
            for (std::size_t j = 0; j < cols_; ++j)
                if (row[j] != 0 && v[j] != 0)
                    acc += row[j] * v[j];
            out[i] = acc;
        }
        return out;
    }

    /// Scale row i by s, in place.
    void scale_row(std::size_t i, const T& s)
    {
        T* row = row_ptr(i);
        for (std::size_t j = 0; j < cols_; ++j)
            row[j] *= s;
    }

    /// Scale column j by s, in place.
    void scale_col(std::size_t j, const T& s)
    {
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, j) *= s;
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<T> data_;
};

using RatMatrix = Matrix<Rat>;
using IntMatrix = Matrix<Int>;

inline RatMatrix to_rational(const IntMatrix& m)
{
    RatMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(i, j) = Rat(m(i, j));
    return out;
}

/// Columns of `vectors` become the columns of the result.
inline RatMatrix columns_to_matrix(std::size_t ambient, const std::vector<RatVec>& vectors)
{
    RatMatrix out(ambient, vectors.size());
    for (std::size_t j = 0; j < vectors.size(); ++j) {
        if (vectors[j].size() != ambient)
            throw std::invalid_argument("columns_to_matrix: vector length differs from ambient");
        for (std::size_t i = 0; i < ambient; ++i)
            out(i, j) = vectors[j][i];
    }
    return out;
}

inline RatVec matrix_column(const RatMatrix& m, std::size_t j)
{
    RatVec out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        out[i] = m(i, j);
    return out;
}

} // namespace hodgekit

#endif // HODGEKIT_MATRIX_HPP
