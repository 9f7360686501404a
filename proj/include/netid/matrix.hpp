#ifndef NETID_MATRIX_HPP
#define NETID_MATRIX_HPP

#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace netid {

/// Dense row-major matrix over an arbitrary value type.
template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T())
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    Matrix(std::initializer_list<std::initializer_list<T>> init)
        : rows_(init.size()), cols_(init.size() ? init.begin()->size() : 0)
    {
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            assert(row.size() == cols_);
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    T& operator()(std::size_t r, std::size_t c)
    {
        assert(r < rows_ && c < cols_);
        return data_[r * cols_ + c];
    }
    const T& operator()(std::size_t r, std::size_t c) const
    {
        assert(r < rows_ && c < cols_);
        return data_[r * cols_ + c];
    }

    std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    /// Submatrix picking the given rows and columns, in the given order.
    Matrix select(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const
    {
        Matrix out(rows.size(), cols.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < cols.size(); ++j)
                out(i, j) = (*this)(rows[i], cols[j]);
        return out;
    }

    Matrix without_row(std::size_t r) const
    {
        assert(r < rows_);
        Matrix out(rows_ - 1, cols_);
        for (std::size_t i = 0, k = 0; i < rows_; ++i) {
            if (i == r)
                continue;
            for (std::size_t j = 0; j < cols_; ++j)
                out(k, j) = (*this)(i, j);
            ++k;
        }
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

} // namespace netid

#endif
