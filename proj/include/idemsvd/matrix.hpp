#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <vector>

#include "idemsvd/errors.hpp"

namespace idemsvd {

using Complex = std::complex<double>;

inline constexpr double macheps = std::numeric_limits<double>::epsilon();

/// Dense complex matrix, row-major. Entries are always finite.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    /// Throws DomainError on non-finite entries, ShapeError on a length mismatch.
    Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> data);
    /// Nested-list construction, mostly for tests: {{1, 1}, {0, 0}}.
    Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const double> values);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return data_.empty(); }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const Complex> data() const noexcept { return data_; }
    std::span<Complex> data() noexcept { return data_; }

    std::vector<Complex> column(std::size_t j) const;
    void set_column(std::size_t j, std::span<const Complex> values);

    /// Columns [first, first + count).
    Matrix columns(std::size_t first, std::size_t count) const;
    /// Rows [first, first + count).
    Matrix row_block(std::size_t first, std::size_t count) const;
    Matrix block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const;
    void set_block(std::size_t row0, std::size_t col0, const Matrix& b);

    bool is_finite() const noexcept;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

/// Bijection on {0, ..., n-1}. The associated permutation matrix P has
/// column j equal to e_{map[j]}, so (A P)(:, j) = A(:, map[j]).
class Permutation {
public:
    Permutation() = default;
    /// Throws DomainError unless `map` is a bijection.
    explicit Permutation(std::vector<std::size_t> map);

    static Permutation identity(std::size_t n);
    static Permutation swap(std::size_t n, std::size_t i, std::size_t j);

    std::size_t size() const noexcept { return map_.size(); }
    std::size_t operator[](std::size_t j) const { return map_[j]; }
    std::span<const std::size_t> map() const noexcept { return map_; }

    Permutation inverse() const;
    Matrix to_matrix() const;

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<std::size_t> map_;
};

enum class PermuteSide { rows, cols, symmetric };

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix adjoint(const Matrix& a);
double frobenius_norm(const Matrix& a);

/// rows: P^T a, cols: a P, symmetric: P^T a P.
Matrix apply_permutation(const Permutation& p, const Matrix& a, PermuteSide side);

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(Complex s, const Matrix& a);
inline Matrix operator*(const Matrix& a, const Matrix& b) { return matmul(a, b); }

/// a * diag(d), scaling column j by d[j].
Matrix scale_columns(const Matrix& a, std::span<const double> d);

/// Horizontal concatenation [a | b]. Either side may have zero columns.
Matrix hconcat(const Matrix& a, const Matrix& b);

/// ||a^H a - I||_F.
double unitarity_defect(const Matrix& a);

/// Largest entrywise modulus of a - b.
double max_abs_diff(const Matrix& a, const Matrix& b);

Complex dot(std::span<const Complex> x, std::span<const Complex> y);  // x^H y
double norm2(std::span<const Complex> x);

}  // namespace idemsvd
