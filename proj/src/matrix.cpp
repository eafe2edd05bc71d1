#include "idemsvd/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace idemsvd {

namespace {

bool finite(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeError(std::string(op) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
    }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
        throw ShapeError("matrix data length " + std::to_string(data_.size()) + " does not match " +
                         std::to_string(rows_) + "x" + std::to_string(cols_));
    }
    if (!is_finite()) throw DomainError("matrix entries must be finite");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) throw ShapeError("ragged matrix initializer");
        data_.insert(data_.end(), row.begin(), row.end());
    }
    if (!is_finite()) throw DomainError("matrix entries must be finite");
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(std::span<const double> values) {
    Matrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

std::vector<Complex> Matrix::column(std::size_t j) const {
    std::vector<Complex> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

void Matrix::set_column(std::size_t j, std::span<const Complex> values) {
    if (values.size() != rows_) throw ShapeError("set_column: length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = values[i];
}

Matrix Matrix::columns(std::size_t first, std::size_t count) const {
    return block(0, first, rows_, count);
}

Matrix Matrix::row_block(std::size_t first, std::size_t count) const {
    return block(first, 0, count, cols_);
}

Matrix Matrix::block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const {
    if (row0 + nrows > rows_ || col0 + ncols > cols_) throw ShapeError("block out of range");
    Matrix b(nrows, ncols);
    for (std::size_t i = 0; i < nrows; ++i)
        for (std::size_t j = 0; j < ncols; ++j) b(i, j) = (*this)(row0 + i, col0 + j);
    return b;
}

void Matrix::set_block(std::size_t row0, std::size_t col0, const Matrix& b) {
    if (row0 + b.rows() > rows_ || col0 + b.cols() > cols_) throw ShapeError("set_block out of range");
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) (*this)(row0 + i, col0 + j) = b(i, j);
}

bool Matrix::is_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), finite);
}

Permutation::Permutation(std::vector<std::size_t> map) : map_(std::move(map)) {
    std::vector<bool> seen(map_.size(), false);
    for (std::size_t k : map_) {
        if (k >= map_.size() || seen[k]) throw DomainError("permutation map is not a bijection");
        seen[k] = true;
    }
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<std::size_t> m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = i;
    return Permutation(std::move(m));
}

Permutation Permutation::swap(std::size_t n, std::size_t i, std::size_t j) {
    std::vector<std::size_t> m(n);
    for (std::size_t k = 0; k < n; ++k) m[k] = k;
    std::swap(m.at(i), m.at(j));
    return Permutation(std::move(m));
}

Permutation Permutation::inverse() const {
    std::vector<std::size_t> inv(map_.size());
    for (std::size_t j = 0; j < map_.size(); ++j) inv[map_[j]] = j;
    return Permutation(std::move(inv));
}

Matrix Permutation::to_matrix() const {
    Matrix p(size(), size());
    for (std::size_t j = 0; j < size(); ++j) p(map_[j], j) = 1.0;
    return p;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw ShapeError("matmul: inner dimensions " + std::to_string(a.cols()) + " and " +
                         std::to_string(b.rows()) + " differ");
    }
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

Matrix adjoint(const Matrix& a) {
    Matrix h(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) h(j, i) = std::conj(a(i, j));
    return h;
}

double frobenius_norm(const Matrix& a) {
    // Scaled accumulation so that tiny or huge entries neither underflow nor overflow.
    double scale = 0.0;
    for (const auto& z : a.data()) scale = std::max({scale, std::abs(z.real()), std::abs(z.imag())});
    if (scale == 0.0) return 0.0;
    double sum = 0.0;
    for (const auto& z : a.data()) {
        const double re = z.real() / scale;
        const double im = z.imag() / scale;
        sum += re * re + im * im;
    }
    return scale * std::sqrt(sum);
}

Matrix apply_permutation(const Permutation& p, const Matrix& a, PermuteSide side) {
    const std::size_t n = p.size();
    switch (side) {
        case PermuteSide::rows: {
            if (a.rows() != n) throw ShapeError("apply_permutation: row count mismatch");
            Matrix b(a.rows(), a.cols());
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < a.cols(); ++j) b(i, j) = a(p[i], j);
            return b;
        }
        case PermuteSide::cols: {
            if (a.cols() != n) throw ShapeError("apply_permutation: column count mismatch");
            Matrix b(a.rows(), a.cols());
            for (std::size_t i = 0; i < a.rows(); ++i)
                for (std::size_t j = 0; j < n; ++j) b(i, j) = a(i, p[j]);
            return b;
        }
        case PermuteSide::symmetric: {
            if (a.rows() != n || a.cols() != n) throw ShapeError("apply_permutation: size mismatch");
            Matrix b(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) b(i, j) = a(p[i], p[j]);
            return b;
        }
    }
    return a;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "operator+");
    Matrix c = a;
    auto cd = c.data();
    auto bd = b.data();
    for (std::size_t k = 0; k < cd.size(); ++k) cd[k] += bd[k];
    return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "operator-");
    Matrix c = a;
    auto cd = c.data();
    auto bd = b.data();
    for (std::size_t k = 0; k < cd.size(); ++k) cd[k] -= bd[k];
    return c;
}

Matrix operator*(Complex s, const Matrix& a) {
    Matrix c = a;
    for (auto& z : c.data()) z *= s;
    return c;
}

Matrix scale_columns(const Matrix& a, std::span<const double> d) {
    if (d.size() != a.cols()) throw ShapeError("scale_columns: length mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) *= d[j];
    return c;
}

Matrix hconcat(const Matrix& a, const Matrix& b) {
    if (a.cols() == 0) return b;
    if (b.cols() == 0) return a;
    if (a.rows() != b.rows()) throw ShapeError("hconcat: row count mismatch");
    Matrix c(a.rows(), a.cols() + b.cols());
    c.set_block(0, 0, a);
    c.set_block(0, a.cols(), b);
    return c;
}

double unitarity_defect(const Matrix& a) {
    return frobenius_norm(matmul(adjoint(a), a) - Matrix::identity(a.cols()));
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    auto ad = a.data();
    auto bd = b.data();
    for (std::size_t k = 0; k < ad.size(); ++k) m = std::max(m, std::abs(ad[k] - bd[k]));
    return m;
}

Complex dot(std::span<const Complex> x, std::span<const Complex> y) {
    if (x.size() != y.size()) throw ShapeError("dot: length mismatch");
    Complex s{};
    for (std::size_t k = 0; k < x.size(); ++k) s += std::conj(x[k]) * y[k];
    return s;
}

double norm2(std::span<const Complex> x) {
    double scale = 0.0;
    for (const auto& z : x) scale = std::max({scale, std::abs(z.real()), std::abs(z.imag())});
    if (scale == 0.0) return 0.0;
    double sum = 0.0;
    for (const auto& z : x) sum += std::norm(z / scale);
    return scale * std::sqrt(sum);
}

}  // namespace idemsvd
