#include <algorithm>
#include <cmath>

#include "idemsvd/kernels.hpp"

namespace idemsvd {

namespace {

// Reflector H = I - 2 w w^H / (w^H w) acting on rows [k, m).
struct Reflector {
    std::size_t k = 0;
    std::vector<Complex> w;  // length m - k; empty means identity
    double wnorm2 = 0.0;
};

// Builds the reflector that maps x (entries k.. of column `col`) onto
// alpha e_k with alpha = -e^{i arg x_k} ||x||, the cancellation-free sign.
Reflector make_reflector(const Matrix& a, std::size_t col, std::size_t k) {
    Reflector h;
    h.k = k;
    const std::size_t m = a.rows();
    std::vector<Complex> x(m - k);
    for (std::size_t i = k; i < m; ++i) x[i - k] = a(i, col);
    const double xnorm = norm2(x);
    if (xnorm == 0.0) return h;

    const double x0abs = std::abs(x[0]);
    const Complex phase = x0abs == 0.0 ? Complex(1.0) : x[0] / x0abs;
    const Complex alpha = -phase * xnorm;
    x[0] -= alpha;
    h.wnorm2 = 0.0;
    for (const auto& z : x) h.wnorm2 += std::norm(z);
    if (h.wnorm2 == 0.0) return h;
    h.w = std::move(x);
    return h;
}

// a(k:, c0:) <- H a(k:, c0:)
void apply_left(const Reflector& h, Matrix& a, std::size_t c0) {
    if (h.w.empty()) return;
    const std::size_t m = a.rows();
    for (std::size_t j = c0; j < a.cols(); ++j) {
        Complex s{};
        for (std::size_t i = h.k; i < m; ++i) s += std::conj(h.w[i - h.k]) * a(i, j);
        s *= 2.0 / h.wnorm2;
        for (std::size_t i = h.k; i < m; ++i) a(i, j) -= h.w[i - h.k] * s;
    }
}

// Q = H_0 H_1 ... H_{p-1}, formed by backward accumulation on the identity.
Matrix accumulate(const std::vector<Reflector>& hs, std::size_t m) {
    Matrix q = Matrix::identity(m);
    for (auto it = hs.rbegin(); it != hs.rend(); ++it) apply_left(*it, q, 0);
    return q;
}

double column_norm(const Matrix& a, std::size_t col, std::size_t row0) {
    double scale = 0.0;
    for (std::size_t i = row0; i < a.rows(); ++i)
        scale = std::max({scale, std::abs(a(i, col).real()), std::abs(a(i, col).imag())});
    if (scale == 0.0) return 0.0;
    double s = 0.0;
    for (std::size_t i = row0; i < a.rows(); ++i) s += std::norm(a(i, col) / scale);
    return scale * std::sqrt(s);
}

}  // namespace

HouseholderQR qr_householder(const Matrix& a) {
    const std::size_t m = a.rows();
    const std::size_t p = std::min(m, a.cols());
    Matrix r = a;
    std::vector<Reflector> hs;
    hs.reserve(p);
    for (std::size_t k = 0; k < p; ++k) {
        hs.push_back(make_reflector(r, k, k));
        apply_left(hs.back(), r, k);
        for (std::size_t i = k + 1; i < m; ++i) r(i, k) = 0.0;
    }
    return {accumulate(hs, m), std::move(r)};
}

PivotedQR qr_column_pivoted(const Matrix& a, std::optional<double> rank_tol) {
    if (!a.is_square()) throw ShapeError("qr_column_pivoted: matrix must be square");
    const std::size_t n = a.rows();

    Matrix r = a;
    std::vector<std::size_t> map(n);
    for (std::size_t j = 0; j < n; ++j) map[j] = j;
    std::vector<Reflector> hs;
    hs.reserve(n);

    for (std::size_t k = 0; k < n; ++k) {
        // Norms are recomputed rather than downdated; n is small.
        std::size_t best = k;
        double best_norm = column_norm(r, k, k);
        for (std::size_t j = k + 1; j < n; ++j) {
            const double nj = column_norm(r, j, k);
            if (nj > best_norm) {
                best = j;
                best_norm = nj;
            }
        }
        if (best != k) {
            std::swap(map[k], map[best]);
            for (std::size_t i = 0; i < n; ++i) std::swap(r(i, k), r(i, best));
        }
        hs.push_back(make_reflector(r, k, k));
        apply_left(hs.back(), r, k);
        for (std::size_t i = k + 1; i < n; ++i) r(i, k) = 0.0;
    }

    Matrix qa = accumulate(hs, n);
    for (std::size_t j = 0; j < n; ++j) {
        const double mod = std::abs(r(j, j));
        if (mod == 0.0) continue;
        const Complex d = r(j, j) / mod;
        for (std::size_t c = j; c < n; ++c) r(j, c) *= std::conj(d);
        r(j, j) = mod;
        for (std::size_t i = 0; i < n; ++i) qa(i, j) *= d;
    }

    PivotedQR out;
    out.perm = Permutation(std::move(map));
    out.q = apply_permutation(out.perm, qa, PermuteSide::rows);
    out.diagonal.resize(n);
    for (std::size_t j = 0; j < n; ++j) out.diagonal[j] = std::abs(r(j, j));

    const double r11 = n > 0 ? out.diagonal[0] : 0.0;
    out.rank_tol = rank_tol.value_or(static_cast<double>(n) * macheps * r11);
    out.rank = static_cast<std::size_t>(
        std::count_if(out.diagonal.begin(), out.diagonal.end(), [&](double d) { return d > out.rank_tol; }));
    for (std::size_t j = 1; j < out.rank; ++j) {
        if (out.diagonal[j] > out.diagonal[j - 1]) out.monotone_diagonal = false;
    }
    out.r1 = r.row_block(0, out.rank);
    return out;
}

Matrix range_basis(const Matrix& a, std::optional<double> rank_tol) {
    const PivotedQR qr = qr_column_pivoted(a, rank_tol);
    // P q = Q_a; its leading columns span range(a P) = range(a).
    const Matrix qa = apply_permutation(qr.perm.inverse(), qr.q, PermuteSide::rows);
    return qa.columns(0, qr.rank);
}

Matrix orthonormal_completion(const Matrix& cols, double tol) {
    const std::size_t n = cols.rows();
    const std::size_t k = cols.cols();
    if (k > n) throw ShapeError("orthonormal_completion: more columns than rows");
    if (k == 0) return Matrix::identity(n);
    const double defect = unitarity_defect(cols);
    if (!(defect <= tol)) {
        throw DomainError("orthonormal_completion: columns are not orthonormal (defect " +
                          std::to_string(defect) + ")");
    }
    const HouseholderQR qr = qr_householder(cols);
    return qr.q.columns(k, n - k);
}

}  // namespace idemsvd
