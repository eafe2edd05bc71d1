#include <algorithm>
#include <cmath>
#include <numeric>

#include "idemsvd/kernels.hpp"
#include "jacobi_rotation.hpp"

namespace idemsvd {

namespace {

constexpr std::size_t kMaxSweeps = 80;

double column_norm2(const Matrix& w, std::size_t j) {
    double s = 0.0;
    for (std::size_t i = 0; i < w.rows(); ++i) s += std::norm(w(i, j));
    return s;
}

Complex column_dot(const Matrix& w, std::size_t p, std::size_t q) {
    Complex s{};
    for (std::size_t i = 0; i < w.rows(); ++i) s += std::conj(w(i, p)) * w(i, q);
    return s;
}

// Tall or square case: rotate column pairs of w = a v until mutually orthogonal.
OracleSVD svd_tall(const Matrix& a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    Matrix w = a;
    Matrix v = Matrix::identity(n);
    const double tol = static_cast<double>(std::max<std::size_t>(m, 1)) * macheps;

    for (std::size_t sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double alpha = column_norm2(w, p);
                const double beta = column_norm2(w, q);
                if (alpha == 0.0 || beta == 0.0) continue;
                const Complex gamma = column_dot(w, p, q);
                if (std::abs(gamma) <= tol * std::sqrt(alpha) * std::sqrt(beta)) continue;
                rotated = true;
                const auto rot = detail::jacobi_rotation(alpha, beta, gamma);
                detail::rotate_columns(w, p, q, rot);
                detail::rotate_columns(v, p, q, rot);
            }
        }
        if (!rotated) break;
    }

    std::vector<double> norms(n);
    for (std::size_t j = 0; j < n; ++j) norms[j] = norm2(w.column(j));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return norms[i] > norms[j]; });

    OracleSVD out;
    out.sigma.resize(n);
    out.v = Matrix(n, n);
    Matrix u_nonzero(m, 0);
    std::size_t nonzero = 0;
    for (std::size_t k = 0; k < n; ++k) {
        out.sigma[k] = norms[order[k]];
        for (std::size_t i = 0; i < n; ++i) out.v(i, k) = v(i, order[k]);
        if (out.sigma[k] > 0.0) ++nonzero;
    }
    Matrix u(m, m);
    for (std::size_t k = 0; k < nonzero; ++k)
        for (std::size_t i = 0; i < m; ++i) u(i, k) = w(i, order[k]) / out.sigma[k];
    if (nonzero < m) {
        // Normalized columns are orthonormal to the Jacobi stopping tolerance;
        // the completion check only guards against gross failure.
        const Matrix fill = orthonormal_completion(u.columns(0, nonzero), 1e-8);
        u.set_block(0, nonzero, fill);
    }
    out.u = std::move(u);
    return out;
}

}  // namespace

OracleSVD svd_oracle(const Matrix& a) {
    if (a.rows() >= a.cols()) return svd_tall(a);
    OracleSVD t = svd_tall(adjoint(a));
    return {std::move(t.v), std::move(t.sigma), std::move(t.u)};
}

Matrix nullspace_basis(const Matrix& a, std::optional<double> tol) {
    if (!a.is_square()) throw ShapeError("nullspace_basis: matrix must be square");
    const std::size_t n = a.rows();
    const OracleSVD svd = svd_oracle(a);
    const double sigma1 = n > 0 ? svd.sigma[0] : 0.0;
    const double thr = tol.value_or(static_cast<double>(n) * macheps * sigma1);
    const auto width = static_cast<std::size_t>(
        std::count_if(svd.sigma.begin(), svd.sigma.end(), [&](double s) { return s <= thr; }));
    return svd.v.columns(n - width, width);
}

}  // namespace idemsvd
