#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "idemsvd/kernels.hpp"
#include "jacobi_rotation.hpp"

namespace idemsvd {

namespace {

constexpr std::size_t kMaxSweeps = 100;

double off_diagonal_norm(const Matrix& h) {
    double s = 0.0;
    for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t j = 0; j < h.cols(); ++j)
            if (i != j) s += std::norm(h(i, j));
    return std::sqrt(s);
}

}  // namespace

HermitianEig hermitian_eig(const Matrix& a) {
    if (!a.is_square()) throw ShapeError("hermitian_eig: matrix must be square");
    const std::size_t n = a.rows();
    const Matrix ah = adjoint(a);
    const double anorm = frobenius_norm(a);
    const double skew = frobenius_norm(a - ah);
    if (skew > 1e-10 * anorm) {
        throw DomainError("hermitian_eig: matrix is not Hermitian (||a - a^H||_F = " + std::to_string(skew) + ")");
    }

    Matrix h = 0.5 * (a + ah);
    for (std::size_t i = 0; i < n; ++i) h(i, i) = h(i, i).real();
    Matrix v = Matrix::identity(n);

    const double tol = 1e-14 * anorm;
    std::size_t sweep = 0;
    for (; sweep < kMaxSweeps; ++sweep) {
        if (off_diagonal_norm(h) <= tol) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex b = h(p, q);
                if (b == Complex{}) continue;
                const auto rot = detail::jacobi_rotation(h(p, p).real(), h(q, q).real(), b);
                detail::rotate_columns(h, p, q, rot);
                detail::rotate_rows(h, p, q, rot);
                h(p, q) = 0.0;
                h(q, p) = 0.0;
                h(p, p) = h(p, p).real();
                h(q, q) = h(q, q).real();
                detail::rotate_columns(v, p, q, rot);
            }
        }
    }
    if (sweep == kMaxSweeps && off_diagonal_norm(h) > tol) {
        throw ResidualError("hermitian_eig: Jacobi iteration did not converge", off_diagonal_norm(h), tol);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return h(i, i).real() > h(j, j).real(); });

    HermitianEig out;
    out.sweeps = sweep;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = h(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

}  // namespace idemsvd
