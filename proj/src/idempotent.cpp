#include "idemsvd/idempotent.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>

#include "idemsvd/kernels.hpp"

namespace idemsvd {

namespace {

void require_square(const Matrix& m, const char* op) {
    if (!m.is_square()) {
        throw ShapeError(std::string(op) + ": matrix must be square, got " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
    }
}

void require_idempotent(const Matrix& m, const Tolerances& tol, const char* op) {
    require_square(m, op);
    const double res = validate_idempotent(m);
    if (!(res <= tol.idem)) {
        throw DomainError(std::string(op) + ": matrix is not idempotent (residual " + std::to_string(res) +
                          " > " + std::to_string(tol.idem) + ")");
    }
}

// t = r - dim null(I - m m^H). The singular values of I - m m^H are
// |1 - sigma_j^2|, so the null-space threshold is widened to 2 tol_count,
// the image of the band |sigma - 1| <= tol_count used by the threshold count.
CountProfile census(const Matrix& m, std::size_t r, const Tolerances& tol) {
    const std::size_t n = m.rows();
    const Matrix g = Matrix::identity(n) - matmul(m, adjoint(m));
    const OracleSVD svd = svd_oracle(g);
    const double sigma1 = n > 0 ? svd.sigma[0] : 0.0;
    const double thr = std::max(static_cast<double>(n) * macheps * sigma1, 2.0 * tol.count_for(n));
    const std::size_t null_dim = nullspace_basis(g, thr).cols();
    if (null_dim > r) {
        throw DomainError("count_profile: dim null(I - M M^H) = " + std::to_string(null_dim) +
                          " exceeds rank " + std::to_string(r));
    }
    CountProfile c;
    c.n = n;
    c.r = r;
    c.s = n - r;
    c.t = r - null_dim;
    c.nu = std::min(c.r, c.s);
    return c;
}

// In the basis qa = P Q the matrix is [I_r X; 0 0]. With X = W T Z^H
// (T padded with zeros), u = qa diag(W, I_s) carries range(M) in its leading
// r columns, and qa [0; z_j] is the Schur column y_j paired with u_j.
struct RangeFactor {
    Matrix u;
    std::vector<double> tau;  // singular values of X padded to length r
    Matrix z;                 // right singular vectors of X, s x s
};

RangeFactor range_factor(const Matrix& qa, const Matrix& x, std::size_t r) {
    const std::size_t n = qa.rows();
    const std::size_t s = n - r;
    RangeFactor out;
    out.u = qa;
    out.tau.assign(r, 0.0);
    out.z = Matrix::identity(s);
    if (r == 0 || s == 0) return out;

    const OracleSVD xs = svd_oracle(x);
    std::copy(xs.sigma.begin(), xs.sigma.end(), out.tau.begin());
    out.z = xs.v;
    out.u.set_block(0, 0, matmul(qa.columns(0, r), xs.u));
    return out;
}

// Largest |lambda_j - (1 + tau_j^2)| over the eigenvalues of X X^H + I_r,
// relative to the largest eigenvalue.
double eig_consistency(const Matrix& x, std::span<const double> tau) {
    const std::size_t r = x.rows();
    if (r == 0) return 0.0;
    Matrix h = matmul(x, adjoint(x));
    for (std::size_t i = 0; i < r; ++i) h(i, i) += 1.0;
    const HermitianEig eig = hermitian_eig(h);
    double worst = 0.0;
    for (std::size_t j = 0; j < r; ++j) worst = std::max(worst, std::abs(eig.values[j] - (1.0 + tau[j] * tau[j])));
    return worst / eig.values[0];
}

// y_j = (v_j - cos(psi_j) u_j) / sin(psi_j). Since u_j = cos v_j + sin w_j for
// the paired zero-singular-value column w_j = sin u_j - cos y_j, this equals
// the cancellation-free rotation sin v_j - cos w_j.
std::vector<Complex> schur_column(std::span<const Complex> v, std::span<const Complex> w, double psi) {
    const double c = std::cos(psi);
    const double sn = std::sin(psi);
    std::vector<Complex> y(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) y[i] = sn * v[i] - c * w[i];
    return y;
}

}  // namespace

double validate_idempotent(const Matrix& m) {
    require_square(m, "validate_idempotent");
    return frobenius_norm(matmul(m, m) - m) / std::max(1.0, frobenius_norm(m));
}

bool is_idempotent(const Matrix& m, double tol) { return validate_idempotent(m) <= tol; }

Matrix canonical_n(std::size_t n, std::size_t r, std::span<const double> tau) {
    const std::size_t t = tau.size();
    if (r > n || t > std::min(r, n - r)) throw DomainError("canonical_n: need t <= min(r, n - r) and r <= n");
    Matrix nm(n, n);
    for (std::size_t j = 0; j < r; ++j) nm(j, j) = 1.0;
    for (std::size_t j = 0; j < t; ++j) nm(j, n - t + j) = tau[j];
    return nm;
}

CountProfile count_profile(const Matrix& m, const Tolerances& tol) {
    require_idempotent(m, tol, "count_profile");
    const PivotedQR qr = qr_column_pivoted(m, tol.rank);
    return census(m, qr.rank, tol);
}

StructuredSVD structured_svd_idempotent(const Matrix& m, const Tolerances& tol) {
    require_idempotent(m, tol, "structured_svd_idempotent");
    const std::size_t n = m.rows();

    // P^T M P = Q [R1; 0]
    const PivotedQR qr = qr_column_pivoted(m, tol.rank);
    const std::size_t r = qr.rank;
    const std::size_t s = n - r;
    const Matrix q1 = qr.q.columns(0, r);
    const Matrix q2 = qr.q.columns(r, s);

    StructuredSVD out;
    out.qr_monotone_warning = !qr.monotone_diagonal;
    out.r1q1_defect = frobenius_norm(matmul(qr.r1, q1) - Matrix::identity(r));
    const double r1q1_limit = 1e-10 * static_cast<double>(std::max<std::size_t>(n, 1)) * tol.relax;
    if (!(out.r1q1_defect <= r1q1_limit)) {
        throw ResidualError("structured_svd_idempotent: ||R1 Q1 - I|| = " + std::to_string(out.r1q1_defect),
                            out.r1q1_defect, r1q1_limit);
    }
    out.x = matmul(qr.r1, q2);

    // U = P Q diag(U1, I_s)
    const Matrix qa = apply_permutation(qr.perm.inverse(), qr.q, PermuteSide::rows);
    RangeFactor rf = range_factor(qa, out.x, r);
    out.u = std::move(rf.u);

    out.sigma.assign(n, 0.0);
    for (std::size_t j = 0; j < r; ++j) out.sigma[j] = std::hypot(1.0, rf.tau[j]);

    // V_r = M^H U_r diag(1 / sigma), phase-fixed so u_j^H v_j > 0.
    Matrix vr = matmul(adjoint(m), out.u.columns(0, r));
    for (std::size_t j = 0; j < r; ++j) {
        Complex c{};
        for (std::size_t i = 0; i < n; ++i) c += std::conj(out.u(i, j)) * vr(i, j);
        const Complex phase = std::abs(c) > 0.0 ? std::conj(c) / std::abs(c) : Complex(1.0);
        for (std::size_t i = 0; i < n; ++i) vr(i, j) *= phase / out.sigma[j];
    }

    const double tol_count = tol.count_for(n);
    const auto t_threshold = static_cast<std::size_t>(
        std::count_if(out.sigma.begin(), out.sigma.begin() + static_cast<std::ptrdiff_t>(r),
                      [&](double sg) { return sg > 1.0 + tol_count; }));
    out.counts = census(m, r, tol);
    if (out.counts.t != t_threshold) {
        throw CensusMismatch("structured_svd_idempotent: #{sigma > 1} = " + std::to_string(t_threshold) +
                                 " but rank - dim null(I - M M^H) = " + std::to_string(out.counts.t),
                             t_threshold, out.counts.t);
    }
    const std::size_t t = t_threshold;

    out.angles.psi.assign(r, 0.0);
    out.tau.resize(t);
    for (std::size_t j = 0; j < t; ++j) {
        out.tau[j] = rf.tau[j];
        out.angles.psi[j] = std::atan(rf.tau[j]);
    }
    out.eig_consistency = eig_consistency(out.x, rf.tau);

    // Schur columns y_j = qa [0; z_j], orthogonal to range(M) by construction.
    Matrix ury(n, r + t);
    ury.set_block(0, 0, out.u.columns(0, r));
    if (t > 0) ury.set_block(0, r, matmul(qa.columns(r, s), rf.z.columns(0, t)));
    const Matrix kernel = orthonormal_completion(ury, 1e-10 * tol.relax);

    // Zero-singular-value block: joint kernel null(M) & null(M^H), then
    // sin(psi_j) u_j - cos(psi_j) y_j.
    out.v = Matrix(n, n);
    out.v.set_block(0, 0, vr);
    out.v.set_block(0, r, kernel);
    for (std::size_t j = 0; j < t; ++j) {
        const double c = std::cos(out.angles.psi[j]);
        const double sn = std::sin(out.angles.psi[j]);
        for (std::size_t i = 0; i < n; ++i) out.v(i, n - t + j) = sn * out.u(i, j) - c * ury(i, r + j);
    }
    return out;
}

CanonicalForm canonical_form(const Matrix& m, const Tolerances& tol) {
    return canonical_form(m, structured_svd_idempotent(m, tol), tol);
}

CanonicalForm canonical_form(const Matrix& m, const StructuredSVD& ssvd, const Tolerances& tol) {
    const std::size_t n = ssvd.counts.n;
    const std::size_t r = ssvd.counts.r;
    const std::size_t t = ssvd.counts.t;
    if (m.rows() != n || m.cols() != n) throw ShapeError("canonical_form: structured SVD does not match matrix");

    CanonicalForm cf;
    cf.tau = ssvd.tau;
    cf.n_matrix = canonical_n(n, r, cf.tau);
    cf.schur_u = Matrix(n, n);
    cf.schur_u.set_block(0, 0, ssvd.u.columns(0, r));
    cf.schur_u.set_block(0, r, ssvd.v.columns(r, n - r - t));
    for (std::size_t j = 0; j < t; ++j) {
        cf.schur_u.set_column(n - t + j, schur_column(ssvd.v.column(j), ssvd.v.column(n - t + j), ssvd.angles.psi[j]));
    }

    cf.residual = frobenius_norm(matmul(m, cf.schur_u) - matmul(cf.schur_u, cf.n_matrix));
    const double limit = tol.reconstruction_for(frobenius_norm(m));
    if (!(cf.residual <= limit)) {
        throw ResidualError("canonical_form: ||M U - U N|| = " + std::to_string(cf.residual), cf.residual, limit);
    }
    return cf;
}

Coupling coupling_matrix(const StructuredSVD& ssvd, const CanonicalForm& cf, double angle_sep) {
    const std::size_t n = ssvd.counts.n;
    const std::size_t t = ssvd.counts.t;
    if (cf.schur_u.rows() != n || cf.schur_u.cols() != n || ssvd.v.rows() != n || cf.tau.size() != t) {
        throw ShapeError("coupling_matrix: structured SVD and canonical form are inconsistent");
    }

    Coupling out;
    out.o = matmul(adjoint(cf.schur_u), ssvd.v);
    const auto& psi = ssvd.angles.psi;
    for (std::size_t j = 0; j + 1 < t; ++j) {
        if (psi[j] - psi[j + 1] < angle_sep) out.degenerate = true;
    }

    Matrix expected = Matrix::identity(n);
    out.e.resize(t);
    for (std::size_t j = 0; j < t; ++j) {
        const double c = std::cos(psi[j]);
        const double sn = std::sin(psi[j]);
        out.e[j] = out.o(j, n - t + j).real() / sn >= 0.0 ? 1 : -1;
        expected(j, j) = c;
        expected(j, n - t + j) = out.e[j] * sn;
        expected(n - t + j, j) = sn;
        expected(n - t + j, n - t + j) = -out.e[j] * c;
    }
    out.pattern_residual = max_abs_diff(out.o, expected);
    if (!out.degenerate && out.pattern_residual > 1e-8) {
        throw ResidualError("coupling_matrix: O deviates from the [C 0 ES; 0 I 0; S 0 -EC] pattern by " +
                                std::to_string(out.pattern_residual),
                            out.pattern_residual, 1e-8);
    }
    return out;
}

std::vector<double> principal_angles(const Matrix& m, const Tolerances& tol) {
    require_idempotent(m, tol, "principal_angles");
    const Matrix range_m = range_basis(m, tol.rank);
    const Matrix range_mh = range_basis(adjoint(m), tol.rank);
    return subspace_angles(range_m, range_mh);
}

}  // namespace idemsvd
