#include "idemsvd/involutory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "idemsvd/kernels.hpp"

namespace idemsvd {

namespace {

void require_sign(int sign, const char* op) {
    if (sign != 1 && sign != -1) throw DomainError(std::string(op) + ": sign must be +1 or -1");
}

void require_involutory(const Matrix& b, const Tolerances& tol, const char* op) {
    const double res = validate_involutory(b);
    if (!(res <= tol.idem)) {
        throw DomainError(std::string(op) + ": matrix is not involutory (residual " + std::to_string(res) + " > " +
                          std::to_string(tol.idem) + ")");
    }
}

// Schur basis of M reordered so that M = basis N' basis^H with
// N' = [I_nu 0 T; 0 Upsilon 0; 0 0 0_nu], T = diag(tau, 0).
// canonical_form orders its columns [U_r | joint kernel (s - t) | Y (t)].
Matrix nu_ordered_basis(const CanonicalForm& cf, const CountProfile& c) {
    const std::size_t n = c.n;
    const std::size_t r = c.r;
    const std::size_t s = c.s;
    const std::size_t t = c.t;
    const Matrix& w = cf.schur_u;
    const Matrix ur = w.columns(0, r);
    const Matrix kernel = w.columns(r, s - t);
    const Matrix y = w.columns(n - t, t);

    Matrix out(n, n);
    if (r <= s) {
        // [U_r | kernel_a (s - r) | Y | kernel_b (r - t)]
        out.set_block(0, 0, ur);
        out.set_block(0, r, kernel.columns(0, s - r));
        out.set_block(0, s, y);
        out.set_block(0, s + t, kernel.columns(s - r, r - t));
    } else {
        // [U_r | Y | kernel]
        out.set_block(0, 0, ur);
        out.set_block(0, r, y);
        out.set_block(0, r + t, kernel);
    }
    return out;
}

}  // namespace

Matrix SignedPermutation::to_matrix() const {
    Matrix p = perm.to_matrix();
    for (std::size_t j = 0; j < signs.size(); ++j)
        if (signs[j] < 0) p(perm[j], j) = -1.0;
    return p;
}

double validate_involutory(const Matrix& b) {
    if (!b.is_square()) {
        throw ShapeError("validate_involutory: matrix must be square, got " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
    }
    return frobenius_norm(matmul(b, b) - Matrix::identity(b.rows())) / std::max(1.0, frobenius_norm(b));
}

bool is_involutory(const Matrix& b, double tol) { return validate_involutory(b) <= tol; }

Matrix idempotent_from_involutory(const Matrix& b, int sign, const Tolerances& tol) {
    require_sign(sign, "idempotent_from_involutory");
    require_involutory(b, tol, "idempotent_from_involutory");
    const Matrix m = Complex(0.5) * (Complex(sign) * b + Matrix::identity(b.rows()));
    const double res = validate_idempotent(m);
    if (!(res <= tol.idem)) {
        throw DomainError("idempotent_from_involutory: (sign B + I) / 2 is not idempotent (residual " +
                          std::to_string(res) + ")");
    }
    return m;
}

InvolutorySVD involutory_svd(const Matrix& b, int sign, const Tolerances& tol) {
    const Matrix m = idempotent_from_involutory(b, sign, tol);
    const StructuredSVD ssvd = structured_svd_idempotent(m, tol);
    const CanonicalForm cf = canonical_form(m, ssvd, tol);

    InvolutorySVD out;
    out.counts = ssvd.counts;
    out.sign = sign;
    const std::size_t n = out.counts.n;
    const std::size_t nu = out.counts.nu;
    const std::size_t t = out.counts.t;
    const std::size_t mid = n - 2 * nu;
    const double middle = out.counts.r < out.counts.s ? -1.0 : 1.0;

    // Closed-form SVD of 2N' - I: U_N = [S 0 C; 0 +-I 0; -C 0 S],
    // V_N = [C 0 S; 0 I 0; S 0 -C], Sigma_N = diag(tan phi, I, cot phi).
    out.phi.assign(nu, std::numbers::pi / 4);
    out.sigma_canonical.assign(n, 1.0);
    Matrix un(n, n);
    Matrix vn(n, n);
    for (std::size_t j = 0; j < nu; ++j) {
        if (j < t) out.phi[j] = 0.5 * (std::numbers::pi / 2 + ssvd.angles.psi[j]);
        const double c = std::cos(out.phi[j]);
        const double sn = std::sin(out.phi[j]);
        // tan(phi) = sec(psi) + tan(psi) without cancellation
        const double big = j < t ? ssvd.sigma[j] + ssvd.tau[j] : 1.0;
        out.sigma_canonical[j] = big;
        out.sigma_canonical[n - nu + j] = 1.0 / big;
        const std::size_t k = n - nu + j;
        un(j, j) = sn;
        un(j, k) = c;
        un(k, j) = -c;
        un(k, k) = sn;
        vn(j, j) = c;
        vn(j, k) = sn;
        vn(k, j) = sn;
        vn(k, k) = -c;
    }
    for (std::size_t i = nu; i < nu + mid; ++i) {
        un(i, i) = middle;
        vn(i, i) = 1.0;
    }

    const Matrix basis = nu_ordered_basis(cf, out.counts);
    out.u_canonical = Complex(sign) * matmul(basis, un);
    out.v_canonical = matmul(basis, vn);

    // T_N = [0 0 I; 0 +-I 0; I 0 0], with the sign of B folded in.
    std::vector<std::size_t> map(n);
    out.tn.signs.assign(n, sign);
    for (std::size_t j = 0; j < nu; ++j) {
        map[j] = n - nu + j;
        map[n - nu + j] = j;
    }
    for (std::size_t i = nu; i < nu + mid; ++i) {
        map[i] = i;
        out.tn.signs[i] = sign * static_cast<int>(middle);
    }
    out.tn.perm = Permutation(std::move(map));

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b2) {
        return out.sigma_canonical[a] > out.sigma_canonical[b2];
    });
    std::vector<std::size_t> position(n);
    out.sigma.resize(n);
    out.u = Matrix(n, n);
    out.v = Matrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        position[order[k]] = k;
        out.sigma[k] = out.sigma_canonical[order[k]];
        out.u.set_column(k, out.u_canonical.column(order[k]));
        out.v.set_column(k, out.v_canonical.column(order[k]));
    }
    for (std::size_t j = 0; j < nu; ++j) out.pairing.emplace_back(position[j], position[n - nu + j]);

    out.residual = frobenius_norm(b - matmul(scale_columns(out.u, out.sigma), adjoint(out.v)));
    const double limit = tol.reconstruction_for(frobenius_norm(b));
    if (!(out.residual <= limit)) {
        throw ResidualError("involutory_svd: ||B - U S V^H|| = " + std::to_string(out.residual), out.residual, limit);
    }
    return out;
}

PairingReport pairing_check(const InvolutorySVD& isvd, const Tolerances& tol) {
    PairingReport rep;
    const std::size_t n = isvd.sigma.size();
    const double band = tol.count_for(n);
    const auto unit = [&](double x) { return std::abs(x - 1.0) <= band; };

    std::vector<bool> paired(n, false);
    rep.pairs = isvd.pairing.size();
    for (auto [j, k] : isvd.pairing) {
        rep.max_product_error = std::max(rep.max_product_error, std::abs(isvd.sigma[j] * isvd.sigma[k] - 1.0));
        if (unit(isvd.sigma[j]) && unit(isvd.sigma[k])) ++rep.unit_pairs;
        paired[j] = paired[k] = true;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!paired[i] && unit(isvd.sigma[i])) ++rep.unpaired_units;
        rep.max_reciprocal_error =
            std::max(rep.max_reciprocal_error, std::abs(isvd.sigma[i] * isvd.sigma[n - 1 - i] - 1.0));
    }

    const auto& c = isvd.counts;
    rep.products_ok = rep.pairs == c.nu && rep.max_product_error <= 1e-9;
    rep.unit_pairs_ok = rep.unit_pairs == c.nu - c.t;
    rep.unpaired_ok = rep.unpaired_units == n - 2 * c.nu;
    rep.reciprocal_closed = rep.max_reciprocal_error <= 1e-9;
    return rep;
}

double tn_relation_check(const InvolutorySVD& isvd) {
    if (isvd.u_canonical.cols() != isvd.tn.perm.size()) return 0.0;
    const Matrix un_t = matmul(isvd.u_canonical, isvd.tn.to_matrix());
    return frobenius_norm(isvd.v_canonical - un_t);
}

}  // namespace idemsvd
