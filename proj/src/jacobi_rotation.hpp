#pragma once

#include <cmath>

#include "idemsvd/matrix.hpp"

namespace idemsvd::detail {

// Unitary J = [[j00, j01], [j10, j11]] with J^H [[a, b], [conj(b), d]] J
// diagonal (a, d real). J = diag(1, conj(e)) * [[c, s], [-s, c]] where
// e = b / |b| makes the pivot real, followed by the classical real rotation
// with the smaller rotation angle.
struct Rotation {
    Complex j00, j01, j10, j11;
};

inline Rotation jacobi_rotation(double a, double d, Complex b) {
    const double absb = std::abs(b);
    const Complex e = b / absb;
    const double theta = (d - a) / (2.0 * absb);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;
    return {Complex(c), Complex(s), -s * std::conj(e), c * std::conj(e)};
}

// Columns p, q of x <- [x_p x_q] J.
inline void rotate_columns(Matrix& x, std::size_t p, std::size_t q, const Rotation& r) {
    for (std::size_t k = 0; k < x.rows(); ++k) {
        const Complex xp = x(k, p);
        const Complex xq = x(k, q);
        x(k, p) = xp * r.j00 + xq * r.j10;
        x(k, q) = xp * r.j01 + xq * r.j11;
    }
}

// Rows p, q of x <- J^H [x_p; x_q].
inline void rotate_rows(Matrix& x, std::size_t p, std::size_t q, const Rotation& r) {
    for (std::size_t k = 0; k < x.cols(); ++k) {
        const Complex xp = x(p, k);
        const Complex xq = x(q, k);
        x(p, k) = std::conj(r.j00) * xp + std::conj(r.j10) * xq;
        x(q, k) = std::conj(r.j01) * xp + std::conj(r.j11) * xq;
    }
}

}  // namespace idemsvd::detail
