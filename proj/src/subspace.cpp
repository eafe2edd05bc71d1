#include <algorithm>
#include <cmath>
#include <functional>

#include "idemsvd/kernels.hpp"

namespace idemsvd {

std::vector<double> subspace_angles(const Matrix& p, const Matrix& q) {
    if (p.rows() != q.rows()) throw ShapeError("subspace_angles: ambient dimensions differ");
    if (q.cols() > p.cols()) return subspace_angles(q, p);
    const std::size_t k = q.cols();
    if (k == 0) return {};

    // Cosines, largest first, i.e. angles in ascending order.
    const OracleSVD cos_svd = svd_oracle(matmul(adjoint(p), q));
    // Sines of the same k angles: the part of range(q) outside range(p).
    const OracleSVD sin_svd = svd_oracle(q - matmul(p, matmul(adjoint(p), q)));
    std::vector<double> sines = sin_svd.sigma;
    std::sort(sines.begin(), sines.end());

    std::vector<double> angles(k);
    for (std::size_t j = 0; j < k; ++j) {
        const double c = std::clamp(cos_svd.sigma[j], 0.0, 1.0);
        angles[j] = c * c >= 0.5 ? std::asin(std::clamp(sines[j], 0.0, 1.0)) : std::acos(c);
    }
    std::sort(angles.begin(), angles.end(), std::greater<>());
    return angles;
}

}  // namespace idemsvd
