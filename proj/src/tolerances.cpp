#include "idemsvd/tolerances.hpp"

#include <algorithm>

#include "idemsvd/matrix.hpp"

namespace idemsvd {

double Tolerances::count_for(std::size_t n) const {
    return count.value_or(std::max(1e-8, 50.0 * static_cast<double>(n) * macheps));
}

double Tolerances::zero_for(std::size_t n, double sigma1) const {
    return zero.value_or(static_cast<double>(n) * macheps * sigma1);
}

double Tolerances::reconstruction_for(double norm) const {
    return 1e-9 * std::max(1.0, norm) * relax;
}

}  // namespace idemsvd
